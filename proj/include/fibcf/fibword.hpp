#pragma once

// Fibonacci words over {a, b}, their palindromic prefixes and separators.

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fibcf/exactnum.hpp"

namespace fibcf {

enum class Letter : std::uint8_t { LA, LB };

/// Longest word this module will materialize.
inline constexpr std::uint64_t kMaxWordLength = 10'000'000;

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  /// Word from a string over {'a','b'}.
  static Word from_string(std::string_view s) {
    std::vector<Letter> out;
    out.reserve(s.size());
    for (char c : s) {
      if (c == 'a') out.push_back(Letter::LA);
      else if (c == 'b') out.push_back(Letter::LB);
      else throw std::invalid_argument("Word: letters must be 'a' or 'b'");
    }
    return Word(std::move(out));
  }

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t k) const { return letters_[k]; }
  const std::vector<Letter>& letters() const { return letters_; }

  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  std::string str() const {
    std::string s;
    s.reserve(letters_.size());
    for (Letter l : letters_) s.push_back(l == Letter::LA ? 'a' : 'b');
    return s;
  }

  Word prefix(std::size_t n) const {
    n = std::min(n, letters_.size());
    return Word({letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n)});
  }

  bool starts_with(const Word& p) const {
    return p.length() <= length() && std::equal(p.begin(), p.end(), begin());
  }
  bool ends_with(const Word& s) const {
    return s.length() <= length() && std::equal(s.letters_.rbegin(), s.letters_.rend(), letters_.rbegin());
  }

  Word& operator+=(const Word& o) {
    letters_.insert(letters_.end(), o.begin(), o.end());
    return *this;
  }
  friend Word operator+(Word u, const Word& v) { return u += v; }
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// f(0) = f(1) = 1, f(i) = f(i-1) + f(i-2).
inline BigInt fib(unsigned i) {
  BigInt prev = 1, cur = 1;
  for (unsigned k = 1; k < i; ++k) {
    BigInt next = prev + cur;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace detail {
inline constexpr std::array<std::uint64_t, 92> kFibTable = [] {
  std::array<std::uint64_t, 92> t{};
  t[0] = t[1] = 1;
  for (std::size_t k = 2; k < t.size(); ++k) t[k] = t[k - 1] + t[k - 2];
  return t;
}();
}  // namespace detail

/// fib(i) for indices whose value fits 64 bits (i <= 91).
inline std::uint64_t fib_u64(unsigned i) {
  if (i > 91) throw std::out_of_range("fib_u64: index too large");
  return detail::kFibTable[i];
}

namespace detail {
inline void check_length(std::uint64_t n) {
  if (n > kMaxWordLength)
    throw ResourceError("word of length " + std::to_string(n) + " exceeds the materialization cap");
}
}  // namespace detail

/// w_0 = b, w_1 = a, w_i = w_{i-1} w_{i-2}.
inline Word word_term(unsigned i) {
  if (i == 0) return Word::from_string("b");
  if (i > 91) throw ResourceError("word_term: index too large");
  detail::check_length(fib_u64(i));
  Word older = Word::from_string("b"), cur = Word::from_string("a");
  for (unsigned k = 2; k <= i; ++k) {
    Word next = cur + older;
    older = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// Letter at 0-based position k of the infinite Fibonacci word, without
/// materializing it: w_{n+1} = w_n w_{n-1}, so positions past |w_n| fall
/// into a copy of w_{n-1}.
inline Letter fib_word_letter(std::uint64_t k) {
  while (k >= 2) {
    auto it = std::upper_bound(detail::kFibTable.begin() + 1, detail::kFibTable.end(), k);
    k -= *(it - 1);
  }
  return k == 0 ? Letter::LA : Letter::LB;
}

/// First n letters of the infinite Fibonacci word.
inline Word fib_word_prefix(std::uint64_t n) {
  detail::check_length(n);
  if (n == 0) return {};
  unsigned i = 1;
  while (fib_u64(i) < n) ++i;
  return word_term(i).prefix(static_cast<std::size_t>(n));
}

/// s_i = ab for even i, ba for odd i.
inline Word separator(unsigned i) {
  if (i < 1) throw std::invalid_argument("separator: index must be >= 1");
  return Word::from_string(i % 2 == 0 ? "ab" : "ba");
}

/// m_1 = a, m_2 = aba, m_i = m_{i-1} s_{i-1} m_{i-2}; |m_i| = fib(i+2) - 2.
inline Word palindromic_prefix(unsigned i) {
  if (i < 1) throw std::invalid_argument("palindromic_prefix: index must be >= 1");
  if (i + 2 > 91) throw ResourceError("palindromic_prefix: index too large");
  detail::check_length(fib_u64(i + 2) - 2);
  Word older = Word::from_string("a");
  if (i == 1) return older;
  Word cur = Word::from_string("aba");
  for (unsigned k = 3; k <= i; ++k) {
    Word next = cur + separator(k - 1) + older;
    older = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

inline bool is_palindrome(const Word& w) {
  return std::equal(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(w.length() / 2),
                    w.letters().rbegin());
}

/// Monoid homomorphism sending a to (a 1; 1 0) and b to (b 1; 1 0).
inline Mat2 phi(const Word& w, const Params& p) {
  Mat2 m = Mat2::identity();
  for (Letter l : w) {
    // right-multiplication by (c 1; 1 0)
    const unsigned long c = l == Letter::LA ? p.a() : p.b();
    BigInt n00 = m.m00 * c + m.m01;
    BigInt n10 = m.m10 * c + m.m11;
    m.m01 = std::move(m.m00);
    m.m11 = std::move(m.m10);
    m.m00 = std::move(n00);
    m.m10 = std::move(n10);
  }
  return m;
}

}  // namespace fibcf
