#pragma once

// Continued-fraction convergents of xi_{a,b} = [0; a, b, a, a, b, ...], exact
// enclosures of xi, and the approximation triples x_i read off the symmetric
// matrices M_i = Phi(m_i).

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fibcf/exactnum.hpp"
#include "fibcf/fibword.hpp"

namespace fibcf {

/// Largest Fibonacci-word index whose matrix Phi(w_n) is ever formed
/// (|w_40| = 165580141 letters).
inline constexpr unsigned kMaxWordIndex = 40;

struct ConvergentPair {
  std::uint64_t j = 0;
  BigInt p;
  BigInt q;

  BigRat value() const { return make_rat(p, q); }
  friend bool operator==(const ConvergentPair&, const ConvergentPair&) = default;
};

struct ApproxTriple {
  unsigned i = 0;
  BigInt x0, x1, x2;

  const BigInt& X() const { return x0; }
  BigInt det() const { return x0 * x2 - x1 * x1; }
  friend bool operator==(const ApproxTriple&, const ApproxTriple&) = default;
};

/// Source of exact enclosures of xi_{a,b}. Holds the matrices Phi(w_n),
/// extended on demand; safe to share between threads.
class XiSource {
 public:
  explicit XiSource(Params p) : params_(p) {}

  const Params& params() const { return params_; }

  /// Phi(w_n) for 0 <= n <= kMaxWordIndex.
  const Mat2& word_matrix(unsigned n) const {
    if (n > kMaxWordIndex)
      throw ResourceError("word index " + std::to_string(n) + " exceeds the iteration limit");
    std::lock_guard lock(mu_);
    if (word_mats_.empty()) {
      word_mats_.push_back(quotient_matrix(params_.b()));
      word_mats_.push_back(quotient_matrix(params_.a()));
    }
    while (word_mats_.size() <= n) {
      const std::size_t k = word_mats_.size();
      word_mats_.push_back(word_mats_[k - 1] * word_mats_[k - 2]);
    }
    return word_mats_[n];
  }

  /// Phi of the length-j prefix of the Fibonacci word, i.e. the convergent
  /// matrix (q_j q_{j-1}; p_j p_{j-1}). The prefix splits greedily into
  /// w_{n1} w_{n2} ... with decreasing Fibonacci lengths.
  Mat2 prefix_matrix(std::uint64_t j) const {
    Mat2 m = Mat2::identity();
    while (j > 0) {
      unsigned n = 1;
      while (n + 1 <= 91 && fib_u64(n + 1) <= j) ++n;
      m = m * word_matrix(n);
      j -= fib_u64(n);
    }
    return m;
  }

  ConvergentPair convergent(std::uint64_t j) const {
    if (j < 1) throw std::invalid_argument("convergent: index must be >= 1");
    Mat2 m = prefix_matrix(j);
    return {j, m.m10, m.m00};
  }

  /// Bracket of xi between two consecutive convergents, width <= precision.
  RatInterval enclosure(const BigRat& precision) const {
    const Mat2& m = bracket_matrix(precision);
    BigRat c0 = make_rat(m.m10, m.m00), c1 = make_rat(m.m11, m.m01);
    return {std::min(c0, c1), std::max(c0, c1)};
  }

  /// Outward dyadic rounding of a convergent bracket: endpoints are
  /// multiples of 2^-bits and the width is at most 2^(2-bits). The result
  /// depends only on `bits`, never on earlier requests.
  RatInterval dyadic(long bits) const {
    if (bits < 1) bits = 1;
    {
      std::lock_guard lock(mu_);
      if (auto it = dyadic_memo_.find(bits); it != dyadic_memo_.end()) return it->second;
    }
    const Mat2& m = bracket_matrix(ldexp_rat(BigRat(1), -(bits + 1)));
    auto scaled_floor = [&](const BigInt& p, const BigInt& q) {
      BigInt t;
      mpz_mul_2exp(t.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
      return floor_div(t, q);
    };
    // the two convergents p_j/q_j and p_{j-1}/q_{j-1}; one of them is below xi
    BigInt f0 = scaled_floor(m.m10, m.m00), f1 = scaled_floor(m.m11, m.m01);
    BigInt lo = std::min(f0, f1), hi = std::max(f0, f1) + 1;
    RatInterval r(ldexp_rat(BigRat(lo), -bits), ldexp_rat(BigRat(hi), -bits));
    std::lock_guard lock(mu_);
    return dyadic_memo_.emplace(bits, std::move(r)).first->second;
  }

  /// Partial quotients a_1, a_2, ...: letter a maps to a, letter b to b.
  unsigned long partial_quotient(std::uint64_t k) const {
    if (k < 1) throw std::invalid_argument("partial quotients are indexed from 1");
    return fib_word_letter(k - 1) == Letter::LA ? params_.a() : params_.b();
  }

 private:
  /// Phi(w_n) for the first n whose bracket width 1/(q_j q_{j-1}) is <= precision.
  const Mat2& bracket_matrix(const BigRat& precision) const {
    if (precision <= 0) throw std::invalid_argument("xi_enclosure: precision must be positive");
    const BigRat inv = 1 / precision;
    for (unsigned n = 1;; ++n) {
      const Mat2& m = word_matrix(n);  // throws past the iteration limit
      if (m.m00 * m.m01 >= inv) return m;
    }
  }

  Params params_;
  mutable std::mutex mu_;
  mutable std::deque<Mat2> word_mats_;  // stable references
  mutable std::map<long, RatInterval> dyadic_memo_;
};

inline ConvergentPair convergent(const Params& p, std::uint64_t j) { return XiSource(p).convergent(j); }

inline RatInterval xi_enclosure(const Params& p, const BigRat& precision) {
  return XiSource(p).enclosure(precision);
}

/// Escalation budget of the adaptive precision protocol.
inline constexpr int kMaxEscalations = 60;
/// Working precision past which escalation stops at the resource limit.
inline constexpr long kMaxWorkingBits = 1L << 26;

enum class Decision { Holds, Fails, Undecided };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::Holds: return "holds";
    case Decision::Fails: return "fails";
    default: return "undecided";
  }
}

/// Decides lhs <= rhs where eval(bits) returns enclosures (lhs, rhs) that
/// tighten as bits grows. Bits double on every escalation; running out of
/// escalations or resources yields Undecided.
template <class Eval>
Decision decide_le(Eval eval, long start_bits = 64) {
  long bits = start_bits;
  for (int esc = 0; esc <= kMaxEscalations && bits <= kMaxWorkingBits; ++esc) {
    try {
      auto [lhs, rhs] = eval(bits);
      if (lhs.hi() <= rhs.lo()) return Decision::Holds;
      if (lhs.lo() > rhs.hi()) return Decision::Fails;
    } catch (const ResourceError&) {
      return Decision::Undecided;
    }
    bits *= 2;
  }
  return Decision::Undecided;
}

namespace detail {
inline ApproxTriple triple_from(unsigned i, const Mat2& m) {
  if (!m.symmetric()) throw std::logic_error("M_i is not symmetric");
  return {i, m.m00, m.m01, m.m11};
}
}  // namespace detail

/// x_i read off Phi(m_i) computed letter by letter.
inline ApproxTriple triple_direct(const Params& p, unsigned i) {
  return detail::triple_from(i, phi(palindromic_prefix(i), p));
}

/// x_1 .. x_n via M_i = M_{i-1} S_{i-1} M_{i-2}.
inline std::vector<ApproxTriple> triple_sequence(const Params& p, unsigned count) {
  if (count < 2) throw std::invalid_argument("triple_sequence: count must be >= 2");
  const Mat2 A = quotient_matrix(p.a()), B = quotient_matrix(p.b());
  const Mat2 AB = A * B, BA = B * A;
  std::vector<Mat2> mats{A, A * B * A};
  for (unsigned i = 3; i <= count; ++i) {
    const Mat2& s = (i - 1) % 2 == 0 ? AB : BA;
    mats.push_back(mats[i - 2] * s * mats[i - 3]);
  }
  std::vector<ApproxTriple> out;
  out.reserve(count);
  for (unsigned i = 1; i <= count; ++i) out.push_back(detail::triple_from(i, mats[i - 1]));
  return out;
}

}  // namespace fibcf
