#include <gtest/gtest.h>

#include <random>

#include "fibcf/fibword.hpp"

using namespace fibcf;

namespace {
Word W(const char* s) { return Word::from_string(s); }

// letter-by-letter reference: start from "a" and apply a -> ab, b -> a
std::string substitution_prefix(std::size_t n) {
  std::string w = "a";
  while (w.size() < n) {
    std::string next;
    for (char c : w) next += c == 'a' ? "ab" : "a";
    w = std::move(next);
  }
  return w.substr(0, n);
}
}  // namespace

TEST(Fib, SmallValues) {
  EXPECT_EQ(fib(0), 1);
  EXPECT_EQ(fib(1), 1);
  EXPECT_EQ(fib(7), 21);
  EXPECT_EQ(fib(90), BigInt(fib_u64(90)));
  EXPECT_THROW(fib_u64(92), std::out_of_range);
}

TEST(WordTerm, Base) {
  EXPECT_EQ(word_term(0).str(), "b");
  EXPECT_EQ(word_term(1).str(), "a");
  EXPECT_EQ(word_term(2).str(), "ab");
  EXPECT_EQ(word_term(4).str(), "abaab");
  EXPECT_EQ(word_term(5).str(), "abaababa");
}

TEST(WordTerm, LengthsAndPrefixChain) {
  for (unsigned i = 1; i <= 25; ++i) {
    const Word w = word_term(i);
    EXPECT_EQ(w.length(), fib_u64(i));
    EXPECT_TRUE(word_term(i + 1).starts_with(w)) << i;
  }
}

TEST(WordTerm, EndsWithSeparator) {
  for (unsigned i = 2; i <= 25; ++i) EXPECT_TRUE(word_term(i).ends_with(separator(i))) << i;
}

TEST(FibWordPrefix, Examples) {
  EXPECT_TRUE(fib_word_prefix(0).empty());
  EXPECT_EQ(fib_word_prefix(8).str(), "abaababa");
  EXPECT_EQ(fib_word_prefix(13), word_term(6).prefix(13));
  EXPECT_EQ(fib_word_prefix(13).str(), "abaababaabaab");
}

TEST(FibWordPrefix, MatchesSubstitution) {
  for (std::size_t n : {1u, 2u, 7u, 100u, 5000u}) EXPECT_EQ(fib_word_prefix(n).str(), substitution_prefix(n));
}

TEST(FibWordLetter, MatchesMaterializedWord) {
  const std::string w = substitution_prefix(20000);
  for (std::size_t k = 0; k < w.size(); ++k)
    ASSERT_EQ(fib_word_letter(k) == Letter::LA ? 'a' : 'b', w[k]) << k;
}

TEST(Separator, Parity) {
  EXPECT_EQ(separator(1).str(), "ba");
  EXPECT_EQ(separator(2).str(), "ab");
  EXPECT_EQ(separator(4).str(), "ab");
  EXPECT_THROW(separator(0), std::invalid_argument);
}

TEST(PalindromicPrefix, Examples) {
  EXPECT_EQ(palindromic_prefix(1).str(), "a");
  EXPECT_EQ(palindromic_prefix(2).str(), "aba");
  EXPECT_EQ(palindromic_prefix(3).str(), "abaaba");
  EXPECT_THROW(palindromic_prefix(0), std::invalid_argument);
}

TEST(PalindromicPrefix, Properties) {
  for (unsigned i = 1; i <= 25; ++i) {
    const Word m = palindromic_prefix(i);
    EXPECT_TRUE(is_palindrome(m)) << i;
    EXPECT_EQ(m.length(), fib_u64(i + 2) - 2) << i;
    EXPECT_EQ(m, fib_word_prefix(m.length())) << i;
    if (i >= 3) {
      const Word w = word_term(i + 2);
      EXPECT_EQ(m, w.prefix(w.length() - 2)) << i;
    }
  }
}

TEST(PalindromicPrefix, MaterializationCap) {
  EXPECT_NO_THROW(palindromic_prefix(32));  // fib(34) - 2 < 10^7
  EXPECT_THROW(palindromic_prefix(33), ResourceError);
}

TEST(IsPalindrome, Examples) {
  EXPECT_TRUE(is_palindrome(Word()));
  EXPECT_TRUE(is_palindrome(W("aba")));
  EXPECT_FALSE(is_palindrome(W("ab")));
}

TEST(Word, ConcatenationMonoid) {
  std::mt19937 rng(7);
  auto random_word = [&](std::size_t n) {
    std::string s;
    for (std::size_t k = 0; k < n; ++k) s += (rng() & 1) ? 'a' : 'b';
    return W(s.c_str());
  };
  for (int trial = 0; trial < 50; ++trial) {
    Word u = random_word(rng() % 20), v = random_word(rng() % 20), w = random_word(rng() % 20);
    EXPECT_EQ((u + v) + w, u + (v + w));
    EXPECT_EQ(u + Word(), u);
    EXPECT_EQ(Word() + u, u);
    EXPECT_EQ((u + v).length(), u.length() + v.length());
  }
  EXPECT_THROW(W("abc"), std::invalid_argument);
}
