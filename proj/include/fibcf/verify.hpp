#pragma once

// Guaranteed enclosures of the quantitative laws satisfied by the triples
// x_i: error products E_i, growth exponent, the limit of X_i/(X_{i-1}X_{i-2}),
// the normalized ratios q_i = X_i X_{i-1}^-gamma, and the distance of
// X_i xi^3 to the nearest integer.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fibcf/construct.hpp"
#include "fibcf/exactnum.hpp"
#include "fibcf/logexp.hpp"
#include "fibcf/parallel.hpp"

namespace fibcf {

inline constexpr unsigned kMaxTableIndex = 30;
inline constexpr unsigned kMaxCubeIndex = 25;

struct TheoremRow {
  unsigned i = 0;
  std::size_t x_digits = 0;
  RatInterval error;                        // X_i * max_j |X_i xi^j - x_{i,j}|
  std::optional<RatInterval> growth_ratio;  // log X_i / log X_{i-1}; absent when X_{i-1} = 1
  std::optional<RatInterval> limit_val;     // X_i / (X_{i-1} X_{i-2}); absent for i = 2
  RatInterval q_ratio;                      // X_i X_{i-1}^-gamma
  bool decided = false;
};

struct FittedConstants {
  BigRat c1, c2, c3;
};

enum class CubeStatus { Pass, Fail, Undecided };

inline const char* to_string(CubeStatus s) {
  switch (s) {
    case CubeStatus::Pass: return "pass";
    case CubeStatus::Fail: return "fail";
    default: return "undecided";
  }
}

struct CubeRow {
  unsigned i = 0;
  std::size_t x_digits = 0;
  RatInterval cube_dist;  // || X_i xi^3 ||
  RatInterval threshold;  // X_i^-delta
  CubeStatus status = CubeStatus::Undecided;
};

/// Thrown by fit_constants when a row was left undecided.
class UndecidedRowError : public std::runtime_error {
 public:
  explicit UndecidedRowError(unsigned i)
      : std::runtime_error("row " + std::to_string(i) + " is undecided"), row(i) {}
  unsigned row;
};

/// xi^2 + (a+b) xi + (ab+1) over an enclosure of xi.
inline RatInterval limit_target(const RatInterval& xi, const Params& p) {
  const BigRat s(BigInt(p.a()) + p.b());
  const BigRat c(BigInt(p.a()) * p.b() + 1);
  // increasing in xi for xi > 0
  auto f = [&](const BigRat& t) -> BigRat { return t * t + s * t + c; };
  if (xi.lo() >= 0) return {f(xi.lo()), f(xi.hi())};
  return interval_pow(xi, 2) + xi * s + c;
}

/// n/d enclosed between dyadics with about `sig_bits` significant bits.
inline RatInterval quotient_enclosure(const BigInt& n, const BigInt& d, long sig_bits) {
  const long shift = sig_bits - (static_cast<long>(bit_length(n)) - static_cast<long>(bit_length(d)));
  BigInt t = n;
  BigInt dd = d;
  if (shift >= 0)
    mpz_mul_2exp(t.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  else
    mpz_mul_2exp(dd.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  BigInt f = floor_div(t, dd), c = ceil_div(t, dd);
  return {ldexp_rat(BigRat(f), -shift), ldexp_rat(BigRat(c), -shift)};
}

namespace detail {

inline bool narrow_enough(const RatInterval& x, const BigRat& precision) {
  return x.width() <= precision * std::max(BigRat(1), x.magnitude());
}

inline TheoremRow theorem_row_at(const XiSource& xi, const std::vector<ApproxTriple>& t, unsigned i,
                                 long bits) {
  const BigInt& X = t[i - 1].x0;
  const BigInt& Xp = t[i - 2].x0;
  const long w = bits + 8;
  const BigRat fine = ldexp_rat(BigRat(1), -w);

  TheoremRow row;
  row.i = i;
  row.x_digits = decimal_digits(X);

  const RatInterval x = xi.dyadic(2 * static_cast<long>(bit_length(X)) + w + 8);
  const RatInterval x2 = interval_pow(x, 2);
  const BigRat Xq(X);
  RatInterval d1 = interval_abs(x * Xq - BigRat(t[i - 1].x1));
  RatInterval d2 = interval_abs(x2 * Xq - BigRat(t[i - 1].x2));
  row.error = round_outward_rel(interval_max(d1, d2) * Xq, w);

  const RatInterval log_x = log_enclosure(Xq, fine);
  const RatInterval log_prev = Xp == 1 ? RatInterval(BigRat(0)) : log_enclosure(BigRat(Xp), fine);
  if (log_prev.lo() > 0) row.growth_ratio = round_outward_rel(log_x / log_prev, w);
  if (i >= 3) row.limit_val = quotient_enclosure(X, Xp * t[i - 3].x0, w);

  const RatInterval gamma = golden_ratio(fine / (log_prev.hi() + 1));
  row.q_ratio = round_outward_rel(exp_enclosure(log_x - gamma * log_prev, w), w);
  return row;
}

}  // namespace detail

/// One row of the growth/error table, escalating precision until every
/// field is narrower than `precision` (relative above 1, absolute below).
inline TheoremRow theorem_row(const XiSource& xi, const std::vector<ApproxTriple>& triples, unsigned i,
                              const BigRat& precision) {
  if (i < 2 || i > triples.size()) throw std::invalid_argument("theorem_row: index out of range");
  long bits = bits_for(precision) + 4;
  TheoremRow row;
  for (int esc = 0; esc <= kMaxEscalations && bits <= kMaxWorkingBits; ++esc) {
    try {
      row = detail::theorem_row_at(xi, triples, i, bits);
    } catch (const ResourceError&) {
      row.decided = false;
      return row;
    }
    bool ok = detail::narrow_enough(row.error, precision) && detail::narrow_enough(row.q_ratio, precision);
    if (row.growth_ratio) ok = ok && detail::narrow_enough(*row.growth_ratio, precision);
    if (row.limit_val) ok = ok && detail::narrow_enough(*row.limit_val, precision);
    if (ok) {
      row.decided = true;
      return row;
    }
    bits *= 2;
  }
  row.decided = false;
  return row;
}

inline std::vector<TheoremRow> theorem22_table(const XiSource& xi, const std::vector<ApproxTriple>& triples,
                                               unsigned i_max, const BigRat& precision, unsigned threads = 1) {
  if (i_max < 2 || i_max > kMaxTableIndex) throw std::invalid_argument("i_max must be in [2, 30]");
  if (triples.size() < i_max) throw std::invalid_argument("theorem22_table: not enough triples");
  return parallel_map(i_max - 1, threads,
                      [&](std::uint64_t k) { return theorem_row(xi, triples, static_cast<unsigned>(k + 2), precision); });
}

inline std::vector<TheoremRow> theorem22_table(const Params& p, unsigned i_max, const BigRat& precision,
                                               unsigned threads = 1) {
  if (i_max < 2 || i_max > kMaxTableIndex) throw std::invalid_argument("i_max must be in [2, 30]");
  XiSource xi(p);
  return theorem22_table(xi, triple_sequence(p, i_max), i_max, precision, threads);
}

/// c1 = min q_i, c2 = max q_i, c3 = max E_i over the rows (outer endpoints).
inline FittedConstants fit_constants(const std::vector<TheoremRow>& rows) {
  if (rows.size() < 9) throw std::invalid_argument("fit_constants: rows must cover i in [2, i_max] with i_max >= 10");
  for (const auto& r : rows)
    if (!r.decided) throw UndecidedRowError(r.i);
  FittedConstants c{rows[0].q_ratio.lo(), rows[0].q_ratio.hi(), rows[0].error.hi()};
  for (const auto& r : rows) {
    c.c1 = std::min(c.c1, r.q_ratio.lo());
    c.c2 = std::max(c.c2, r.q_ratio.hi());
    c.c3 = std::max(c.c3, r.error.hi());
  }
  return c;
}

/// Decides |x0 xi - x1| <= 1/x0 (first) and |x1 xi - x2| <= 1/x1 (second).
inline std::pair<Decision, Decision> convergent_bounds(const XiSource& xi, const ApproxTriple& t) {
  auto check = [&](const BigInt& q, const BigInt& p) {
    const long base = 2 * static_cast<long>(bit_length(q)) + 16;
    return decide_le(
        [&](long bits) {
          RatInterval lhs = interval_abs(xi.dyadic(base + bits) * BigRat(q) - BigRat(p));
          return std::pair{lhs, RatInterval(make_rat(1, q))};
        },
        16);
  };
  return {check(t.x0, t.x1), check(t.x1, t.x2)};
}

namespace detail {

inline CubeRow cube_row_at(const XiSource& xi, const ApproxTriple& t, const BigRat& delta, long bits) {
  const BigInt& X = t.x0;
  const long w = bits + 8;
  CubeRow row;
  row.i = t.i;
  row.x_digits = decimal_digits(X);
  const RatInterval x = xi.dyadic(static_cast<long>(bit_length(X)) + w + 8);
  row.cube_dist = round_outward_rel(nearest_int_distance(interval_pow(x, 3) * BigRat(X)), w);
  const RatInterval log_x = log_enclosure(BigRat(X), ldexp_rat(BigRat(1), -w) / (delta + 1));
  row.threshold = round_outward_rel(exp_enclosure(log_x * BigRat(-delta), w), w);
  if (certainly_greater(row.cube_dist, row.threshold)) row.status = CubeStatus::Pass;
  else if (certainly_less(row.cube_dist, row.threshold)) row.status = CubeStatus::Fail;
  return row;
}

}  // namespace detail

/// ||X_i xi^3|| against X_i^-delta for i in [2, i_max]. Precision escalates
/// until the two enclosures are disjoint and narrower than `precision`.
inline std::vector<CubeRow> cube_experiment(const XiSource& xi, const std::vector<ApproxTriple>& triples,
                                            unsigned i_max, const BigRat& delta, const BigRat& precision,
                                            unsigned threads = 1) {
  if (i_max < 2 || i_max > kMaxCubeIndex) throw std::invalid_argument("i_max must be in [2, 25]");
  if (delta <= 0 || delta >= 1) throw std::invalid_argument("delta must lie in (0, 1)");
  if (triples.size() < i_max) throw std::invalid_argument("cube_experiment: not enough triples");
  return parallel_map(i_max - 1, threads, [&](std::uint64_t k) {
    const ApproxTriple& t = triples[k + 1];
    long bits = bits_for(precision) + 4;
    CubeRow row;
    for (int esc = 0; esc <= kMaxEscalations && bits <= kMaxWorkingBits; ++esc) {
      try {
        row = detail::cube_row_at(xi, t, delta, bits);
      } catch (const ResourceError&) {
        row.status = CubeStatus::Undecided;
        return row;
      }
      if (row.status != CubeStatus::Undecided && detail::narrow_enough(row.cube_dist, precision) &&
          row.threshold.width() <= precision * row.threshold.magnitude())
        return row;
      bits *= 2;
    }
    row.status = CubeStatus::Undecided;
    return row;
  });
}

inline std::vector<CubeRow> cube_experiment(const Params& p, unsigned i_max, const BigRat& delta,
                                            const BigRat& precision, unsigned threads = 1) {
  if (i_max < 2 || i_max > kMaxCubeIndex) throw std::invalid_argument("i_max must be in [2, 25]");
  XiSource xi(p);
  return cube_experiment(xi, triple_sequence(p, i_max), i_max, delta, precision, threads);
}

}  // namespace fibcf
