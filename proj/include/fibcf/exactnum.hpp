#pragma once

// Exact integer/rational arithmetic, 2x2 integer matrices and rational
// interval arithmetic with outward (directed) rounding.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace fibcf {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Raised when a computation would exceed a fixed resource cap
/// (word materialization, convergent index, escalation budget).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Integer / rational helpers

inline BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("make_rat: zero denominator");
  BigRat q;
  q.get_num() = num;
  q.get_den() = den;
  q.canonicalize();
  return q;
}

inline std::size_t bit_length(const BigInt& n) {
  if (n == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline BigInt floor_div(const BigInt& n, const BigInt& d) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

inline BigInt ceil_div(const BigInt& n, const BigInt& d) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

inline BigInt floor_rat(const BigRat& q) { return floor_div(q.get_num(), q.get_den()); }
inline BigInt ceil_rat(const BigRat& q) { return ceil_div(q.get_num(), q.get_den()); }

/// q * 2^e for any signed e.
inline BigRat ldexp_rat(const BigRat& q, long e) {
  BigRat r;
  if (e >= 0)
    mpq_mul_2exp(r.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpq_div_2exp(r.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return r;
}

/// floor(q * 2^frac_bits) / 2^frac_bits
inline BigRat round_down(const BigRat& q, long frac_bits) {
  return ldexp_rat(BigRat(floor_rat(ldexp_rat(q, frac_bits))), -frac_bits);
}

inline BigRat round_up(const BigRat& q, long frac_bits) {
  return ldexp_rat(BigRat(ceil_rat(ldexp_rat(q, frac_bits))), -frac_bits);
}

/// floor(log2 |q|) for q != 0.
inline long floor_log2(const BigRat& q) {
  if (q == 0) throw std::domain_error("floor_log2 of zero");
  BigRat a = abs(q);
  long e = static_cast<long>(bit_length(a.get_num())) - static_cast<long>(bit_length(a.get_den()));
  // 2^(e-1) < a < 2^(e+1)
  if (a < ldexp_rat(BigRat(1), e)) --e;
  return e;
}

/// Round toward -inf keeping about `sig_bits` significant bits.
inline BigRat round_down_rel(const BigRat& q, long sig_bits) {
  if (q == 0) return q;
  return round_down(q, sig_bits - floor_log2(q));
}

inline BigRat round_up_rel(const BigRat& q, long sig_bits) {
  if (q == 0) return q;
  return round_up(q, sig_bits - floor_log2(q));
}

/// Smallest b >= 0 with 2^-b <= precision.
inline long bits_for(const BigRat& precision) {
  if (precision <= 0) throw std::invalid_argument("precision must be positive");
  if (precision >= 1) return 0;
  long b = -floor_log2(precision);
  if (ldexp_rat(BigRat(1), -b) > precision) ++b;
  return b;
}

/// 10^-digits as an exact rational.
inline BigRat pow10_neg(unsigned long digits) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, digits);
  return make_rat(1, p);
}

/// Exact decimal digit count of |n| (1 for zero).
inline std::size_t decimal_digits(const BigInt& n) {
  if (n == 0) return 1;
  BigInt a = abs(n);
  std::size_t d = mpz_sizeinbase(a.get_mpz_t(), 10);
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, d - 1);
  return a < p ? d - 1 : d;
}

/// Parse "3", "-7/2", "0.125", "1e-3" into an exact rational.
inline BigRat parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = text.find('/'); slash != std::string::npos) {
    BigInt n(text.substr(0, slash), 10), d(text.substr(slash + 1), 10);
    return make_rat(n, d);
  }
  std::string mant = text;
  long exp10 = 0;
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    mant = text.substr(0, e);
    exp10 = std::stol(text.substr(e + 1));
  }
  bool minus = !mant.empty() && mant[0] == '-';
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant.erase(0, 1);
  std::string digits;
  for (char c : mant) {
    if (c == '.') continue;
    if (c < '0' || c > '9') throw std::invalid_argument("bad rational: " + text);
    digits.push_back(c);
  }
  if (digits.empty()) throw std::invalid_argument("bad rational: " + text);
  if (auto dot = mant.find('.'); dot != std::string::npos)
    exp10 -= static_cast<long>(mant.size() - dot - 1);
  BigRat v{BigInt(digits, 10)};
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  v = exp10 < 0 ? BigRat(v / p) : BigRat(v * p);
  return minus ? BigRat(-v) : v;
}

enum class Rounding { Down, Up };

/// Scientific decimal string with `sig` significant digits, rounded in the
/// given direction, e.g. "1.61803e0". Zero prints as "0".
inline std::string to_decimal(const BigRat& q, unsigned sig, Rounding dir) {
  if (q == 0) return "0";
  if (sig == 0) sig = 1;
  bool neg = q < 0;
  BigRat a = abs(q);
  // estimate the decimal exponent, then correct it exactly
  double l2 = static_cast<double>(bit_length(a.get_num())) - static_cast<double>(bit_length(a.get_den()));
  long e = static_cast<long>(std::floor(l2 * 0.30102999566398119521)) - 1;
  auto pow10 = [](long k) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? make_rat(1, p) : BigRat(p);
  };
  while (pow10(e + 1) <= a) ++e;
  while (pow10(e) > a) --e;
  // magnitude rounding direction: away from zero when (Up, positive) or (Down, negative)
  bool away = (dir == Rounding::Up) != neg;
  BigRat scaled = a * pow10(static_cast<long>(sig) - 1 - e);
  BigInt m = away ? ceil_rat(scaled) : floor_rat(scaled);
  std::string s = m.get_str();
  if (s.size() > sig) {  // carried into a new digit (e.g. 9.99 -> 10.0)
    ++e;
    s.resize(sig);  // trailing digit is zero after carry
  }
  std::string out = neg ? "-" : "";
  out += s[0];
  if (s.size() > 1) {
    out += '.';
    out += s.substr(1);
  }
  out += 'e' + std::to_string(e);
  return out;
}

// ---------------------------------------------------------------------------
// 2x2 integer matrices

struct Mat2 {
  BigInt m00{1}, m01{0}, m10{0}, m11{1};

  static Mat2 identity() { return {}; }

  BigInt det() const { return m00 * m11 - m01 * m10; }
  bool symmetric() const { return m01 == m10; }

  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.m00 == y.m00 && x.m01 == y.m01 && x.m10 == y.m10 && x.m11 == y.m11;
  }
};

inline Mat2 mat_mul(const Mat2& m, const Mat2& n) {
  return {m.m00 * n.m00 + m.m01 * n.m10, m.m00 * n.m01 + m.m01 * n.m11,
          m.m10 * n.m00 + m.m11 * n.m10, m.m10 * n.m01 + m.m11 * n.m11};
}

inline Mat2 operator*(const Mat2& m, const Mat2& n) { return mat_mul(m, n); }

/// The pair of distinct positive partial quotients (a, b).
class Params {
 public:
  Params(unsigned long a, unsigned long b) : a_(a), b_(b) {
    if (a == 0 || b == 0) throw std::invalid_argument("a and b must be positive");
    if (a == b) throw std::invalid_argument("a and b must be distinct");
  }
  unsigned long a() const { return a_; }
  unsigned long b() const { return b_; }

  friend bool operator==(const Params&, const Params&) = default;

 private:
  unsigned long a_;
  unsigned long b_;
};

/// (c 1; 1 0)
inline Mat2 quotient_matrix(unsigned long c) { return {BigInt(c), 1, 1, 0}; }

// ---------------------------------------------------------------------------
// Rational intervals

class RatInterval {
 public:
  RatInterval() = default;
  explicit RatInterval(BigRat point) : lo_(point), hi_(std::move(point)) {}
  RatInterval(BigRat lo, BigRat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw std::invalid_argument("RatInterval: lo > hi");
  }

  const BigRat& lo() const { return lo_; }
  const BigRat& hi() const { return hi_; }
  BigRat width() const { return hi_ - lo_; }
  BigRat mid() const { return (lo_ + hi_) / 2; }
  /// max(|lo|, |hi|)
  BigRat magnitude() const { return std::max(BigRat(abs(lo_)), BigRat(abs(hi_))); }
  /// min |t| over the interval
  BigRat mignitude() const {
    if (lo_ <= 0 && hi_ >= 0) return 0;
    return std::min(BigRat(abs(lo_)), BigRat(abs(hi_)));
  }

  bool is_point() const { return lo_ == hi_; }
  bool contains(const BigRat& t) const { return lo_ <= t && t <= hi_; }
  bool contains(const RatInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool contains_zero() const { return lo_ <= 0 && hi_ >= 0; }

  friend bool operator==(const RatInterval& x, const RatInterval& y) {
    return x.lo_ == y.lo_ && x.hi_ == y.hi_;
  }

 private:
  BigRat lo_{0};
  BigRat hi_{0};
};

inline RatInterval operator-(const RatInterval& x) { return {-x.hi(), -x.lo()}; }

inline RatInterval interval_add(const RatInterval& x, const RatInterval& y) {
  return {x.lo() + y.lo(), x.hi() + y.hi()};
}

inline RatInterval interval_sub(const RatInterval& x, const RatInterval& y) {
  return {x.lo() - y.hi(), x.hi() - y.lo()};
}

inline RatInterval interval_mul(const RatInterval& x, const RatInterval& y) {
  if (x.lo() >= 0 && y.lo() >= 0) return {x.lo() * y.lo(), x.hi() * y.hi()};
  BigRat p[4] = {x.lo() * y.lo(), x.lo() * y.hi(), x.hi() * y.lo(), x.hi() * y.hi()};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

/// x / y for y not containing zero.
inline RatInterval interval_div(const RatInterval& x, const RatInterval& y) {
  if (y.contains_zero()) throw std::domain_error("interval_div: divisor contains zero");
  return interval_mul(x, RatInterval(1 / y.hi(), 1 / y.lo()));
}

inline RatInterval operator+(const RatInterval& x, const RatInterval& y) { return interval_add(x, y); }
inline RatInterval operator-(const RatInterval& x, const RatInterval& y) { return interval_sub(x, y); }
inline RatInterval operator*(const RatInterval& x, const RatInterval& y) { return interval_mul(x, y); }
inline RatInterval operator/(const RatInterval& x, const RatInterval& y) { return interval_div(x, y); }
inline RatInterval operator+(const RatInterval& x, const BigRat& c) { return {x.lo() + c, x.hi() + c}; }
inline RatInterval operator-(const RatInterval& x, const BigRat& c) { return {x.lo() - c, x.hi() - c}; }
inline RatInterval operator*(const RatInterval& x, const BigRat& c) {
  return c >= 0 ? RatInterval(x.lo() * c, x.hi() * c) : RatInterval(x.hi() * c, x.lo() * c);
}
inline RatInterval operator*(const BigRat& c, const RatInterval& x) { return x * c; }

inline RatInterval interval_abs(const RatInterval& x) {
  if (x.lo() >= 0) return x;
  if (x.hi() <= 0) return -x;
  return {0, std::max(BigRat(-x.lo()), x.hi())};
}

inline RatInterval interval_max(const RatInterval& x, const RatInterval& y) {
  return {std::max(x.lo(), y.lo()), std::max(x.hi(), y.hi())};
}

inline RatInterval interval_min(const RatInterval& x, const RatInterval& y) {
  return {std::min(x.lo(), y.lo()), std::min(x.hi(), y.hi())};
}

inline RatInterval hull(const RatInterval& x, const RatInterval& y) {
  return {std::min(x.lo(), y.lo()), std::max(x.hi(), y.hi())};
}

/// Enclosure of {t^k : t in x} for k in 1..3.
inline RatInterval interval_pow(const RatInterval& x, int k) {
  switch (k) {
    case 1:
      return x;
    case 2: {
      BigRat l2 = x.lo() * x.lo(), h2 = x.hi() * x.hi();
      if (x.lo() >= 0) return {l2, h2};
      if (x.hi() <= 0) return {h2, l2};
      return {0, std::max(l2, h2)};
    }
    case 3: {
      BigRat l = x.lo(), h = x.hi();
      return {l * l * l, h * h * h};
    }
    default:
      throw std::invalid_argument("interval_pow: exponent must be 1, 2 or 3");
  }
}

inline bool certainly_less(const RatInterval& x, const RatInterval& y) { return x.hi() < y.lo(); }
inline bool certainly_greater(const RatInterval& x, const RatInterval& y) { return x.lo() > y.hi(); }
inline bool overlaps(const RatInterval& x, const RatInterval& y) {
  return !(certainly_less(x, y) || certainly_greater(x, y));
}

/// Outward rounding to dyadic endpoints with `frac_bits` fractional bits.
inline RatInterval round_outward(const RatInterval& x, long frac_bits) {
  return {round_down(x.lo(), frac_bits), round_up(x.hi(), frac_bits)};
}

/// Outward rounding keeping about `sig_bits` significant bits per endpoint.
inline RatInterval round_outward_rel(const RatInterval& x, long sig_bits) {
  return {round_down_rel(x.lo(), sig_bits), round_up_rel(x.hi(), sig_bits)};
}

/// Enclosure of the square root of the non-negative part of x, endpoints
/// dyadic with `frac_bits` fractional bits.
inline RatInterval interval_sqrt(const RatInterval& x, long frac_bits) {
  if (x.hi() < 0) throw std::domain_error("interval_sqrt of a negative interval");
  auto scaled = [&](const BigRat& v) { return ldexp_rat(v, 2 * frac_bits); };
  BigInt lo_floor = x.lo() > 0 ? floor_rat(scaled(x.lo())) : BigInt(0);
  BigInt hi_ceil = ceil_rat(scaled(x.hi()));
  BigInt s_lo, s_hi;
  mpz_sqrt(s_lo.get_mpz_t(), lo_floor.get_mpz_t());
  mpz_sqrt(s_hi.get_mpz_t(), hi_ceil.get_mpz_t());
  if (s_hi * s_hi < hi_ceil) s_hi += 1;
  return {ldexp_rat(BigRat(s_lo), -frac_bits), ldexp_rat(BigRat(s_hi), -frac_bits)};
}

/// Enclosure of {dist(t, Z) : t in x}. Intervals of width >= 1/2 get the
/// trivial enclosure [0, 1/2].
inline RatInterval nearest_int_distance(const RatInterval& x) {
  const BigRat half(1, 2);
  if (x.width() >= half) return {0, half};
  auto dist = [](const BigRat& t) {
    BigRat f = t - BigRat(floor_rat(t));
    return std::min(f, BigRat(1 - f));
  };
  BigRat d_lo = dist(x.lo()), d_hi = dist(x.hi());
  // breakpoints of the tent function: integers (value 0) and half-integers (1/2)
  bool has_int = floor_rat(x.hi()) >= ceil_rat(x.lo());
  bool has_half = floor_rat(x.hi() - half) >= ceil_rat(x.lo() - half);
  BigRat lo = has_int ? BigRat(0) : std::min(d_lo, d_hi);
  BigRat hi = has_half ? half : std::max(d_lo, d_hi);
  return {lo, hi};
}

/// Enclosure of the golden ratio of width <= precision, bracketed by
/// consecutive Fibonacci ratios.
inline RatInterval golden_ratio(const BigRat& precision) {
  if (precision <= 0) throw std::invalid_argument("golden_ratio: precision must be positive");
  BigInt f0 = 1, f1 = 1, f2 = 2;
  // f1/f0 and f2/f1 bracket the golden ratio; width = 1/(f0*f1*...)
  while (true) {
    BigRat r1 = make_rat(f1, f0), r2 = make_rat(f2, f1);
    RatInterval g(std::min(r1, r2), std::max(r1, r2));
    if (g.width() <= precision) return g;
    f0 = f1;
    f1 = f2;
    f2 = f0 + f1;
  }
}

}  // namespace fibcf
