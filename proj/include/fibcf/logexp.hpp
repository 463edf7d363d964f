#pragma once

// Natural logarithm and exponential enclosures over exact rationals.
//
// Both functions work with dyadic intermediates rounded in the direction of
// the bound being computed, so every returned interval is a true enclosure.

#include <stdexcept>

#include "fibcf/exactnum.hpp"

namespace fibcf {

namespace detail {

/// 2*atanh(z) = log((1+z)/(1-z)) for dyadic 0 <= z <= 1/3, bounded from the
/// requested side with about `bits` fractional bits.
inline BigRat two_atanh_bound(const BigRat& z, long bits, Rounding dir) {
  const long w = bits + 24;
  auto rnd = [&](const BigRat& v) { return dir == Rounding::Down ? round_down(v, w) : round_up(v, w); };
  if (z == 0) return 0;
  const BigRat z2 = rnd(z * z);
  const BigRat eps = ldexp_rat(BigRat(1), -w);
  BigRat power = z;  // z^(2k+1), rounded in direction dir
  BigRat sum = 0;
  for (unsigned long k = 0;; ++k) {
    BigRat term = rnd(power / (2 * k + 1));
    sum += term;
    power = rnd(power * z2);
    if (power <= eps) {
      if (dir == Rounding::Up) {
        // tail sum_{m>k} z^(2m+1)/(2m+1) <= z^(2k+3) / (1 - z^2) <= (9/8) z^(2k+3)
        sum += rnd(power * BigRat(9, 8));
      }
      break;
    }
  }
  return 2 * sum;
}

/// log(m) for dyadic m in [1, 2], bounded from the requested side.
inline BigRat log_mantissa_bound(const BigRat& m, long bits, Rounding dir) {
  const long w = bits + 24;
  BigRat z = (m - 1) / (m + 1);
  z = dir == Rounding::Down ? round_down(z, w) : round_up(z, w);
  return two_atanh_bound(z, bits, dir);
}

}  // namespace detail

/// Enclosure of log 2 with width <= 2^-bits.
inline RatInterval ln2_enclosure(long bits) {
  const BigRat third(1, 3);
  BigRat lo = detail::two_atanh_bound(round_down(third, bits + 8), bits + 2, Rounding::Down);
  BigRat hi = detail::two_atanh_bound(round_up(third, bits + 8), bits + 2, Rounding::Up);
  return {lo, hi};
}

/// Enclosure of the natural logarithm of x > 0 with width <= precision.
inline RatInterval log_enclosure(const BigRat& x, const BigRat& precision) {
  if (x <= 0) throw std::domain_error("log_enclosure: argument must be positive");
  if (x == 1) return RatInterval(BigRat(0));
  if (x < 1) return -log_enclosure(1 / x, precision);

  const long e = floor_log2(x);  // x = 2^e * m, m in [1, 2)
  const long ebits = static_cast<long>(bit_length(BigInt(e))) + 1;
  const long bits = bits_for(precision) + 4;
  const long w = bits + 4;

  const BigRat m = ldexp_rat(x, -e);
  const BigRat m_lo = round_down(m, w), m_hi = round_up(m, w);
  RatInterval ln2 = ln2_enclosure(bits + ebits + 2);
  BigRat lo = ln2.lo() * e + detail::log_mantissa_bound(m_lo, bits, Rounding::Down);
  BigRat hi = ln2.hi() * e + detail::log_mantissa_bound(m_hi, bits, Rounding::Up);
  return {lo, hi};
}

/// Enclosure of {log t : t in x} for x strictly positive.
inline RatInterval log_enclosure(const RatInterval& x, const BigRat& precision) {
  if (x.lo() <= 0) throw std::domain_error("log_enclosure: interval must be positive");
  return {log_enclosure(x.lo(), precision / 2).lo(), log_enclosure(x.hi(), precision / 2).hi()};
}

namespace detail {

/// exp(r) for 0 <= r <= 3, bounded from the requested side, about `bits`
/// fractional bits.
inline BigRat exp_small_bound(const BigRat& r, long bits, Rounding dir) {
  const long w = bits + 24;
  auto rnd = [&](const BigRat& v) { return dir == Rounding::Down ? round_down(v, w) : round_up(v, w); };
  const BigRat eps = ldexp_rat(BigRat(1), -w);
  BigRat term = 1, sum = 1;
  for (unsigned long n = 1;; ++n) {
    term = rnd(term * r / n);
    sum += term;
    if (term <= eps && 2 * r <= n + 1) {
      // remaining terms form a series dominated by term * sum (r/(n+1))^k <= term
      if (dir == Rounding::Up) sum += term;
      break;
    }
  }
  return sum;
}

/// exp(x) bounded from the requested side with relative error about 2^-bits.
inline BigRat exp_bound(const BigRat& x, long bits, Rounding dir) {
  // x = k log2 + r with r in roughly [0.7, 2.1]
  const double xd = x.get_d();
  long k = static_cast<long>(std::floor(xd / 0.69314718055994530942)) - 2;
  const long kbits = static_cast<long>(bit_length(BigInt(k))) + 2;
  const RatInterval ln2 = ln2_enclosure(bits + kbits + 8);
  RatInterval r = RatInterval(x) - ln2 * BigRat(k);
  while (r.lo() < 0) {
    --k;
    r = RatInterval(x) - ln2 * BigRat(k);
  }
  BigRat t = exp_small_bound(dir == Rounding::Down ? r.lo() : r.hi(), bits + 4, dir);
  return ldexp_rat(t, k);
}

}  // namespace detail

/// Enclosure of {exp t : t in y} with relative width about 2^-bits.
inline RatInterval exp_enclosure(const RatInterval& y, long bits) {
  return {detail::exp_bound(y.lo(), bits, Rounding::Down), detail::exp_bound(y.hi(), bits, Rounding::Up)};
}

}  // namespace fibcf
