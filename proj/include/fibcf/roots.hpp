#pragma once

// Integer polynomials of degree 1..3: exact evaluation, Sturm-sequence real
// root isolation, and the root nearest a point enclosure, complex roots
// included.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fibcf/construct.hpp"
#include "fibcf/exactnum.hpp"

namespace fibcf {

/// Integer polynomial; c[k] is the coefficient of t^k and the leading
/// coefficient is non-zero.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> c) : c_(std::move(c)) {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    if (c_.empty()) throw std::invalid_argument("IntPoly: zero polynomial");
  }
  /// From coefficients listed from the leading one down to the constant.
  static IntPoly from_leading(std::vector<BigInt> c) {
    std::reverse(c.begin(), c.end());
    return IntPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const BigInt& coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
  const BigInt& leading() const { return c_.back(); }
  const std::vector<BigInt>& coeffs() const { return c_; }

  /// Coefficients from the leading one down to the constant.
  std::vector<BigInt> leading_first() const { return {c_.rbegin(), c_.rend()}; }

  BigInt height() const {
    BigInt h = 0;
    for (const auto& x : c_) h = std::max(h, BigInt(abs(x)));
    return h;
  }

  BigRat operator()(const BigRat& t) const {
    BigRat v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
    return v;
  }

  /// Horner evaluation over an interval (an enclosure of the range).
  RatInterval operator()(const RatInterval& t) const {
    RatInterval v(BigRat(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + BigRat(*it);
    return v;
  }

  std::string str() const {
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      const BigInt& x = coeff(k);
      if (x == 0) continue;
      const bool neg = x < 0;
      const BigInt ax = abs(x);
      if (s.empty()) s += neg ? "-" : "";
      else s += neg ? " - " : " + ";
      if (ax != 1 || k == 0) s += ax.get_str();
      if (k >= 1) s += "t";
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
  }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  std::vector<BigInt> c_;
};

/// Degree first, then coefficients from the leading one down.
inline bool poly_less(const IntPoly& p, const IntPoly& q) {
  if (p.degree() != q.degree()) return p.degree() < q.degree();
  for (int k = p.degree(); k >= 0; --k)
    if (p.coeff(k) != q.coeff(k)) return p.coeff(k) < q.coeff(k);
  return false;
}

/// 1 + max |c_k / c_n|: every complex root has modulus below it.
inline BigRat cauchy_bound(const IntPoly& p) {
  BigRat m = 0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, make_rat(abs(p.coeff(k)), abs(p.leading())));
  return 1 + m;
}

namespace detail {

using RatPoly = std::vector<BigRat>;  // RatPoly[k] is the coefficient of t^k

inline void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RatPoly rat_poly(const IntPoly& p) { return {p.coeffs().begin(), p.coeffs().end()}; }

inline RatPoly derivative(const RatPoly& p) {
  RatPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<unsigned long>(k));
  trim(d);
  return d;
}

inline RatPoly remainder(RatPoly a, const RatPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    const BigRat f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= f * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline BigRat eval(const RatPoly& p, const BigRat& t) {
  BigRat v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * t + *it;
  return v;
}

inline int sgn(const BigRat& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

class Sturm {
 public:
  explicit Sturm(const IntPoly& p) {
    chain_.push_back(rat_poly(p));
    chain_.push_back(derivative(chain_[0]));
    while (chain_.back().size() > 1) {
      RatPoly r = remainder(chain_[chain_.size() - 2], chain_.back());
      if (r.empty()) break;
      for (auto& x : r) x = -x;
      chain_.push_back(std::move(r));
    }
  }

  int sign_changes(const BigRat& t) const {
    int changes = 0, last = 0;
    for (const auto& q : chain_) {
      const int s = sgn(eval(q, t));
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

  /// Distinct real roots in (lo, hi].
  int count(const BigRat& lo, const BigRat& hi) const { return sign_changes(lo) - sign_changes(hi); }

 private:
  std::vector<RatPoly> chain_;
};

}  // namespace detail

/// Isolating intervals for the distinct real roots of p, sorted, each of
/// width <= 2^-frac_bits. Rational roots come back as point intervals.
inline std::vector<RatInterval> real_roots(const IntPoly& p, long frac_bits) {
  if (p.degree() < 1) return {};
  const detail::Sturm sturm(p);
  const BigRat eps = ldexp_rat(BigRat(1), -frac_bits);
  const BigRat bound(ceil_rat(cauchy_bound(p)));

  std::vector<RatInterval> isolated;
  // (lo, hi] ranges still holding more than one root
  std::vector<std::pair<BigRat, BigRat>> todo{{-bound, bound}};
  while (!todo.empty()) {
    auto [lo, hi] = todo.back();
    todo.pop_back();
    const int n = sturm.count(lo, hi);
    if (n == 0) continue;
    if (n == 1) {
      isolated.emplace_back(lo, hi);
      continue;
    }
    const BigRat mid = (lo + hi) / 2;
    todo.emplace_back(lo, mid);
    todo.emplace_back(mid, hi);
  }

  std::vector<RatInterval> out;
  for (const auto& r : isolated) {
    BigRat lo = r.lo(), hi = r.hi();
    if (p(hi) == 0) {
      out.emplace_back(hi);
      continue;
    }
    // the single root lies in (lo, hi) and p changes sign across it
    const int s_hi = detail::sgn(p(hi));
    bool exact = false;
    while (hi - lo > eps) {
      const BigRat mid = (lo + hi) / 2;
      const int s = detail::sgn(p(mid));
      if (s == 0) {
        out.emplace_back(mid);
        exact = true;
        break;
      }
      (s == s_hi ? hi : lo) = mid;
    }
    if (exact) continue;
    // a rational root k/d has d dividing the leading coefficient
    const BigInt lead = abs(p.leading());
    std::optional<BigRat> hit;
    for (BigInt d = 1; d <= lead && !hit; ++d) {
      if (lead % d != 0) continue;
      const BigInt k = ceil_div(BigInt(lo.get_num() * d), lo.get_den());
      const BigRat t = make_rat(k, d);
      if (t <= hi && p(t) == 0) hit = t;
    }
    if (hit) out.emplace_back(*hit);
    else out.emplace_back(lo, hi);
  }
  std::sort(out.begin(), out.end(), [](const RatInterval& x, const RatInterval& y) { return x.lo() < y.lo(); });
  return out;
}

/// Complex root enclosure; `im` encloses |Im| so a conjugate pair is one entry.
struct ComplexEnclosure {
  RatInterval re;
  RatInterval im;  // [0, 0] for a real root

  bool is_real() const { return im.hi() == 0; }
};

struct NearestRoot {
  ComplexEnclosure root;
  RatInterval dist;    // min over the roots of |xi - root|
  bool tie = false;    // nearest root not separated from another one
};

namespace detail {

struct RootDist {
  ComplexEnclosure root;
  RatInterval dist;
};

inline RatInterval positive_part(const RatInterval& x) {
  return {std::max(BigRat(0), x.lo()), std::max(BigRat(0), x.hi())};
}

/// Every root of p with its distance to x, enclosures at about `bits` bits.
inline std::vector<RootDist> root_distances(const IntPoly& p, const RatInterval& x, long bits) {
  std::vector<RootDist> out;
  const RatInterval zero(BigRat(0));
  const std::vector<RatInterval> real = real_roots(p, bits);
  for (const auto& r : real) out.push_back({{r, zero}, interval_abs(x - r)});
  const int n_complex = p.degree() - static_cast<int>(real.size());
  if (n_complex == 0) return out;
  if (n_complex != 2) throw std::invalid_argument("closest_root: repeated roots");

  const BigRat c2 = p.degree() == 2 ? BigRat(p.coeff(2)) : BigRat(p.coeff(3));
  RatInterval re, abs2;  // real part and squared modulus of the pair
  if (p.degree() == 2) {
    const BigRat c1(p.coeff(1)), c0(p.coeff(0));
    re = RatInterval(-c1 / (2 * c2));
    abs2 = RatInterval(c0 / c2);
  } else {
    // roots r, u +- iv: r + 2u = -c2/c3 and 2ru + (u^2 + v^2) = c1/c3
    const BigRat c3(p.coeff(3)), c2b(p.coeff(2)), c1(p.coeff(1));
    const RatInterval& r = real.front();
    re = (RatInterval(-c2b / c3) - r) * BigRat(1, 2);
    abs2 = RatInterval(c1 / c3) - r * re * BigRat(2);
  }
  const RatInterval im2 = positive_part(abs2 - interval_pow(re, 2));
  const RatInterval dist2 = positive_part(interval_pow(x - re, 2) + im2);
  out.push_back({{re, interval_sqrt(im2, bits)}, interval_sqrt(dist2, bits)});
  return out;
}

}  // namespace detail

/// Nearest root of p to the point enclosed by x, at a single precision.
/// `tie` is set when another root's distance overlaps the winner's.
inline NearestRoot closest_root_at(const IntPoly& p, const RatInterval& x, long bits) {
  if (p.degree() < 1 || p.degree() > 3) throw std::invalid_argument("closest_root: degree must be 1, 2 or 3");
  // isolating intervals narrower than any nonzero root modulus, which exceeds 1/(H+1)
  bits = std::max(bits, static_cast<long>(bit_length(p.height())) + 8);
  auto roots = detail::root_distances(p, x, bits);
  std::size_t best = 0;
  for (std::size_t k = 1; k < roots.size(); ++k)
    if (roots[k].dist.hi() < roots[best].dist.hi()) best = k;
  NearestRoot out{roots[best].root, roots[best].dist, false};
  for (std::size_t k = 0; k < roots.size(); ++k) {
    if (k == best) continue;
    out.dist = interval_min(out.dist, roots[k].dist);
    if (!certainly_less(roots[best].dist, roots[k].dist)) {
      out.tie = true;
      out.root.re = hull(out.root.re, roots[k].root.re);
      out.root.im = hull(out.root.im, roots[k].root.im);
    }
  }
  return out;
}

/// Nearest root of p to xi with dist narrower than `precision` (relative
/// above 1). Escalates until the nearest root is separated from the others.
inline NearestRoot closest_root(const IntPoly& p, const XiSource& xi, const BigRat& precision) {
  long bits = bits_for(precision) + 8;
  NearestRoot r;
  for (int esc = 0; esc <= kMaxEscalations && bits <= kMaxWorkingBits; ++esc) {
    try {
      r = closest_root_at(p, xi.dyadic(bits + 4), bits);
    } catch (const ResourceError&) {
      r.tie = true;
      return r;
    }
    if (!r.tie && r.dist.width() <= precision * std::max(BigRat(1), r.dist.magnitude())) return r;
    bits *= 2;
  }
  return r;
}

}  // namespace fibcf
