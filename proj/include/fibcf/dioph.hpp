#pragma once

// Brute-force Diophantine searches against xi: best simultaneous
// approximation of (xi, xi^2) with a common denominator, best rational
// approximation of bounded height, and nearest quadratic numbers / cubic
// algebraic integers of bounded height.
//
// Every search screens the whole candidate set at fixed machine precision
// with a rigorous error bound, then confirms the survivors with exact
// interval arithmetic and min-reduces them deterministically.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fibcf/construct.hpp"
#include "fibcf/exactnum.hpp"
#include "fibcf/logexp.hpp"
#include "fibcf/parallel.hpp"
#include "fibcf/roots.hpp"

namespace fibcf {

/// Largest X accepted by best_simultaneous.
inline constexpr std::uint64_t kMaxSimulBound = 1'000'000'000'000ULL;
/// Largest height bound accepted by the algebraic searches.
inline constexpr long kMaxSearchHeight = 2000;

/// Word size of the screening pass. Low exists to cross-check High.
enum class Screening { Low, High };

struct SimulResult {
  BigInt X;
  BigInt x0, x1, x2;
  RatInterval delta;       // max(||x0 xi||, ||x0 xi^2||), minimal over 0 < x0 <= X
  RatInterval normalized;  // delta * X^(1/gamma)
  bool tie = false;
  std::optional<BigInt> tied_x0;
};

struct AlgebraicCandidate {
  IntPoly poly;
  BigInt height;
  ComplexEnclosure root;              // root of poly nearest xi
  RatInterval dist;                   // |xi - root|
  std::optional<RatInterval> exponent;  // -log dist / log height, height >= 2
  bool tie = false;
};

namespace detail {

struct Reduced {
  std::size_t best = 0;
  std::optional<std::size_t> runner_up;
  bool tie = false;
};

/// Exact min-reduction over candidates 0..n-1, listed in tie-break order.
/// eval(k, bits) returns an item whose `value` encloses the quantity being
/// minimized and whose `settled` is false while the item itself needs more
/// bits. Survivors are re-evaluated with doubled bits until one candidate
/// is certainly smallest and narrower than `precision`.
template <class Item, class Eval>
Reduced min_reduce(std::size_t n, Eval eval, std::vector<Item>& items, long start_bits, const BigRat& precision,
                   unsigned threads) {
  if (n == 0) throw std::invalid_argument("min_reduce: no candidates");
  std::vector<std::size_t> alive(n);
  std::iota(alive.begin(), alive.end(), std::size_t{0});
  items.assign(n, Item{});
  long bits = start_bits;
  for (int esc = 0; esc <= kMaxEscalations && bits <= kMaxWorkingBits; ++esc) {
    try {
      auto fresh = parallel_map(alive.size(), threads, [&](std::uint64_t k) { return eval(alive[k], bits); });
      for (std::size_t k = 0; k < alive.size(); ++k) items[alive[k]] = std::move(fresh[k]);
    } catch (const ResourceError&) {
      break;
    }
    std::size_t best = alive.front();
    for (std::size_t k : alive)
      if (items[k].value.hi() < items[best].value.hi()) best = k;
    std::vector<std::size_t> next;
    for (std::size_t k : alive)
      if (!(items[k].value.lo() > items[best].value.hi())) next.push_back(k);
    alive = std::move(next);
    const auto& v = items[best].value;
    if (alive.size() == 1 && items[best].settled &&
        v.width() <= precision * std::max(BigRat(1), v.magnitude()))
      return {best, std::nullopt, false};
    bits *= 2;
  }
  Reduced r{alive.front(), std::nullopt, alive.size() > 1 || !items[alive.front()].settled};
  if (alive.size() > 1) r.runner_up = alive[1];
  return r;
}

inline bool is_square(long long v) {
  if (v < 0) return false;
  auto r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v;
}

/// Enclosure of X^(1/gamma) = exp((gamma - 1) log X).
inline RatInterval pow_inv_gamma(const BigInt& X, long w) {
  if (X == 1) return RatInterval(BigRat(1));
  const BigRat fine = ldexp_rat(BigRat(1), -w);
  const RatInterval log_x = log_enclosure(BigRat(X), fine);
  const RatInterval g = golden_ratio(fine / (log_x.hi() + 1));
  return exp_enclosure((g - BigRat(1)) * log_x, w);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Simultaneous approximation

namespace detail {

struct SimulItem {
  RatInterval value;
  RatInterval d1, d2;
  bool settled = true;
};

inline SimulItem simul_item(const XiSource& xi, const BigInt& x0, long bits) {
  const RatInterval x = xi.dyadic(bits + 2 * static_cast<long>(bit_length(x0)) + 4);
  const BigRat q(x0);
  SimulItem it;
  it.d1 = nearest_int_distance(x * q);
  it.d2 = nearest_int_distance(interval_pow(x, 2) * q);
  it.value = interval_max(it.d1, it.d2);
  return it;
}

template <class W>
struct SimulScreen {
  static constexpr int kBits = static_cast<int>(sizeof(W) * 8);
  static constexpr W kMax = static_cast<W>(~W(0));

  W s1, s2;  // floor(2^kBits * lower end) of xi and xi^2

  explicit SimulScreen(const XiSource& xi) {
    const RatInterval x = xi.dyadic(kBits + 8);
    s1 = to_word(x.lo());
    s2 = to_word(interval_pow(x, 2).lo());
  }

  static W to_word(const BigRat& v) {
    BigInt f = floor_rat(ldexp_rat(v, kBits));
    W out = 0;
    for (int shift = kBits - 32; shift >= 0; shift -= 32) {
      BigInt part;
      mpz_fdiv_q_2exp(part.get_mpz_t(), f.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
      mpz_fdiv_r_2exp(part.get_mpz_t(), part.get_mpz_t(), 32);
      out = (out << 32) | static_cast<W>(part.get_ui());
    }
    return out;
  }

  static W tent(W a) { return std::min<W>(a, static_cast<W>(-a)); }

  /// Bounds on 2^kBits * max(||x0 xi||, ||x0 xi^2||): the true fractional
  /// parts exceed x0 * s / 2^kBits by less than 2 x0 / 2^kBits.
  std::pair<W, W> bounds(std::uint64_t x0) const {
    const W m = std::max(tent(static_cast<W>(x0 * s1)), tent(static_cast<W>(x0 * s2)));
    const W e = static_cast<W>(2) * x0;
    const W lb = m > e ? m - e : 0;
    const W ub = m > kMax - e ? kMax : m + e;
    return {lb, ub};
  }
};

template <class W>
std::vector<std::uint64_t> simul_survivors(const XiSource& xi, std::uint64_t X, unsigned threads) {
  const SimulScreen<W> screen(xi);
  struct Local {
    W min_ub = SimulScreen<W>::kMax;
    std::vector<std::pair<std::uint64_t, W>> kept;
  };
  auto locals = map_partitions(X, threads, [&](Partition part) {
    Local loc;
    for (std::uint64_t k = part.begin; k < part.end; ++k) {
      const auto [lb, ub] = screen.bounds(k + 1);
      if (lb <= loc.min_ub) loc.kept.emplace_back(k + 1, lb);
      loc.min_ub = std::min(loc.min_ub, ub);
    }
    return loc;
  });
  W U = SimulScreen<W>::kMax;
  for (const auto& l : locals) U = std::min(U, l.min_ub);
  std::vector<std::uint64_t> out;
  for (const auto& l : locals)
    for (const auto& [x0, lb] : l.kept)
      if (lb <= U) out.push_back(x0);
  return out;
}

}  // namespace detail

/// Exact minimizer over 0 < x0 <= X of max(||x0 xi||, ||x0 xi^2||).
inline SimulResult best_simultaneous(const XiSource& xi, std::uint64_t X, const BigRat& precision,
                                     unsigned threads = 1, Screening screening = Screening::High) {
  if (X < 1) throw std::invalid_argument("best_simultaneous: X must be >= 1");
  if (X > kMaxSimulBound) throw ResourceError("best_simultaneous: X exceeds the search limit");
  const std::vector<std::uint64_t> cand = screening == Screening::High
                                              ? detail::simul_survivors<unsigned __int128>(xi, X, threads)
                                              : detail::simul_survivors<std::uint64_t>(xi, X, threads);
  std::vector<detail::SimulItem> items;
  const long start = std::max(64L, bits_for(precision) + 8);
  const auto red = detail::min_reduce(
      cand.size(), [&](std::size_t k, long bits) { return detail::simul_item(xi, BigInt(cand[k]), bits); }, items,
      start, precision, threads);

  SimulResult r;
  r.X = BigInt(static_cast<unsigned long>(X));
  r.x0 = BigInt(static_cast<unsigned long>(cand[red.best]));
  const detail::SimulItem& it = items[red.best];
  r.delta = it.value;
  const RatInterval x = xi.dyadic(bits_for(precision) + 2 * static_cast<long>(bit_length(r.x0)) + 16);
  r.x1 = floor_rat((x * BigRat(r.x0)).mid() + BigRat(1, 2));
  r.x2 = floor_rat((interval_pow(x, 2) * BigRat(r.x0)).mid() + BigRat(1, 2));
  const long w = bits_for(precision) + 8;
  r.normalized = round_outward_rel(r.delta * detail::pow_inv_gamma(r.X, w + 8), w);
  r.tie = red.tie;
  if (red.runner_up) r.tied_x0 = BigInt(static_cast<unsigned long>(cand[*red.runner_up]));
  return r;
}

inline SimulResult best_simultaneous(const Params& p, std::uint64_t X, const BigRat& precision, unsigned threads = 1) {
  return best_simultaneous(XiSource(p), X, precision, threads);
}

// ---------------------------------------------------------------------------
// Rational approximation

/// max(|num|, den) for a reduced fraction num/den.
inline BigInt height_of_rational(const BigInt& num, const BigInt& den) {
  if (den <= 0) throw std::invalid_argument("height_of_rational: denominator must be positive");
  BigInt g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) throw std::invalid_argument("height_of_rational: fraction is not reduced");
  return std::max(BigInt(abs(num)), den);
}

namespace detail {

inline std::optional<RatInterval> exponent_of(const RatInterval& dist, const BigInt& height, long w) {
  if (height < 2 || dist.lo() <= 0) return std::nullopt;
  const BigRat fine = ldexp_rat(BigRat(1), -w);
  const RatInterval num = -log_enclosure(dist, fine);
  const RatInterval den = log_enclosure(BigRat(height), fine);
  return round_outward_rel(num / den, w);
}

struct RootItem {
  RatInterval value;
  NearestRoot root;
  bool settled = true;
};

inline AlgebraicCandidate finish(const IntPoly& poly, const RootItem& it, bool tie, const BigRat& precision) {
  AlgebraicCandidate c;
  c.poly = poly;
  c.height = poly.height();
  c.root = it.root.root;
  c.dist = it.root.dist;
  c.tie = tie || it.root.tie;
  c.exponent = exponent_of(c.dist, c.height, bits_for(precision) + 8);
  return c;
}

inline RootItem root_item(const IntPoly& poly, const XiSource& xi, long bits) {
  RootItem it;
  it.root = closest_root_at(poly, xi.dyadic(bits + 4), bits);
  it.value = it.root.dist;
  it.settled = !it.root.tie;
  return it;
}

}  // namespace detail

/// Nearest reduced fraction of height <= H: the last convergent with
/// denominator <= H or the largest admissible intermediate fraction.
inline AlgebraicCandidate best_rational(const XiSource& xi, const BigInt& H, const BigRat& precision) {
  if (H < 1) throw std::invalid_argument("best_rational: H must be >= 1");
  // xi lies in (0, 1), so p <= q and the height of p/q is q (1 for 0/1, 1/1)
  BigInt p_prev = 1, q_prev = 0, p = 0, q = 1;  // p_{-1}/q_{-1}, p_0/q_0
  for (std::uint64_t j = 1;; ++j) {
    const ConvergentPair c = xi.convergent(j);
    if (c.q > H) break;
    p_prev = p;
    q_prev = q;
    p = c.p;
    q = c.q;
  }
  std::vector<IntPoly> cand{IntPoly::from_leading({q, -p})};
  const BigInt k = (H - q_prev) / q;
  if (k >= 1) {
    const BigInt sp = p_prev + k * p, sq = q_prev + k * q;
    cand.push_back(IntPoly::from_leading({sq, -sp}));
  }
  std::sort(cand.begin(), cand.end(), poly_less);
  std::vector<detail::RootItem> items;
  const auto red = detail::min_reduce(
      cand.size(), [&](std::size_t k2, long bits) { return detail::root_item(cand[k2], xi, bits); }, items,
      std::max(64L, bits_for(precision) + 8), precision, 1);
  return detail::finish(cand[red.best], items[red.best], red.tie, precision);
}

inline AlgebraicCandidate best_rational(const Params& p, const BigInt& H, const BigRat& precision) {
  return best_rational(XiSource(p), H, precision);
}

// ---------------------------------------------------------------------------
// Quadratic numbers and cubic algebraic integers

enum class SearchKind { Quadratic, CubicInteger };

inline const char* to_string(SearchKind k) { return k == SearchKind::Quadratic ? "quadratic" : "cubic_integer"; }

/// Small integer polynomial used during enumeration; c[k] multiplies t^k.
struct SmallPoly {
  std::array<long long, 4> c{};
  int degree = 0;

  IntPoly to_poly() const {
    std::vector<BigInt> v;
    for (int k = 0; k <= degree; ++k) v.emplace_back(static_cast<long>(c[static_cast<std::size_t>(k)]));
    return IntPoly(std::move(v));
  }
  long long height() const {
    long long h = 0;
    for (int k = 0; k <= degree; ++k) h = std::max(h, std::llabs(c[static_cast<std::size_t>(k)]));
    return h;
  }
  friend bool operator==(const SmallPoly&, const SmallPoly&) = default;
};

/// Raw coefficient tuples of one search kind, indexed contiguously so the
/// space can be split between threads. `at` filters out everything that is
/// not an irreducible (primitive) polynomial of height <= H.
///
/// quadratic: p2 in [1, H], p1, p0 in [-H, H].
/// cubic_integer: monic cubics, then monic quadratics, then monic linears,
/// with the other coefficients in [-H, H].
class CandidateSpace {
 public:
  CandidateSpace(SearchKind kind, long H) : kind_(kind), H_(H), W_(2 * H + 1) {
    if (H < 0) throw std::invalid_argument("height bound must be >= 0");
    if (H > kMaxSearchHeight) throw ResourceError("height bound exceeds the search limit");
  }

  SearchKind kind() const { return kind_; }
  long H() const { return H_; }

  std::uint64_t size() const {
    const std::uint64_t w = static_cast<std::uint64_t>(W_);
    if (kind_ == SearchKind::Quadratic) return static_cast<std::uint64_t>(H_) * w * w;
    return w * w * w + w * w + w;
  }

  std::optional<SmallPoly> at(std::uint64_t k) const {
    const std::uint64_t w = static_cast<std::uint64_t>(W_);
    auto digit = [&](std::uint64_t& r) {
      const long long d = static_cast<long long>(r % w) - H_;
      r /= w;
      return d;
    };
    SmallPoly p;
    if (kind_ == SearchKind::Quadratic) {
      p.degree = 2;
      p.c[0] = digit(k);
      p.c[1] = digit(k);
      p.c[2] = static_cast<long long>(k) + 1;
      if (std::gcd(std::gcd(p.c[2], std::llabs(p.c[1])), std::llabs(p.c[0])) != 1) return std::nullopt;
      if (detail::is_square(p.c[1] * p.c[1] - 4 * p.c[2] * p.c[0])) return std::nullopt;
      return p;
    }
    if (k < w * w * w) {
      p.degree = 3;
      p.c[3] = 1;
      p.c[0] = digit(k);
      p.c[1] = digit(k);
      p.c[2] = digit(k);
      if (p.c[0] == 0 || has_integer_root(p)) return std::nullopt;
    } else if ((k -= w * w * w) < w * w) {
      p.degree = 2;
      p.c[2] = 1;
      p.c[0] = digit(k);
      p.c[1] = digit(k);
      if (detail::is_square(p.c[1] * p.c[1] - 4 * p.c[0])) return std::nullopt;
    } else {
      k -= w * w;
      p.degree = 1;
      p.c[1] = 1;
      p.c[0] = digit(k);
    }
    if (p.height() > H_) return std::nullopt;
    return p;
  }

 private:
  /// Rational roots of a monic integer polynomial are integers dividing c0.
  static bool has_integer_root(const SmallPoly& p) {
    const long long c0 = std::llabs(p.c[0]);
    for (long long d = 1; d * d <= c0; ++d) {
      if (c0 % d != 0) continue;
      for (long long r : {d, -d, c0 / d, -(c0 / d)}) {
        if (((r + p.c[2]) * r + p.c[1]) * r + p.c[0] == 0) return true;
      }
    }
    return false;
  }

  SearchKind kind_;
  long H_;
  long W_;
};

/// Every candidate polynomial of the given kind and height bound, in index order.
inline std::vector<SmallPoly> enumerate_candidates(SearchKind kind, long H) {
  const CandidateSpace space(kind, H);
  std::vector<SmallPoly> out;
  for (std::uint64_t k = 0; k < space.size(); ++k)
    if (auto p = space.at(k)) out.push_back(*p);
  return out;
}

namespace detail {

template <class F>
struct RootScreen {
  F lb;   // rigorous lower bound on the distance from xi to the nearest root
  F est;  // Newton step |P(xi) / P'(xi)|, used only for ranking
};

/// Float evaluation of P near xi with a rigorous error bound. With B the
/// Cauchy bound, |P(xi)| <= |lead| * dist * (1 + B)^(n-1), since every other
/// root is within 1 + B of xi.
template <class F>
RootScreen<F> screen_root(const SmallPoly& p, F x, F x_err) {
  const int n = p.degree;
  const F u = std::numeric_limits<F>::epsilon() / 2;
  F v = 0, dv = 0, sum_abs = 0, sum_kabs = 0, max_abs = 0;
  for (int k = n; k >= 0; --k) {
    const F c = static_cast<F>(p.c[static_cast<std::size_t>(k)]);
    dv = dv * x + v;
    v = v * x + c;
    sum_abs += std::fabs(c);
    sum_kabs += k * std::fabs(c);
    if (k < n) max_abs = std::max(max_abs, std::fabs(c));
  }
  const F g = 2 * n * u / (1 - 2 * n * u);
  const F err = 2 * (g * sum_abs + x_err * sum_kabs);
  const F lead = std::fabs(static_cast<F>(p.c[static_cast<std::size_t>(n)]));
  const F spread = std::pow(2 + max_abs / lead, static_cast<F>(n - 1));
  const F num = std::fabs(v) - err;
  RootScreen<F> s;
  s.lb = num > 0 ? num * (1 - 16 * u) / (lead * spread * (1 + 16 * u)) : F(0);
  s.est = dv != 0 ? std::fabs(v / dv) : std::numeric_limits<F>::infinity();
  return s;
}

template <class F>
F to_float_up(const BigRat& v) {
  const double d = std::nextafter(std::nextafter(v.get_d(), HUGE_VAL), HUGE_VAL);
  return static_cast<F>(d);
}

inline constexpr std::size_t kConfirmFirst = 32;

template <class F>
std::vector<std::uint64_t> algebraic_survivors(const CandidateSpace& space, const XiSource& xi, unsigned threads,
                                               long bits) {
  // xi to 64 fractional bits; the conversion to F loses at most 2^-53 relative
  const RatInterval xr = xi.dyadic(72);
  const F x = static_cast<F>(SimulScreen<std::uint64_t>::to_word(xr.lo())) / std::ldexp(F(1), 64);
  const F x_err = 4 * std::numeric_limits<F>::epsilon();

  // pass 1: the most promising candidates by Newton step, ties by index
  using Ranked = std::pair<F, std::uint64_t>;
  auto tops = map_partitions(space.size(), threads, [&](Partition part) {
    std::vector<Ranked> heap;
    for (std::uint64_t k = part.begin; k < part.end; ++k) {
      auto p = space.at(k);
      if (!p) continue;
      heap.emplace_back(screen_root<F>(*p, x, x_err).est, k);
      std::push_heap(heap.begin(), heap.end());
      if (heap.size() > kConfirmFirst) {
        std::pop_heap(heap.begin(), heap.end());
        heap.pop_back();
      }
    }
    return heap;
  });
  std::vector<Ranked> all;
  for (auto& t : tops) all.insert(all.end(), t.begin(), t.end());
  std::sort(all.begin(), all.end());
  if (all.size() > kConfirmFirst) all.resize(kConfirmFirst);
  if (all.empty()) return {};

  // exact distances of those give a proven upper bound on the minimum
  auto first = parallel_map(all.size(), threads, [&](std::uint64_t k) {
    return closest_root_at(space.at(all[k].second)->to_poly(), xi.dyadic(bits + 4), bits).dist.hi();
  });
  const F U = to_float_up<F>(*std::min_element(first.begin(), first.end()));

  // pass 2: everything whose lower bound does not exclude it
  auto kept = map_partitions(space.size(), threads, [&](Partition part) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t k = part.begin; k < part.end; ++k) {
      auto p = space.at(k);
      if (p && screen_root<F>(*p, x, x_err).lb <= U) out.push_back(k);
    }
    return out;
  });
  std::vector<std::uint64_t> out;
  for (auto& v : kept) out.insert(out.end(), v.begin(), v.end());
  for (const auto& r : all) out.push_back(r.second);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Exact minimizer of |xi - alpha| over the roots alpha of the candidates
/// of the given kind with height <= H (H = 0 is treated as 1). Ties go to
/// the smallest polynomial in poly_less order.
inline AlgebraicCandidate best_algebraic(SearchKind kind, const XiSource& xi, long H, const BigRat& precision,
                                         unsigned threads = 1, Screening screening = Screening::High) {
  const CandidateSpace space(kind, std::max(1L, H));
  const long start = std::max(64L, bits_for(precision) + 8);
  const std::vector<std::uint64_t> idx = screening == Screening::High
                                             ? detail::algebraic_survivors<long double>(space, xi, threads, start)
                                             : detail::algebraic_survivors<double>(space, xi, threads, start);
  std::vector<IntPoly> cand;
  for (std::uint64_t k : idx) cand.push_back(space.at(k)->to_poly());
  std::sort(cand.begin(), cand.end(), poly_less);
  std::vector<detail::RootItem> items;
  const auto red = detail::min_reduce(
      cand.size(), [&](std::size_t k, long bits) { return detail::root_item(cand[k], xi, bits); }, items, start,
      precision, threads);
  return detail::finish(cand[red.best], items[red.best], red.tie, precision);
}

inline AlgebraicCandidate best_algebraic(SearchKind kind, const Params& p, long H, const BigRat& precision,
                                         unsigned threads = 1) {
  return best_algebraic(kind, XiSource(p), H, precision, threads);
}

}  // namespace fibcf
