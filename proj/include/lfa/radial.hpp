#pragma once

// Radial profiles on the valuation lattice.
//
// A radial function is determined by its value a_l on each sphere S^l
// (|y| = q^{-l}).  The representation is a finite window [lo, hi] of stored
// values plus an optional geometric tail a_l = c sigma^l on each side; a
// missing tail means the function vanishes there.  This class is closed
// under addition, scaling, and dilation, and admits closed-form integrals,
// which is what makes every check in this library exactly computable.

#include <lfa/field.hpp>

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace lfa {

template <Scalar S>
struct GeometricTail {
  S c{};
  S sigma{};  // sigma > 0

  friend bool operator==(const GeometricTail&, const GeometricTail&) = default;
};

namespace detail {

// sum_{l=a}^{b} x^l for x > 0, a <= b
template <Scalar S>
S geom_range(const S& x, long a, long b) {
  if (x == S(1)) return S(b - a + 1);
  return (pow_int(x, a) - pow_int(x, b + 1)) / (S(1) - x);
}

// sum_{l=a}^{inf} x^l; requires 0 < x < 1
template <Scalar S>
S geom_upper(const S& x, long a) {
  return pow_int(x, a) / (S(1) - x);
}

// sum_{l=-inf}^{b} x^l; requires x > 1
template <Scalar S>
S geom_lower(const S& x, long b) {
  return pow_int(x, b + 1) / (x - S(1));
}

}  // namespace detail

template <Scalar S>
class RadialFunction {
 public:
  using Tail = GeometricTail<S>;

  /// Window starting at `lo` with one value per sphere; tails hold beyond.
  RadialFunction(long lo, std::vector<S> values, std::optional<Tail> lower = {},
                 std::optional<Tail> upper = {})
      : lo_(lo), values_(std::move(values)), lower_(std::move(lower)), upper_(std::move(upper)) {
    if (values_.empty()) throw error("RadialFunction: window must be nonempty");
    normalize_tail(lower_);
    normalize_tail(upper_);
  }

  static RadialFunction zero() { return RadialFunction(0, {S(0)}); }

  long lo() const { return lo_; }
  long hi() const { return lo_ + static_cast<long>(values_.size()) - 1; }
  const std::vector<S>& values() const { return values_; }
  const std::optional<Tail>& lower_tail() const { return lower_; }
  const std::optional<Tail>& upper_tail() const { return upper_; }

  /// Value on the sphere S^m, for any m.
  S eval(long m) const {
    if (m < lo_) return lower_ ? lower_->c * pow_int(lower_->sigma, m) : S(0);
    if (m > hi()) return upper_ ? upper_->c * pow_int(upper_->sigma, m) : S(0);
    return values_[static_cast<std::size_t>(m - lo_)];
  }

  bool is_zero() const {
    if (lower_ || upper_) return false;
    return std::all_of(values_.begin(), values_.end(), [](const S& v) { return v == S(0); });
  }

  RadialFunction scaled(const S& s) const {
    if (s == S(0)) return zero();
    RadialFunction out = *this;
    for (auto& v : out.values_) v *= s;
    if (out.lower_) out.lower_->c *= s;
    if (out.upper_) out.upper_->c *= s;
    return out;
  }

  /// Drops window edge values already implied by the adjacent tail (or equal
  /// to zero with no tail), giving a canonical representative.
  RadialFunction simplified() const {
    if (is_zero()) return zero();
    RadialFunction out = *this;
    auto implied_low = [&](long m) {
      return out.lower_ ? out.lower_->c * pow_int(out.lower_->sigma, m) : S(0);
    };
    auto implied_high = [&](long m) {
      return out.upper_ ? out.upper_->c * pow_int(out.upper_->sigma, m) : S(0);
    };
    while (out.values_.size() > 1 && out.values_.front() == implied_low(out.lo_)) {
      out.values_.erase(out.values_.begin());
      ++out.lo_;
    }
    while (out.values_.size() > 1 && out.values_.back() == implied_high(out.hi())) {
      out.values_.pop_back();
    }
    return out;
  }

 private:
  static void normalize_tail(std::optional<Tail>& t) {
    if (!t) return;
    if (t->sigma <= S(0)) throw tail_error("RadialFunction: tail ratio must be positive");
    if (t->c == S(0)) t.reset();
  }

  long lo_;
  std::vector<S> values_;
  std::optional<Tail> lower_, upper_;
};

/// Pointwise sum.  Tails on the same side must share their ratio (or one of
/// them be absent): two distinct geometric laws on one side cannot be merged
/// into this representation no matter how far the window is widened.
template <Scalar S>
RadialFunction<S> add(const RadialFunction<S>& f, const RadialFunction<S>& g) {
  using Tail = GeometricTail<S>;
  auto merge = [](const std::optional<Tail>& a, const std::optional<Tail>& b,
                  const char* side) -> std::optional<Tail> {
    if (!a) return b;
    if (!b) return a;
    if (a->sigma != b->sigma)
      throw tail_error(std::string("add: incompatible ") + side +
                       " tails (distinct ratios; widening the window cannot reconcile them)");
    return Tail{a->c + b->c, a->sigma};
  };
  const long lo = std::min(f.lo(), g.lo());
  const long hi = std::max(f.hi(), g.hi());
  std::vector<S> vals;
  vals.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long m = lo; m <= hi; ++m) vals.push_back(f.eval(m) + g.eval(m));
  return RadialFunction<S>(lo, std::move(vals), merge(f.lower_tail(), g.lower_tail(), "lower"),
                           merge(f.upper_tail(), g.upper_tail(), "upper"));
}

/// f(tau x) for |tau| = q^{-l}: shifts the profile by l.
template <Scalar S>
RadialFunction<S> dilate(const RadialFunction<S>& f, long l) {
  using Tail = GeometricTail<S>;
  auto shift = [&](const std::optional<Tail>& t) -> std::optional<Tail> {
    if (!t) return {};
    return Tail{t->c * pow_int(t->sigma, l), t->sigma};
  };
  std::vector<S> vals = f.values();
  return RadialFunction<S>(f.lo() - l, std::move(vals), shift(f.lower_tail()),
                           shift(f.upper_tail()));
}

/// Same profile with all data converted to the floating backend.
template <Scalar S>
RadialFunction<Real> to_real_function(const RadialFunction<S>& f) {
  if constexpr (std::is_same_v<S, Real>) {
    return f;
  } else {
    std::vector<Real> vals;
    vals.reserve(f.values().size());
    for (const auto& v : f.values()) vals.push_back(to_real(v));
    auto conv = [](const std::optional<GeometricTail<S>>& t) -> std::optional<GeometricTail<Real>> {
      if (!t) return {};
      return GeometricTail<Real>{to_real(t->c), to_real(t->sigma)};
    };
    return RadialFunction<Real>(f.lo(), std::move(vals), conv(f.lower_tail()),
                                conv(f.upper_tail()));
  }
}

/// Exact equality as functions (canonical forms compared component-wise).
template <Scalar S>
bool same_function(const RadialFunction<S>& f, const RadialFunction<S>& g) {
  // window placement is not canonical: a window value implied by a tail can
  // sit on either side of the window boundary, so compare semantically
  auto a = f.simplified(), b = g.simplified();
  if (a.lower_tail() != b.lower_tail() || a.upper_tail() != b.upper_tail()) return false;
  const long lo = std::min(a.lo(), b.lo());
  const long hi = std::max(a.hi(), b.hi());
  for (long m = lo; m <= hi; ++m)
    if (a.eval(m) != b.eval(m)) return false;
  return true;
}

/// Indicator of the ball B^eta: 1 on spheres l >= eta.
template <Scalar S>
RadialFunction<S> char_ball(long eta) {
  return RadialFunction<S>(eta, {S(1)}, {}, GeometricTail<S>{S(1), S(1)});
}

/// Indicator of the single sphere S^k.
template <Scalar S>
RadialFunction<S> char_sphere(long k) {
  return RadialFunction<S>(k, {S(1)});
}

/// max(1, |y|)^{-N}: value 1 on |y| <= 1, |y|^{-N} = q^{lN} on spheres l < 0.
template <Scalar S, class N>
RadialFunction<S> bracket_profile(const FieldParams& fp, N n) {
  validate(fp);
  return RadialFunction<S>(0, {S(1)}, GeometricTail<S>{S(1), qpow_e<S>(fp.q, n)},
                           GeometricTail<S>{S(1), S(1)});
}

/// Integral over the whole field: sum_l a_l |S^l| with closed-form tails.
/// The lower tail needs sigma- > q, the upper sigma+ < q; the boundary
/// ratio is divergent.  Comparisons are exact in the rational backend.
template <Scalar S>
S haar_integral(const RadialFunction<S>& f, const FieldParams& fp) {
  validate(fp);
  const S unit = S(1) - qpow<S>(fp.q, -1);
  S total(0);
  {
    S w = qpow<S>(fp.q, -f.lo());
    const S step = qpow<S>(fp.q, -1);
    for (long m = f.lo(); m <= f.hi(); ++m) {
      total += f.eval(m) * w * unit;
      w *= step;
    }
  }
  if (const auto& t = f.upper_tail()) {
    const S x = t->sigma / S(fp.q);
    if (x >= S(1))
      throw non_integrable_error("haar_integral: upper tail diverges (sigma+ >= q)");
    total += t->c * unit * detail::geom_upper(x, f.hi() + 1);
  }
  if (const auto& t = f.lower_tail()) {
    const S x = t->sigma / S(fp.q);
    if (x <= S(1))
      throw non_integrable_error("haar_integral: lower tail diverges (sigma- <= q)");
    total += t->c * unit * detail::geom_lower(x, f.lo() - 1);
  }
  return total;
}

/// Integral of |f|^r |y|^alpha over the ball B^k:
///
///   W_k = sum_{l >= k} |a_l|^r q^{-l alpha} |S^l|.
///
/// The upper tail needs sigma+^r q^{-(alpha+1)} < 1.  Exponent types R and A
/// select the exact path (both integral) or the floating path.
template <Scalar S, class R, class A>
S weighted_ball_integral(const RadialFunction<S>& f, long k, R r, A alpha,
                         const FieldParams& fp) {
  validate(fp);
  if (r < 1) throw error("weighted_ball_integral: r must be at least 1");
  if (alpha < 0) throw error("weighted_ball_integral: alpha must be nonnegative");
  const S unit = S(1) - qpow<S>(fp.q, -1);
  S qa;  // q^{-(alpha+1)}
  if constexpr (std::is_integral_v<A>) {
    qa = qpow<S>(fp.q, -(static_cast<long>(alpha) + 1));
  } else {
    qa = qpow_e<S>(fp.q, -(alpha + A(1)));
  }
  S total(0);
  if (const auto& t = f.lower_tail(); t && k < f.lo()) {
    const S rho = pow_abs(t->sigma, r) * qa;
    total += unit * pow_abs(t->c, r) * detail::geom_range(rho, k, f.lo() - 1);
  }
  {
    const long start = std::max(k, f.lo());
    S w = pow_int(qa, start);
    for (long l = start; l <= f.hi(); ++l) {
      const S v = f.eval(l);
      if (v != S(0)) total += pow_abs(v, r) * w * unit;
      w *= qa;
    }
  }
  if (const auto& t = f.upper_tail()) {
    const S rho = pow_abs(t->sigma, r) * qa;
    if (rho >= S(1))
      throw non_integrable_error(
          "weighted_ball_integral: upper tail diverges (sigma+^r >= q^(alpha+1))");
    total += unit * pow_abs(t->c, r) * detail::geom_upper(rho, std::max(k, f.hi() + 1));
  }
  return total;
}

/// Integral of |f|^r |y|^alpha over the whole field (the k -> -inf limit of
/// weighted_ball_integral); the lower tail needs sigma-^r q^{-(alpha+1)} > 1.
template <Scalar S, class R, class A>
S weighted_integral(const RadialFunction<S>& f, R r, A alpha, const FieldParams& fp) {
  S total = weighted_ball_integral(f, f.lo(), r, alpha, fp);
  if (const auto& t = f.lower_tail()) {
    S qa;
    if constexpr (std::is_integral_v<A>) {
      qa = qpow<S>(fp.q, -(static_cast<long>(alpha) + 1));
    } else {
      qa = qpow_e<S>(fp.q, -(alpha + A(1)));
    }
    const S rho = pow_abs(t->sigma, r) * qa;
    if (rho <= S(1))
      throw non_integrable_error(
          "weighted_integral: lower tail diverges (sigma-^r <= q^(alpha+1))");
    const S unit = S(1) - qpow<S>(fp.q, -1);
    total += unit * pow_abs(t->c, r) * detail::geom_lower(rho, f.lo() - 1);
  }
  return total;
}

}  // namespace lfa
