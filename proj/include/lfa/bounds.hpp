#pragma once

// Closed-form operator norm constants.
//
// For a degree -1 kernel profile k_j the induced operator satisfies
//
//   ||T f|| <= C_sm(phi) C_class(phi) C(k; r, alpha) ||f||
//
// on the weighted space with admissible phi, where
//
//   C(k; r, alpha) = (1 - 1/q) [ |k_0|
//                    + sum_{l>=1} |k_l|    q^{l (1 - alpha/r)}
//                    + sum_{l>=1} |k_{-l}| q^{l ((alpha+1)/r - 1)} ].
//
// The weights are the worst-case norm growth of the index shift by j, so
// each term is a dilation bound applied to one shell of the kernel.  For a
// profile given as window plus geometric descriptors both rays of the
// series have closed forms; bounding descriptors still give a valid (if
// slightly larger) constant because they dominate |k_j|.

#include <lfa/kernel.hpp>
#include <lfa/morrey.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace lfa {

enum class BoundMode { closed_form, series };

struct BoundResult {
  Real value = std::numeric_limits<Real>::infinity();
  bool finite = false;
  BoundMode mode = BoundMode::series;
  long terms = 0;        // explicitly summed profile shells
  Real tail_bound = 0;   // portion of value contributed by the descriptor rays
  std::string condition; // requirement for finiteness
};

/// Worst-case norm growth of the index shift by l: the factor D(l) with
/// ||f(. shifted by l)|| <= D(l) ||f|| on the Lebesgue-weight space,
/// q^{l(1+alpha)/r} for l > 0 and q^{l alpha/r} for l <= 0.
inline Real dilation_bound(const FieldParams& fp, Real r, Real alpha, long l) {
  validate(fp);
  if (!(r >= 1) || !(alpha >= 0))
    throw error("dilation_bound: need r >= 1 and alpha >= 0");
  const Real qr = static_cast<Real>(fp.q);
  const Real e = l > 0 ? static_cast<Real>(l) * (1 + alpha) / r
                       : static_cast<Real>(l) * alpha / r;
  return std::pow(qr, e);
}

/// The series constant C(k; r, alpha) for an arbitrary profile: explicit
/// window sum plus closed-form descriptor rays.  Divergent rays make the
/// result infinite; `condition` states what finiteness requires.
template <Scalar S>
BoundResult main_bound_constant(const KernelSpec<S>& K, Real r, Real alpha) {
  if (!(r >= 1) || !(alpha >= 0))
    throw error("main_bound_constant: need r >= 1 and alpha >= 0");
  const Real qr = static_cast<Real>(K.field().q);
  const Real unit = 1 - 1 / qr;
  BoundResult out;
  out.mode = BoundMode::series;

  std::string cond;
  const Real x = K.upper_tail()
                     ? to_real(K.upper_tail()->sigma) * std::pow(qr, 1 - alpha / r)
                     : Real(0);
  const Real z = K.lower_tail()
                     ? std::pow(qr, (alpha + 1) / r - 1) / to_real(K.lower_tail()->sigma)
                     : Real(0);
  if (K.upper_tail()) cond = "q^(1 - alpha/r) * sigma+ < 1";
  if (K.lower_tail()) {
    if (!cond.empty()) cond += " and ";
    cond += "q^((alpha+1)/r - 1) / sigma- < 1";
  }
  if (cond.empty()) cond = "always finite";
  out.condition = cond;
  if ((K.upper_tail() && detail::side_of_one(x) >= 0) ||
      (K.lower_tail() && detail::side_of_one(z) >= 0))
    return out;

  // shift weight (1 - 1/q) q^j D(-j); for j between the window and zero the
  // descriptor values still carry mixed-branch weights, so sum those shells
  // explicitly and start the closed rays clear of the branch point
  auto weight = [&](long j) { return unit * std::pow(qr, static_cast<Real>(j)) *
                                     dilation_bound(K.field(), r, alpha, -j); };
  Real total = 0;
  const long lo = std::min(K.lo(), 0L), hi = std::max(K.hi(), 0L);
  for (long j = lo; j <= hi; ++j) {
    total += to_real(K.profile_abs_bound(j)) * weight(j);
    ++out.terms;
  }
  Real rays = 0;
  if (K.upper_tail())
    rays += unit * to_real(abs_val(K.upper_tail()->c)) * std::pow(x, static_cast<Real>(hi + 1)) /
            (1 - x);
  if (K.lower_tail())
    rays += unit * to_real(abs_val(K.lower_tail()->c)) * std::pow(z, static_cast<Real>(1 - lo)) /
            (1 - z);
  out.value = total + rays;
  out.tail_bound = rays;
  out.finite = true;
  return out;
}

/// Closed form for the flat one-sided profile (1 for j <= 0):
/// (1 - 1/q) / (1 - u) with u = q^{(alpha+1)/r - 1}.
inline BoundResult hardy_bound_constant(const FieldParams& fp, Real r, Real alpha) {
  validate(fp);
  if (!(r >= 1) || !(alpha >= 0))
    throw error("hardy_bound_constant: need r >= 1 and alpha >= 0");
  BoundResult out;
  out.mode = BoundMode::closed_form;
  out.condition = "alpha + 1 < r";
  const Real qr = static_cast<Real>(fp.q);
  const Real u = std::pow(qr, (alpha + 1) / r - 1);
  if (detail::side_of_one(u) >= 0) return out;
  out.value = (1 - 1 / qr) / (1 - u);
  out.finite = true;
  return out;
}

/// Closed form for the two-sided profile min(1, q^{-j}):
/// (1 - 1/q) [1 + u/(1-u) + v/(1-v)], u = q^{(alpha+1)/r - 1}, v = q^{-alpha/r}.
inline BoundResult hlp_bound_constant(const FieldParams& fp, Real r, Real alpha) {
  validate(fp);
  if (!(r >= 1) || !(alpha >= 0))
    throw error("hlp_bound_constant: need r >= 1 and alpha >= 0");
  BoundResult out;
  out.mode = BoundMode::closed_form;
  out.condition = "alpha > 0 and alpha + 1 < r";
  const Real qr = static_cast<Real>(fp.q);
  const Real u = std::pow(qr, (alpha + 1) / r - 1);
  const Real v = std::pow(qr, -alpha / r);
  if (detail::side_of_one(u) >= 0 || detail::side_of_one(v) >= 0) return out;
  out.value = (1 - 1 / qr) * (1 + u / (1 - u) + v / (1 - v));
  out.finite = true;
  return out;
}

/// Full operator norm bound C_sm C_class C(k; r, alpha) for the given
/// space.  Requires phi to certify as submultiplicative and admissible;
/// throws not_in_space_error with the certificate's explanation otherwise.
template <Scalar S>
BoundResult operator_norm_bound(const KernelSpec<S>& K, const MorreyParams& P) {
  validate(P);
  if (K.field().q != P.field.q)
    throw error("operator_norm_bound: kernel and space use different fields");
  const auto sub = phi_submult_check(P.phi, P.field.q);
  if (!sub.submultiplicative)
    throw not_in_space_error("operator_norm_bound: " + sub.violation);
  const auto cls = phi_class_check(P.phi, P.field.q, P.r);
  if (!cls.in_class) throw not_in_space_error("operator_norm_bound: " + cls.violation);
  BoundResult out = main_bound_constant(K, P.r, P.alpha);
  const Real scale = sub.c_sm * cls.c_class;
  out.value *= scale;
  out.tail_bound *= scale;
  return out;
}

}  // namespace lfa
