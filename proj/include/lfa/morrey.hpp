#pragma once

// The phi-weighted Morrey norm of a radial profile:
//
//   ||f|| = sup_k phi(k) ( q^k W_k )^{1/r},   W_k = int_{B^k} |f|^r |y|^alpha dy.
//
// For window-plus-geometric-tail profiles the supremand is, outside a finite
// range of k, a sum of at most two geometric terms in k, so the supremum is
// decided exactly: either a ray escapes (norm infinite), or the sup is
// attained at an enumerated candidate, or it is the k -> -inf limit of a
// plateau (reported through argmax_at_minus_infinity).

#include <lfa/phi.hpp>
#include <lfa/radial.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace lfa {

struct MorreyParams {
  FieldParams field;
  Real r = 2;
  Real alpha = 1;
  PhiSpec phi;
};

inline void validate(const MorreyParams& p) {
  validate(p.field);
  if (!(p.r >= 1)) throw error("MorreyParams: r must be at least 1");
  if (!(p.alpha >= 0)) throw error("MorreyParams: alpha must be nonnegative");
}

struct NormResult {
  bool finite = true;
  Real value = 0;
  // attaining k when the sup is attained at a finite scale; empty when the
  // norm is infinite or the sup is (only) approached as k -> -inf
  std::optional<long> argmax;
  bool argmax_at_minus_infinity = false;
};

/// sup_k phi(k) (q^k W_k)^{1/r} with exact ray analysis; see file comment.
/// Throws not_in_space_error when W_k itself diverges for every k (upper
/// tail at or above the integrability boundary).
template <Scalar S>
NormResult morrey_norm(const RadialFunction<S>& f0, const MorreyParams& P) {
  validate(P);
  const RadialFunction<Real> f = to_real_function(f0);
  if (f.is_zero()) return {true, 0, {}, false};
  const long q = P.field.q;
  const Real r = P.r, alpha = P.alpha;
  const Real qr = static_cast<Real>(q);

  if (const auto& t = f.upper_tail()) {
    const Real rho = std::pow(std::abs(t->sigma), r) * std::pow(qr, -(alpha + 1));
    if (detail::side_of_one(rho) >= 0)
      throw not_in_space_error("morrey_norm: ball integrals diverge (sigma+^r >= q^(alpha+1))");
  }

  const NormResult infinite{false, std::numeric_limits<Real>::infinity(), {}, false};

  // q^k W_k and phi both follow a single law outside [A, B]
  const long A = std::min({f.lo(), P.phi.first_breakpoint(), 0L}) - 2;
  const long B = std::max({f.hi(), P.phi.last_breakpoint(), 0L}) + 2;

  auto supremand_r = [&](long k) {
    const Real w = weighted_ball_integral(f, k, r, alpha, P.field);
    return std::pow(phi_eval(P.phi, q, k), r) * std::pow(qr, static_cast<Real>(k)) * w;
  };

  std::vector<long> candidates;
  for (long k = A; k <= B; ++k) candidates.push_back(k);

  // ray k > B: supremand^r = const * (q^{1 - r beta+} rho+)^k
  if (const auto& t = f.upper_tail()) {
    const Real rho = std::pow(std::abs(t->sigma), r) * std::pow(qr, -(alpha + 1));
    const Real ray = std::pow(qr, 1 - r * P.phi.beta_right()) * rho;
    switch (detail::side_of_one(ray)) {
      case 1:
        return infinite;
      case 0:
      case -1:
        candidates.push_back(B + 1);  // constant or decreasing ray: first point suffices
    }
  }

  // ray k < A: supremand^r = cL^r (P u^k + Q v^k); decide escape, the -inf
  // limit, and any interior maximum of the mixed-sign combination
  std::optional<Real> lower_limit;
  {
    const Real u = std::pow(qr, 1 - r * P.phi.beta_left());
    const Real cLr = std::pow(P.phi.segments().front().c, r);
    const int cu = detail::side_of_one(u);
    auto push_probes = [&](Real k_star) {
      if (!std::isfinite(static_cast<double>(k_star))) return;
      const long kc = static_cast<long>(std::floor(static_cast<double>(k_star)));
      for (long k = kc - 2; k <= kc + 2; ++k)
        if (k < A) candidates.push_back(k);
    };
    if (!f.lower_tail()) {
      const Real w_all = weighted_ball_integral(f, A, r, alpha, P.field);
      if (cu < 0) return infinite;           // u^k escapes as k -> -inf
      if (cu == 0) lower_limit = cLr * w_all;  // constant ray
      // cu > 0: decreasing toward -inf, the ray max is at A (enumerated)
    } else {
      const auto& t = *f.lower_tail();
      const Real rho = std::pow(std::abs(t.sigma), r) * std::pow(qr, -(alpha + 1));
      const Real d = (1 - 1 / qr) * std::pow(std::abs(t.c), r);
      const Real w0 = weighted_ball_integral(f, f.lo(), r, alpha, P.field);
      const int crho = detail::side_of_one(rho);
      if (crho == 0) {
        // W_k grows linearly: only a strictly decaying u^k keeps the sup finite
        if (cu <= 0) return infinite;
        push_probes(static_cast<Real>(f.lo()) + w0 / d - 1 / std::log(u));
      } else {
        const Real Qc = d / (1 - rho);
        Real Pc = w0 - Qc * std::pow(rho, static_cast<Real>(f.lo()));
        if (std::abs(Pc) <= 1e-13L * (w0 + std::abs(Qc) * std::pow(rho, static_cast<Real>(f.lo()))))
          Pc = 0;  // window continues the tail law exactly
        const Real v = u * rho;
        const int cv = detail::side_of_one(v);
        if ((Pc > 0 && cu < 0) || (Qc > 0 && cv < 0)) return infinite;
        const Real lim = cLr * ((cu == 0 ? Pc : Real(0)) + (cv == 0 ? Qc : Real(0)));
        if (lim > 0) lower_limit = lim;
        if (Pc != 0 && ((Pc > 0) != (Qc > 0)) && cu != 0 && cv != 0) {
          const Real arg = -(Pc * std::log(u)) / (Qc * std::log(v));
          if (arg > 0) push_probes(std::log(arg) / (std::log(v) - std::log(u)));
        }
      }
    }
  }

  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  Real best = -1;
  long best_k = 0;
  for (long k : candidates) {
    const Real t = supremand_r(k);
    if (t > best) {
      best = t;
      best_k = k;
    }
  }
  // a plateau limit ties against the best finite value within rounding
  if (lower_limit && *lower_limit >= best * (1 - 1e-12L))
    return {true, std::pow(*lower_limit, 1 / r), {}, true};
  return {true, std::pow(best, 1 / r), best_k, false};
}

/// Closed upper bound for ||chi_{B^eta}|| valid for every profile in the
/// admissible class with constant C_class:
///
///   C_class (q^eta w_alpha(B^eta))^{1/r} max(1, q^{-eta/r}).
///
/// Throws when phi fails the class test.
inline Real char_ball_norm_bound(long eta, const MorreyParams& P) {
  validate(P);
  const auto cert = phi_class_check(P.phi, P.field.q, P.r);
  if (!cert.in_class)
    throw not_in_space_error("char_ball_norm_bound: phi is not admissible (" + cert.violation +
                             ")");
  const Real q = static_cast<Real>(P.field.q);
  const Real w = weighted_ball_measure<Real>(P.field, eta, P.alpha, true);
  const Real core = std::pow(std::pow(q, static_cast<Real>(eta)) * w, 1 / P.r);
  return cert.c_class * core * std::max(Real(1), std::pow(q, -static_cast<Real>(eta) / P.r));
}

/// Membership criterion for max(1, |y|)^{-n} under the q^{-k/r} profile:
/// finite norm exactly when n > (alpha + 1)/r.
inline bool bracket_space_criterion(Real n, Real r, Real alpha) {
  return n > (alpha + 1) / r;
}

}  // namespace lfa
