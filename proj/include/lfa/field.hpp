#pragma once

// Norm geometry of an ultrametric field with a discrete value group.
//
// The absolute value takes the values q^-k, k in Z.  B^k denotes the closed
// ball {|y| <= q^-k} and S^k the sphere {|y| = q^-k}; Haar measure is
// normalized so |B^0| = 1.  The weighted measure uses the density |y|^alpha.

#include <lfa/numeric.hpp>

namespace lfa {

/// Parameters of the value group: |x| ranges over the powers of q.
struct FieldParams {
  long q = 2;  // q >= 2
};

inline void validate(const FieldParams& fp) {
  if (fp.q < 2) throw error("FieldParams: q must be at least 2");
}

/// |B^k| = q^-k.
template <Scalar S>
S ball_measure(const FieldParams& fp, long k) {
  validate(fp);
  return qpow<S>(fp.q, -k);
}

/// |S^k| = q^-k (1 - 1/q), the gap between B^k and B^{k+1}.
template <Scalar S>
S sphere_measure(const FieldParams& fp, long k) {
  validate(fp);
  return qpow<S>(fp.q, -k) * (S(1) - qpow<S>(fp.q, -1));
}

/// Weighted ball measure: integral of |y|^alpha over B^k equals
///
///   sum_{l >= k} q^{-l alpha} |S^l|  =  (q - 1) q^{alpha - k(alpha+1)} / (q^{alpha+1} - 1).
///
/// Requires alpha > 0; alpha == 0 (plain Haar measure, value q^-k) is
/// accepted only when allow_zero_alpha is set.  The exponent type A selects
/// the exact path (integral alpha) or the floating path.
template <Scalar S, class A>
S weighted_ball_measure(const FieldParams& fp, long k, A alpha,
                        bool allow_zero_alpha = false) {
  validate(fp);
  if (alpha < 0) throw error("weighted_ball_measure: alpha must be nonnegative");
  if (alpha == 0 && !allow_zero_alpha)
    throw error("weighted_ball_measure: alpha == 0 requires allow_zero_alpha");
  if constexpr (std::is_integral_v<A>) {
    const long a = static_cast<long>(alpha);
    S num = S(fp.q - 1) * qpow<S>(fp.q, a - k * (a + 1));
    S den = qpow<S>(fp.q, a + 1) - S(1);
    return num / den;
  } else {
    static_assert(std::floating_point<S>,
                  "a floating alpha requires a floating scalar type");
    S num = S(fp.q - 1) * qpow_e<S>(fp.q, alpha - k * (alpha + 1));
    S den = qpow_e<S>(fp.q, alpha + 1) - S(1);
    return num / den;
  }
}

}  // namespace lfa
