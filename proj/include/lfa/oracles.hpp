#pragma once

// Independent partial-sum oracles.
//
// These sum defining series term by term, with the remainder controlled by
// the series' own geometric ratio.  They deliberately do not call the
// closed-form evaluators they are used to cross-check.

#include <lfa/field.hpp>

namespace lfa {

/// A truncated series value together with an exact expression for the
/// remaining tail (the tail is itself a geometric series, summed in closed
/// form from the first omitted term).
template <Scalar S>
struct PartialSum {
  S value{};      // sum of the first `terms` terms
  S remainder{};  // exact value of everything after them
  long terms = 0;
};

/// Term-by-term evaluation of sum_{l >= k} q^{-l alpha} |S^l|.
///
/// Successive terms shrink by the exact factor q^{-(alpha+1)}, so the
/// omitted tail equals next_term / (1 - q^{-(alpha+1)}).
template <Scalar S, class A>
PartialSum<S> oracle_weighted_measure(const FieldParams& fp, long k, A alpha,
                                      long terms) {
  validate(fp);
  if (terms < 1) throw error("oracle_weighted_measure: need at least one term");
  const S unit = sphere_measure<S>(fp, 0);  // (1 - 1/q)
  S ratio;                                  // q^{-(alpha+1)}
  if constexpr (std::is_integral_v<A>) {
    ratio = qpow<S>(fp.q, -(static_cast<long>(alpha) + 1));
  } else {
    static_assert(std::floating_point<S>,
                  "a floating alpha requires a floating scalar type");
    ratio = qpow_e<S>(fp.q, -(alpha + A(1)));
  }
  S term;  // current term q^{-l(alpha+1)} (1 - 1/q), starting at l = k
  if constexpr (std::is_integral_v<A>) {
    term = unit * qpow<S>(fp.q, -k * (static_cast<long>(alpha) + 1));
  } else {
    term = unit * qpow_e<S>(fp.q, -k * (alpha + A(1)));
  }
  PartialSum<S> out;
  out.terms = terms;
  for (long i = 0; i < terms; ++i) {
    out.value += term;
    term *= ratio;
  }
  out.remainder = term / (S(1) - ratio);
  return out;
}

}  // namespace lfa
