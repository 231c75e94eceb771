#pragma once

// Concrete digit model of an ultrametric field: formal series
//
//   x = sum_{i >= v} d_i t^i,   d_i in [0, p),  p prime,  d_v != 0,
//
// with |x| = p^{-v}.  Arithmetic is digit-wise mod p (characteristic p, no
// carries).  Elements are truncated: digits are known exactly on [v, depth)
// and unknown beyond, which is all the sampling and brute-force checks need.

#include <lfa/field.hpp>
#include <lfa/rng.hpp>

#include <optional>
#include <vector>

namespace lfa {

struct LaurentElement {
  long p = 2;
  // nullopt encodes the zero element (no digits at all below `depth`).
  std::optional<long> valuation;
  // digits[j] is the coefficient of t^{*valuation + j}; digits.front() != 0.
  std::vector<int> digits;
  // coefficients at indices >= depth are unknown
  long depth = 0;

  bool is_zero() const { return !valuation.has_value(); }
};

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace detail {

inline void require_prime(long p) {
  if (!is_prime(p)) throw error("LaurentElement: p must be prime");
}

}  // namespace detail

/// Builds an element from raw digits starting at index `start`; leading and
/// trailing handling is normalized here (leading zeros shift the valuation,
/// an all-zero span is the zero element).
inline LaurentElement laurent_make(long p, long start, std::vector<int> digits,
                                   long depth) {
  detail::require_prime(p);
  if (start + static_cast<long>(digits.size()) > depth)
    throw depth_error("laurent_make: digits extend past depth");
  for (int d : digits)
    if (d < 0 || d >= p) throw error("laurent_make: digit out of range");
  std::size_t lead = 0;
  while (lead < digits.size() && digits[lead] == 0) ++lead;
  LaurentElement x;
  x.p = p;
  x.depth = depth;
  if (lead == digits.size()) return x;  // zero
  x.valuation = start + static_cast<long>(lead);
  x.digits.assign(digits.begin() + static_cast<long>(lead), digits.end());
  return x;
}

/// |x| = p^{-v}; the zero element has norm 0.
template <Scalar S>
S lf_norm(const LaurentElement& x) {
  if (x.is_zero()) return S(0);
  return qpow<S>(x.p, -*x.valuation);
}

/// Digit-wise sum mod p.  Requires equal p and equal depth: adding elements
/// truncated at different depths would fabricate unknown digits.
inline LaurentElement lf_add(const LaurentElement& x, const LaurentElement& y) {
  if (x.p != y.p) throw error("lf_add: mismatched p");
  if (x.depth != y.depth) throw depth_error("lf_add: mismatched depth");
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const long start = std::min(*x.valuation, *y.valuation);
  std::vector<int> sum(static_cast<std::size_t>(x.depth - start), 0);
  for (std::size_t j = 0; j < x.digits.size(); ++j)
    sum[static_cast<std::size_t>(*x.valuation - start) + j] += x.digits[j];
  for (std::size_t j = 0; j < y.digits.size(); ++j) {
    auto& slot = sum[static_cast<std::size_t>(*y.valuation - start) + j];
    slot = (slot + y.digits[j]) % static_cast<int>(x.p);
  }
  return laurent_make(x.p, start, std::move(sum), x.depth);
}

/// Series product mod p, truncated to the digits the inputs determine
/// (negative valuations spend truncation precision: the result is certain
/// only below depth + min(0, v_x, v_y)).
inline LaurentElement lf_mul(const LaurentElement& x, const LaurentElement& y) {
  if (x.p != y.p) throw error("lf_mul: mismatched p");
  if (x.depth != y.depth) throw depth_error("lf_mul: mismatched depth");
  LaurentElement zero;
  zero.p = x.p;
  zero.depth = x.depth;
  if (x.is_zero() || y.is_zero()) return zero;
  const long start = *x.valuation + *y.valuation;
  const long end = x.depth + std::min({0L, *x.valuation, *y.valuation});
  if (start >= end) return zero;  // nothing determined at this truncation
  std::vector<int> prod(static_cast<std::size_t>(end - start), 0);
  for (std::size_t a = 0; a < x.digits.size(); ++a) {
    const long ia = *x.valuation + static_cast<long>(a);
    for (std::size_t b = 0; b < y.digits.size(); ++b) {
      const long i = ia + *y.valuation + static_cast<long>(b);
      if (i >= end) break;
      auto& slot = prod[static_cast<std::size_t>(i - start)];
      slot = (slot + x.digits[a] * y.digits[b]) % static_cast<int>(x.p);
    }
  }
  LaurentElement out = laurent_make(x.p, start, std::move(prod), x.depth);
  out.depth = end;
  return out;
}

/// Sampling region: the ball B^k or the sphere S^k.
struct SampleRegion {
  enum class Kind { ball, sphere };
  Kind kind = Kind::ball;
  long k = 0;
};

/// Draws from the normalized uniform distribution on the region, by uniform
/// independent digits on [k, k + digit_count); a sphere draw forces the
/// digit at k nonzero.  Digits beyond the sampled range stay unknown.
inline LaurentElement sample_haar(long p, const SampleRegion& region,
                                  long digit_count, Rng& rng) {
  detail::require_prime(p);
  if (digit_count < 1) throw error("sample_haar: need at least one digit");
  std::vector<int> digits(static_cast<std::size_t>(digit_count));
  for (auto& d : digits) d = static_cast<int>(rng.below(static_cast<std::uint64_t>(p)));
  if (region.kind == SampleRegion::Kind::sphere)
    digits[0] = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(p - 1)));
  return laurent_make(p, region.k, std::move(digits), region.k + digit_count);
}

}  // namespace lfa
