#pragma once

// Growth profiles phi(k) = c_i q^{-beta_i k}, piecewise in k, and the two
// certificates attached to them:
//
//  * membership in the admissible class for exponent r: phi bounded on
//    k >= 0 and phi(k) q^{k/r} bounded on k < 0, with the smallest bound
//    C_class and an attaining witness;
//  * submultiplicativity phi(s+t) <= C phi(s) phi(t), decided through
//    g(k) = -log_q phi(k): the deficit g(s)+g(t)-g(s+t) is piecewise linear,
//    bounded above iff the outermost slopes satisfy beta- >= beta+, and its
//    supremum is attained on an explicit finite box around the breakpoints.

#include <lfa/numeric.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace lfa {

struct PhiSegment {
  // nullopt start means the segment extends to -inf (first segment only)
  std::optional<long> start;
  Real c = 1;
  Real beta = 0;
};

class PhiSpec {
 public:
  explicit PhiSpec(std::vector<PhiSegment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw error("PhiSpec: needs at least one segment");
    if (segments_.front().start.has_value())
      throw error("PhiSpec: first segment must extend to -inf");
    for (std::size_t i = 1; i < segments_.size(); ++i) {
      if (!segments_[i].start.has_value())
        throw error("PhiSpec: only the first segment may extend to -inf");
      if (i >= 2 && *segments_[i].start <= *segments_[i - 1].start)
        throw error("PhiSpec: segment starts must increase");
    }
    for (const auto& s : segments_)
      if (!(s.c > 0) || !std::isfinite(static_cast<double>(s.c)) ||
          !std::isfinite(static_cast<double>(s.beta)))
        throw error("PhiSpec: coefficients must be positive and finite");
  }

  const std::vector<PhiSegment>& segments() const { return segments_; }

  const PhiSegment& segment_at(long k) const {
    std::size_t i = segments_.size();
    while (i > 1 && *segments_[i - 1].start > k) --i;
    return segments_[i - 1];
  }

  Real beta_left() const { return segments_.front().beta; }
  Real beta_right() const { return segments_.back().beta; }

  /// First and last breakpoint (0 when the profile is a single power).
  long first_breakpoint() const {
    return segments_.size() > 1 ? *segments_[1].start : 0;
  }
  long last_breakpoint() const {
    return segments_.size() > 1 ? *segments_.back().start : 0;
  }

 private:
  std::vector<PhiSegment> segments_;
};

inline Real phi_eval(const PhiSpec& phi, long q, long k) {
  const auto& s = phi.segment_at(k);
  return s.c * std::pow(static_cast<Real>(q), -s.beta * static_cast<Real>(k));
}

/// phi(k) = q^{-k/r}: the profile whose norm is the weighted Lebesgue norm.
inline PhiSpec phi_lebesgue(Real r) {
  if (!(r >= 1)) throw error("phi_lebesgue: r must be at least 1");
  return PhiSpec({{std::nullopt, 1, 1 / r}});
}

/// phi(k) = q^{-k/t}: central profile with its own exponent t.
inline PhiSpec phi_central(Real t) {
  if (!(t > 0)) throw error("phi_central: t must be positive");
  return PhiSpec({{std::nullopt, 1, 1 / t}});
}

/// phi(k) = min(1, q^{-k/r}): the extremal admissible profile.  It is in
/// the class with constant 1 but is not submultiplicative.
inline PhiSpec phi_envelope(Real r) {
  if (!(r >= 1)) throw error("phi_envelope: r must be at least 1");
  return PhiSpec({{std::nullopt, 1, 0}, {0, 1, 1 / r}});
}

struct PhiClassCert {
  bool in_class = false;
  Real c_class = std::numeric_limits<Real>::infinity();
  long witness_k = 0;  // where the class ratio attains c_class
  std::string violation;
};

/// Decides membership in the admissible class for exponent r and computes
/// the smallest constant.  The class ratio (phi(k) for k >= 0, phi(k)q^{k/r}
/// for k < 0) is geometric on each piece, so its supremum is attained at a
/// breakpoint-adjacent k; membership itself only depends on the outer
/// slopes: beta+ >= 0 and beta- <= 1/r.
inline PhiClassCert phi_class_check(const PhiSpec& phi, long q, Real r) {
  if (q < 2) throw error("phi_class_check: q must be at least 2");
  if (!(r >= 1)) throw error("phi_class_check: r must be at least 1");
  PhiClassCert cert;
  if (phi.beta_right() < 0) {
    cert.violation = "phi grows as k -> +inf (beta+ < 0)";
    return cert;
  }
  if (phi.beta_left() > 1 / r) {
    cert.violation = "phi(k) q^{k/r} grows as k -> -inf (beta- > 1/r)";
    return cert;
  }
  cert.in_class = true;
  auto ratio = [&](long k) {
    const Real p = phi_eval(phi, q, k);
    return k >= 0 ? p : p * std::pow(static_cast<Real>(q), static_cast<Real>(k) / r);
  };
  cert.c_class = -1;
  for (long k = std::min(phi.first_breakpoint(), 0L) - 2;
       k <= std::max(phi.last_breakpoint(), 0L) + 2; ++k) {
    const Real v = ratio(k);
    if (v > cert.c_class) {
      cert.c_class = v;
      cert.witness_k = k;
    }
  }
  return cert;
}

struct PhiSubmultCert {
  bool submultiplicative = false;
  Real c_sm = std::numeric_limits<Real>::infinity();
  long witness_s = 0, witness_t = 0;  // deficit maximizer, or escape direction
  std::string violation;
};

/// Decides phi(s+t) <= C phi(s) phi(t) and computes the smallest C.
///
/// With g(k) = -log_q phi(k), the deficit d(s,t) = g(s)+g(t)-g(s+t) is
/// bounded above iff beta- >= beta+.  Sliding moves that never decrease d
/// (shifting one variable when it and s+t sit outside the breakpoint hull,
/// or shifting s and t oppositely at fixed s+t) bring some maximizer into
/// the box [m - W - 2, M + W + 2]^2, where [m, M] is the breakpoint hull
/// and W = M - m, so enumerating that box is exact.
inline PhiSubmultCert phi_submult_check(const PhiSpec& phi, long q) {
  if (q < 2) throw error("phi_submult_check: q must be at least 2");
  const Real lq = std::log(static_cast<Real>(q));
  auto g = [&](long k) {
    const auto& s = phi.segment_at(k);
    return s.beta * static_cast<Real>(k) - std::log(s.c) / lq;
  };
  auto deficit = [&](long s, long t) { return g(s) + g(t) - g(s + t); };
  PhiSubmultCert cert;
  const Real bl = phi.beta_left(), br = phi.beta_right();
  if (bl < br) {
    cert.violation = "deficit escapes along s = -n, t = n (beta- < beta+)";
    // a concrete scale where the defining inequality fails by a factor > 1e6
    const Real base = std::abs(deficit(-1, 1)) + std::abs(deficit(1, -1));
    const long n = 2 + static_cast<long>((6 / std::log10(static_cast<Real>(q)) + 2 * base + 2) /
                                         (br - bl));
    cert.witness_s = -n;
    cert.witness_t = n;
    return cert;
  }
  cert.submultiplicative = true;
  const long m = std::min(phi.first_breakpoint(), 0L);
  const long M = std::max(phi.last_breakpoint(), 0L);
  const long pad = (M - m) + 2;
  Real best = -std::numeric_limits<Real>::infinity();
  for (long s = m - pad; s <= M + pad; ++s) {
    for (long t = m - pad; t <= M + pad; ++t) {
      const Real d = deficit(s, t);
      if (d > best) {
        best = d;
        cert.witness_s = s;
        cert.witness_t = t;
      }
    }
  }
  cert.c_sm = std::pow(static_cast<Real>(q), best);
  return cert;
}

}  // namespace lfa
