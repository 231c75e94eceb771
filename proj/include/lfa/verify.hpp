#pragma once

// Self-verification harness: every analytic statement the library relies on,
// restated as a runnable check.  Exact identities are checked exactly (or to
// float slack), inequalities are swept over random inputs, and the two
// genuinely statistical checks (digit-model Monte Carlo) compare within three
// combined standard errors and never gate the exact ones.
//
// The suite is deterministic: each randomized check draws from a stream
// derived from the configured seed and its fixed position in the manifest, so
// two runs with the same config produce byte-identical report bodies.  Wall
// times appear only in the CSV rendering, never in the JSON body.

#include <lfa/bounds.hpp>
#include <lfa/laurent.hpp>
#include <lfa/oracles.hpp>
#include <lfa/rng.hpp>
#include <lfa/serialize.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace lfa {

enum class CheckStatus { pass, fail, skip };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "skip";
  }
}

/// One verified statement.  `measured` is the check's summary statistic and
/// is compared against `bound` with slack `tol`; what the statistic means is
/// check-specific and recorded in `detail`.
struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::fail;
  Real measured = 0;
  Real bound = 0;
  Real tol = 0;
  std::uint64_t seed = 0;  // substream seed; 0 for fully deterministic checks
  long ms = 0;             // wall time, kept out of the JSON body
  Json detail;             // deterministic extras (witnesses, probe tables)
  Json repro;              // inputs reproducing a failure; null when passing
};

struct VerifyConfig {
  long q = 2;
  Real r = 2;
  Real alpha = 0.5;
  std::uint64_t seed = 1;
  long mc_samples = 100000;  // digit-model draws per Monte Carlo estimate
  long search_lo = -8;       // witness-search coefficient window
  long search_hi = 8;
  long restarts = 8;
  long iters = 40;
};

inline void validate(const VerifyConfig& cfg) {
  if (cfg.q < 2) throw error("VerifyConfig: q must be at least 2");
  if (!(cfg.r >= 1)) throw error("VerifyConfig: r must be at least 1");
  if (!(cfg.alpha >= 0)) throw error("VerifyConfig: alpha must be nonnegative");
  if (cfg.mc_samples < 1000) throw error("VerifyConfig: need at least 1000 samples");
  if (cfg.search_lo > cfg.search_hi) throw error("VerifyConfig: empty search window");
  if (cfg.restarts < 1 || cfg.iters < 0) throw error("VerifyConfig: bad search budget");
}

struct VerificationReport {
  VerifyConfig config;
  std::vector<CheckResult> checks;
};

/// The fixed manifest: the suite must emit exactly these checks, in this
/// order.  Tests assert completeness against this list.
inline const std::vector<std::string>& required_checks() {
  static const std::vector<std::string> names = {
      "measures.ball_sphere_decomposition",
      "measures.weighted_closed_form",
      "measures.sphere_decomposition_mc",
      "dilation.change_of_variables",
      "dilation.bound_sweep",
      "morrey.lebesgue_collapse",
      "morrey.char_ball_bound",
      "morrey.bracket_membership",
      "phi.class_certificates",
      "phi.submultiplicativity",
      "kernel.homogeneity",
      "kernel.convolution_equivalence",
      "kernel.radialization_mc",
      "bound.operator_norm_inequality",
      "bound.series_vs_closed_form",
      "bound.hlp_finiteness_boundary",
  };
  return names;
}

// ---------------------------------------------------------------------------
// Witness search for the operator-norm inequality

struct SearchParams {
  long lo = -8;  // coefficient window on valuation levels [lo, hi]
  long hi = 8;
  long restarts = 8;
  long iters = 40;
  std::uint64_t seed = 1;
};

struct SearchResult {
  RadialFunction<Real> witness = RadialFunction<Real>::zero();
  Real ratio = 0;
  long evaluations = 0;
};

/// Maximizes ||T f|| / ||f|| over nonnegative coefficient vectors supported
/// on the window, by seeded random restarts plus coordinate-wise
/// multiplicative hill climbing.  Gradient-free on purpose: the objective
/// takes sups and r-th roots and is not smooth where the attaining scale
/// switches.  The clipped unit-ball indicator is always among the starts, so
/// the result never falls below that baseline.  Deterministic given seed.
inline SearchResult empirical_operator_norm(const KernelSpec<Real>& K, const MorreyParams& P,
                                            const SearchParams& sp) {
  validate(P);
  if (sp.lo > sp.hi) throw error("empirical_operator_norm: empty search window");
  if (sp.restarts < 1 || sp.iters < 0) throw error("empirical_operator_norm: bad search budget");
  const std::size_t n = static_cast<std::size_t>(sp.hi - sp.lo + 1);
  SearchResult best;
  auto score = [&](const std::vector<Real>& v) -> Real {
    ++best.evaluations;
    RadialFunction<Real> f(sp.lo, v);
    if (f.is_zero()) return -1;
    try {
      const auto den = morrey_norm(f, P);
      if (!den.finite || !(den.value > 0)) return -1;
      const auto num = morrey_norm(apply_operator(K, f).value, P);
      if (!num.finite) return -1;
      return num.value / den.value;
    } catch (const error&) {
      return -1;  // candidate outside the representable/integrable range
    }
  };
  auto climb = [&](std::vector<Real> v) {
    Real cur = score(v);
    Real step = Real(0.5);
    for (long it = 0; it < sp.iters; ++it) {
      bool improved = false;
      for (std::size_t i = 0; i < n; ++i) {
        for (const Real factor : {Real(1) + step, Real(1) / (Real(1) + step)}) {
          const Real saved = v[i];
          v[i] = saved * factor;
          const Real s = score(v);
          if (s > cur) {
            cur = s;
            improved = true;
          } else {
            v[i] = saved;
          }
        }
      }
      if (!improved) {
        step *= Real(0.5);
        if (step < Real(1e-6)) break;
      }
    }
    if (cur > best.ratio) {
      best.ratio = cur;
      best.witness = RadialFunction<Real>(sp.lo, std::move(v));
    }
  };
  {
    // unit-ball indicator clipped to the window; all-ones if they are disjoint
    std::vector<Real> v(n, Real(0));
    bool any = false;
    for (long m = std::max(0L, sp.lo); m <= sp.hi; ++m) {
      v[static_cast<std::size_t>(m - sp.lo)] = 1;
      any = true;
    }
    if (!any) v.assign(n, Real(1));
    climb(std::move(v));
  }
  Rng rng(sp.seed);
  for (long r = 1; r < sp.restarts; ++r) {
    std::vector<Real> v(n);
    for (auto& x : v) x = Real(0.05) + static_cast<Real>(rng.unit());
    climb(std::move(v));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Digit-model Monte Carlo: sphere averaging of non-radial functions

/// A function on the digit model with declared support: eval may be digit
/// dependent (non-radial) but must vanish on spheres outside
/// [support_lo, support_hi].
struct DigitFunction {
  long p = 2;
  long support_lo = 0;
  long support_hi = 0;
  std::string label;  // identifies the handle in reports
  std::function<Real(const LaurentElement&)> eval;
};

struct RadializeEstimate {
  RadialFunction<Real> mean = RadialFunction<Real>::zero();
  std::vector<Real> std_error;  // per level, aligned with mean.lo()
  long samples_per_sphere = 0;
};

/// Monte Carlo estimate of the sphere average on each support level, with
/// the standard error of each mean.
inline RadializeEstimate radialize(const DigitFunction& f, long samples_per_sphere, Rng& rng,
                                   long digit_count = 12) {
  if (!f.eval) throw error("radialize: function handle is empty");
  if (f.support_lo > f.support_hi) throw error("radialize: support window is empty");
  if (samples_per_sphere < 100)
    throw error("radialize: need at least 100 samples per sphere");
  std::vector<Real> means, errs;
  for (long l = f.support_lo; l <= f.support_hi; ++l) {
    Real acc = 0, acc2 = 0;
    for (long i = 0; i < samples_per_sphere; ++i) {
      const auto x = sample_haar(f.p, {SampleRegion::Kind::sphere, l}, digit_count, rng);
      const Real y = f.eval(x);
      acc += y;
      acc2 += y * y;
    }
    const Real m = acc / Real(samples_per_sphere);
    const Real var = std::max(Real(0), acc2 / Real(samples_per_sphere) - m * m);
    means.push_back(m);
    errs.push_back(std::sqrt(var / Real(samples_per_sphere)));
  }
  return {RadialFunction<Real>(f.support_lo, std::move(means)), std::move(errs),
          samples_per_sphere};
}

namespace detail {

inline Real rel_dev(Real a, Real b) {
  const Real scale = std::max({std::fabs(a), std::fabs(b), Real(1e-300)});
  return std::fabs(a - b) / scale;
}

inline RadialFunction<Real> random_window_function(Rng& rng, long lo_min, long hi_max) {
  const long lo = rng.range(lo_min, hi_max);
  const long hi = rng.range(lo, hi_max);
  std::vector<Real> vals;
  vals.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long m = lo; m <= hi; ++m) vals.push_back(static_cast<Real>(rng.unit()));
  // keep the function (and its norm) away from zero
  vals[static_cast<std::size_t>(rng.range(0, hi - lo))] += Real(0.5);
  return RadialFunction<Real>(lo, std::move(vals));
}

}  // namespace detail

/// Checks the radialization identities by Monte Carlo:
///  (i)   T f at probe radii, estimated directly from independent per-sphere
///        integral estimates, agrees with the operator applied to the sphere
///        averages within 3 combined standard errors;
///  (ii)  the norm never grows under sphere averaging.  Both sides of (ii)
///        are computed from one shared set of draws, which makes the
///        inequality a per-sphere power-mean fact rather than a statistical
///        one.
/// The kernel profile must be determined (not merely bounded) at every
/// offset the probes touch.
inline CheckResult mc_check_radialization(const KernelSpec<Real>& K, const DigitFunction& f,
                                          const MorreyParams& P, long samples_per_sphere,
                                          std::uint64_t seed) {
  if (!f.eval) throw error("mc_check_radialization: function handle is empty");
  if (f.support_lo > f.support_hi)
    throw error("mc_check_radialization: support window is empty");
  if (K.field().q != f.p || P.field.q != f.p)
    throw error("mc_check_radialization: kernel, space, and digit model must share q");
  validate(P);
  CheckResult out;
  out.name = "kernel.radialization_mc";
  out.seed = seed;
  out.bound = 3;
  out.tol = 0;
  const long lo = f.support_lo, hi = f.support_hi;
  const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
  Rng stream_avg(Rng::derive(seed, 1));     // feeds the radialized path
  Rng stream_direct(Rng::derive(seed, 2));  // independent direct estimates
  Rng stream_norm(Rng::derive(seed, 3));    // shared draws for both norms

  const auto est = radialize(f, samples_per_sphere, stream_avg);

  // independent per-sphere means for the direct path
  std::vector<Real> mean_d(width), err_d(width);
  for (long l = lo; l <= hi; ++l) {
    Real acc = 0, acc2 = 0;
    for (long i = 0; i < samples_per_sphere; ++i) {
      const auto x = sample_haar(f.p, {SampleRegion::Kind::sphere, l}, 12, stream_direct);
      const Real y = f.eval(x);
      acc += y;
      acc2 += y * y;
    }
    const Real m = acc / Real(samples_per_sphere);
    mean_d[static_cast<std::size_t>(l - lo)] = m;
    err_d[static_cast<std::size_t>(l - lo)] =
        std::sqrt(std::max(Real(0), acc2 / Real(samples_per_sphere) - m * m) /
                  Real(samples_per_sphere));
  }

  std::vector<long> probes{lo - 2, lo, (lo + hi) / 2, hi, hi + 2};
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

  Real max_z = 0;
  Json probe_rows = Json::array();
  for (const long m : probes) {
    // T f(x) on |x| = q^{-m} as a finite sphere sum: both paths apply the
    // same linear functional to their respective sphere means
    Real direct = 0, var_direct = 0, var_via = 0;
    for (long l = lo; l <= hi; ++l) {
      const Real coeff = qpow<Real>(f.p, m) * K.profile(m - l) * sphere_measure<Real>({f.p}, l);
      const std::size_t i = static_cast<std::size_t>(l - lo);
      direct += coeff * mean_d[i];
      var_direct += coeff * coeff * err_d[i] * err_d[i];
      var_via += coeff * coeff * est.std_error[i] * est.std_error[i];
    }
    const Real via = apply_operator_at(K, est.mean, m).value;
    const Real se = std::sqrt(var_direct + var_via);
    const Real diff = std::fabs(direct - via);
    Real z;
    if (se > 0) {
      z = diff / se;
    } else {
      // zero sample variance on every sphere: demand agreement outright
      z = diff <= Real(1e-9) * (Real(1) + std::fabs(direct)) ? Real(0)
                                                             : std::numeric_limits<Real>::infinity();
    }
    max_z = std::max(max_z, z);
    probe_rows.push_back(Json{{"m", m},
                              {"direct", static_cast<double>(direct)},
                              {"via_radialization", static_cast<double>(via)},
                              {"z", static_cast<double>(z)}});
  }

  // norm contraction on shared draws
  std::vector<Real> mean_s(width), mean_abs_r(width);
  for (long l = lo; l <= hi; ++l) {
    Real acc = 0, accr = 0;
    for (long i = 0; i < samples_per_sphere; ++i) {
      const auto x = sample_haar(f.p, {SampleRegion::Kind::sphere, l}, 12, stream_norm);
      const Real y = f.eval(x);
      acc += y;
      accr += std::pow(std::fabs(y), P.r);
    }
    mean_s[static_cast<std::size_t>(l - lo)] = acc / Real(samples_per_sphere);
    mean_abs_r[static_cast<std::size_t>(l - lo)] = accr / Real(samples_per_sphere);
  }
  auto brute_norm = [&](const std::vector<Real>& sphere_rth) {
    Real best = 0;
    for (long k = lo - 40; k <= hi + 2; ++k) {
      Real wk = 0;
      for (long l = std::max(k, lo); l <= hi; ++l)
        wk += sphere_rth[static_cast<std::size_t>(l - lo)] *
              std::pow(static_cast<Real>(f.p), -static_cast<Real>(l) * P.alpha) *
              sphere_measure<Real>({f.p}, l);
      const Real v = phi_eval(P.phi, f.p, k) *
                     std::pow(qpow<Real>(f.p, k) * wk, Real(1) / P.r);
      best = std::max(best, v);
    }
    return best;
  };
  std::vector<Real> avg_rth(width);
  for (std::size_t i = 0; i < width; ++i)
    avg_rth[i] = std::pow(std::fabs(mean_s[i]), P.r);
  const Real norm_f = brute_norm(mean_abs_r);
  const Real norm_avg = brute_norm(avg_rth);
  const bool contraction_ok = norm_avg <= norm_f * (Real(1) + Real(1e-9));

  out.measured = max_z;
  out.status = (max_z <= out.bound && contraction_ok) ? CheckStatus::pass : CheckStatus::fail;
  out.detail = Json{{"label", f.label},
                    {"probes", probe_rows},
                    {"norm_mc", static_cast<double>(norm_f)},
                    {"norm_radialized", static_cast<double>(norm_avg)},
                    {"contraction_ok", contraction_ok},
                    {"samples_per_sphere", samples_per_sphere}};
  if (out.status == CheckStatus::fail)
    out.repro = Json{{"kernel", kernel_to_json(K)},
                     {"label", f.label},
                     {"support", Json::array({lo, hi})},
                     {"samples_per_sphere", samples_per_sphere},
                     {"seed", seed}};
  return out;
}

// ---------------------------------------------------------------------------
// The individual suite checks

namespace detail {

inline CheckResult check_ball_sphere_decomposition(const VerifyConfig& cfg, std::uint64_t) {
  CheckResult c;
  c.bound = 0;
  c.tol = 0;
  long failures = 0;
  std::vector<long> qs{2, 3, 5};
  if (std::find(qs.begin(), qs.end(), cfg.q) == qs.end()) qs.push_back(cfg.q);
  for (const long q : qs) {
    const FieldParams fp{q};
    for (long k = -10; k <= 10; ++k) {
      const Rational ball = ball_measure<Rational>(fp, k);
      if (ball != sphere_measure<Rational>(fp, k) + ball_measure<Rational>(fp, k + 1)) {
        ++failures;
        if (c.repro.is_null()) c.repro = Json{{"q", q}, {"k", k}};
      }
      Rational tele(0);
      for (long l = k; l < k + 30; ++l) tele += sphere_measure<Rational>(fp, l);
      tele += ball_measure<Rational>(fp, k + 30);
      if (ball != tele) {
        ++failures;
        if (c.repro.is_null()) c.repro = Json{{"q", q}, {"k", k}, {"telescope", true}};
      }
    }
  }
  c.measured = static_cast<Real>(failures);
  c.status = failures == 0 ? CheckStatus::pass : CheckStatus::fail;
  return c;
}

inline CheckResult check_weighted_closed_form(const VerifyConfig& cfg, std::uint64_t) {
  CheckResult c;
  c.bound = 1e-12L;
  c.tol = 0;
  long exact_failures = 0;
  Real max_rel = 0;
  std::vector<long> qs{2, 3, 4, 5, 8};
  if (std::find(qs.begin(), qs.end(), cfg.q) == qs.end()) qs.push_back(cfg.q);
  for (const long q : qs) {
    const FieldParams fp{q};
    for (long k = -10; k <= 10; ++k) {
      for (const long a : {0L, 1L, 2L}) {
        // the truncated series plus its exact geometric tail reproduces the
        // closed form as an identity between rationals
        const auto ps = oracle_weighted_measure<Rational, long>(fp, k, a, 25);
        const Rational closed = weighted_ball_measure<Rational>(fp, k, a, true);
        if (ps.value + ps.remainder != closed) {
          ++exact_failures;
          if (c.repro.is_null()) c.repro = Json{{"q", q}, {"k", k}, {"alpha", a}};
        }
      }
      for (const Real a : {Real(0.5), Real(1.5), cfg.alpha}) {
        const auto ps = oracle_weighted_measure<Real, Real>(fp, k, a, 120);
        const Real closed = weighted_ball_measure<Real>(fp, k, a, true);
        max_rel = std::max(max_rel, rel_dev(ps.value + ps.remainder, closed));
      }
    }
  }
  c.measured = max_rel;
  c.status =
      (exact_failures == 0 && max_rel <= c.bound) ? CheckStatus::pass : CheckStatus::fail;
  if (c.status == CheckStatus::fail && c.repro.is_null())
    c.repro = Json{{"max_rel", static_cast<double>(max_rel)}};
  return c;
}

inline CheckResult check_sphere_decomposition_mc(const VerifyConfig& cfg, std::uint64_t seed) {
  CheckResult c;
  c.seed = seed;
  c.bound = 3;
  c.tol = 0;
  if (!is_prime(cfg.q)) {
    c.status = CheckStatus::skip;
    c.detail = Json{{"reason", "digit model needs a prime residue parameter"}};
    c.measured = 0;
    return c;
  }
  Rng rng(seed);
  const FieldParams fp{cfg.q};
  const auto f = random_window_function(rng, -4, 4);
  const long digits = 13;  // window valuations plus slack below it
  const long N = cfg.mc_samples;
  Real acc = 0, acc2 = 0;
  for (long i = 0; i < N; ++i) {
    const auto x = sample_haar(cfg.q, {SampleRegion::Kind::ball, -4}, digits, rng);
    const Real y = f.eval(x.valuation.value_or(1000000));
    acc += y;
    acc2 += y * y;
  }
  const Real vol = ball_measure<Real>(fp, -4);
  const Real mean = acc / Real(N);
  const Real var = std::max(Real(0), acc2 / Real(N) - mean * mean);
  const Real est = vol * mean;
  const Real se = vol * std::sqrt(var / Real(N));
  const Real exact = haar_integral(f, fp);  // the window sits inside the ball
  const Real diff = std::fabs(est - exact);
  const Real z = se > 0 ? diff / se
                        : (diff <= Real(1e-12) ? Real(0) : std::numeric_limits<Real>::infinity());
  c.measured = z;
  c.detail = Json{{"estimate", static_cast<double>(est)},
                  {"exact", static_cast<double>(exact)},
                  {"stderr", static_cast<double>(se)},
                  {"samples", N}};
  c.status = z <= c.bound ? CheckStatus::pass : CheckStatus::fail;
  if (c.status == CheckStatus::fail)
    c.repro = Json{{"f", radial_to_json(f)}, {"samples", N}, {"seed", seed}};
  return c;
}

inline CheckResult check_change_of_variables(const VerifyConfig& cfg, std::uint64_t seed) {
  CheckResult c;
  c.seed = seed;
  c.bound = 1e-12L;
  c.tol = 0;
  Rng rng(seed);
  const FieldParams fp{cfg.q};
  const MorreyParams P{fp, cfg.r, cfg.alpha, phi_lebesgue(cfg.r)};
  const Real growth = std::pow(static_cast<Real>(cfg.q), (1 + cfg.alpha) / cfg.r);
  Real max_rel = 0;
  for (long t = 0; t < 50; ++t) {
    auto f = random_window_function(rng, -6, 6);
    if (t % 3 == 0) {
      // attach integrable geometric tails: decay above, growth below the
      // integrability threshold sigma- > q^{(1+alpha)/r}
      const GeometricTail<Real> upper{Real(0.5) + static_cast<Real>(rng.unit()),
                                      Real(0.2) + Real(0.7) * static_cast<Real>(rng.unit())};
      const GeometricTail<Real> lower{Real(0.5) + static_cast<Real>(rng.unit()),
                                      growth * (Real(1.3) + static_cast<Real>(rng.unit()))};
      f = RadialFunction<Real>(f.lo(), f.values(), lower, upper);
    }
    const Real base = morrey_norm(f, P).value;
    for (const long l : {-8L, rng.range(-7, 7), 8L}) {
      const Real moved = morrey_norm(dilate(f, l), P).value;
      const Real expected = std::pow(static_cast<Real>(cfg.q),
                                     static_cast<Real>(l) * (1 + cfg.alpha) / cfg.r) *
                            base;
      const Real dev = rel_dev(moved, expected);
      if (dev > max_rel) {
        max_rel = dev;
        if (dev > c.bound)
          c.repro = Json{{"f", radial_to_json(f)}, {"l", l}, {"seed", seed}};
      }
    }
  }
  c.measured = max_rel;
  c.status = max_rel <= c.bound ? CheckStatus::pass : CheckStatus::fail;
  if (c.status == CheckStatus::pass) c.repro = Json();
  return c;
}

inline CheckResult check_dilation_bound_sweep(const VerifyConfig& cfg, std::uint64_t seed) {
  CheckResult c;
  c.seed = seed;
  c.bound = 1;
  c.tol = 1e-9L;
  Rng rng(seed);
  const FieldParams fp{cfg.q};
  Real worst = 0, equality_dev = 0;
  const std::vector<std::pair<std::string, PhiSpec>> presets{
      {"lebesgue", phi_lebesgue(cfg.r)},
      {"central_wide", phi_central(Real(1.5) * cfg.r)},
      {"central_wider", phi_central(Real(3) * cfg.r)},
  };
  for (const auto& [label, phi] : presets) {
    const auto sub = phi_submult_check(phi, cfg.q);
    const auto cls = phi_class_check(phi, cfg.q, cfg.r);
    if (!sub.submultiplicative || !cls.in_class) {
      c.status = CheckStatus::fail;
      c.repro = Json{{"preset", label}, {"reason", "preset fails its own certificates"}};
      return c;
    }
    const Real csc = sub.c_sm * cls.c_class;
    const MorreyParams P{fp, cfg.r, cfg.alpha, phi};
    for (long t = 0; t < 20; ++t) {
      const auto f = random_window_function(rng, -6, 6);
      const Real base = morrey_norm(f, P).value;
      for (long l = -10; l <= 10; ++l) {
        const Real ratio = morrey_norm(dilate(f, l), P).value / base;
        const Real cap = csc * dilation_bound(fp, cfg.r, cfg.alpha, l);
        const Real rel = ratio / cap;
        if (rel > worst) {
          worst = rel;
          if (rel > 1 + c.tol)
            c.repro = Json{{"preset", label}, {"f", radial_to_json(f)}, {"l", l}, {"seed", seed}};
        }
        if (label == "lebesgue" && l > 0)
          equality_dev =
              std::max(equality_dev, rel_dev(ratio, dilation_bound(fp, cfg.r, cfg.alpha, l)));
      }
    }
  }
  c.measured = worst;
  c.detail = Json{{"lebesgue_shrink_equality_dev", static_cast<double>(equality_dev)}};
  c.status =
      (worst <= 1 + c.tol && equality_dev <= 1e-10L) ? CheckStatus::pass : CheckStatus::fail;
  if (c.status == CheckStatus::pass) c.repro = Json();
  return c;
}

inline CheckResult check_lebesgue_collapse(const VerifyConfig& cfg, std::uint64_t seed) {
  CheckResult c;
  c.seed = seed;
  c.bound = 1e-12L;
  c.tol = 0;
  Rng rng(seed);
  const FieldParams fp{cfg.q};
  const MorreyParams P{fp, cfg.r, cfg.alpha, phi_lebesgue(cfg.r)};
  const Real growth = std::pow(static_cast<Real>(cfg.q), (1 + cfg.alpha) / cfg.r);
  std::vector<RadialFunction<Real>> cases{
      char_ball<Real>(0), char_ball<Real>(-3), char_sphere<Real>(2),
      bracket_profile<Real>(fp, (cfg.alpha + 1) / cfg.r + 1)};
  for (long t = 0; t < 30; ++t) {
    auto f = random_window_function(rng, -6, 6);
    if (t % 3 == 0) {
      const GeometricTail<Real> upper{Real(0.5) + static_cast<Real>(rng.unit()),
                                      Real(0.2) + Real(0.7) * static_cast<Real>(rng.unit())};
      const GeometricTail<Real> lower{Real(0.5) + static_cast<Real>(rng.unit()),
                                      growth * (Real(1.3) + static_cast<Real>(rng.unit()))};
      f = RadialFunction<Real>(f.lo(), f.values(), lower, upper);
    }
    cases.push_back(std::move(f));
  }
  Real max_rel = 0;
  for (const auto& f : cases) {
    const Real n = morrey_norm(f, P).value;
    const Real integral = weighted_integral(f, cfg.r, cfg.alpha, fp);
    const Real expected = std::pow(integral, Real(1) / cfg.r);
    const Real dev = rel_dev(n, expected);
    if (dev > max_rel) {
      max_rel = dev;
      if (dev > c.bound) c.repro = Json{{"f", radial_to_json(f)}, {"seed", seed}};
    }
  }
  c.measured = max_rel;
  c.status = max_rel <= c.bound ? CheckStatus::pass : CheckStatus::fail;
  if (c.status == CheckStatus::pass) c.repro = Json();
  return c;
}

inline CheckResult check_char_ball_bound(const VerifyConfig& cfg, std::uint64_t) {
  CheckResult c;
  c.bound = 1;
  c.tol = 1e-9L;
  const FieldParams fp{cfg.q};
  Real worst = 0;
  const std::vector<std::pair<std::string, PhiSpec>> presets{
      {"lebesgue", phi_lebesgue(cfg.r)},
      {"central_wide", phi_central(Real(1.5) * cfg.r)},
      {"envelope", phi_envelope(cfg.r)},
  };
  for (const auto& [label, phi] : presets) {
    const MorreyParams P{fp, cfg.r, cfg.alpha, phi};
    for (long eta = -15; eta <= 15; ++eta) {
      const Real v = morrey_norm(char_ball<Real>(eta), P).value;
      const Real cap = char_ball_norm_bound(eta, P);
      const Real rel = v / cap;
      if (rel > worst) {
        worst = rel;
        if (rel > 1 + c.tol) c.repro = Json{{"preset", label}, {"eta", eta}};
      }
    }
  }
  c.measured = worst;
  c.status = worst <= 1 + c.tol ? CheckStatus::pass : CheckStatus::fail;
  if (c.status == CheckStatus::pass) c.repro = Json();
  return c;
}

inline CheckResult check_bracket_membership(const VerifyConfig& cfg, std::uint64_t) {
  CheckResult c;
  c.bound = 0;
  c.tol = 0;
  const FieldParams fp{cfg.q};
  const MorreyParams P{fp, cfg.r, cfg.alpha, phi_lebesgue(cfg.r)};
  const Real crit = (cfg.alpha + 1) / cfg.r;
  long mismatches = 0;
  for (const Real n : {crit - Real(0.05), crit, crit + Real(0.05), crit + 1,
                       std::max(Real(0.01), crit / 2), 2 * crit + Real(0.1)}) {
    const bool expected = bracket_space_criterion(n, cfg.r, cfg.alpha);
    const bool actual = morrey_norm(bracket_profile<Real>(fp, n), P).finite;
    if (expected != actual || expected != (n > crit)) {
      ++mismatches;
      if (c.repro.is_null())
        c.repro = Json{{"n", static_cast<double>(n)},
                       {"expected_finite", expected},
                       {"norm_finite", actual}};
    }
  }
  c.measured = static_cast<Real>(mismatches);
  c.status = mismatches == 0 ? CheckStatus::pass : CheckStatus::fail;
  return c;
}

inline CheckResult check_class_certificates(const VerifyConfig& cfg, std::uint64_t) {
  CheckResult c;
  c.bound = 1e-12L;
  c.tol = 0;
  Real max_rel = 0;
  const std::vector<std::pair<std::string, PhiSpec>> members{
      {"lebesgue", phi_lebesgue(cfg.r)},
      {"central_wide", phi_central(Real(1.5) * cfg.r)},
      {"envelope", phi_envelope(cfg.r)},
      {"two_segment", PhiSpec({{std::nullopt, 2, Real(0.8) / cfg.r}, {2, Real(0.5), Real(0.1)}})},
  };
  for (const auto& [label, phi] : members) {
    const auto cert = phi_class_check(phi, cfg.q, cfg.r);
    if (!cert.in_class) {
      c.status = CheckStatus::fail;
      c.repro = Json{{"preset", label}, {"violation", cert.violation}};
      return c;
    }
    // independent brute-force supremum of the class ratio
    Real brute = 0;
    for (long k = -60; k <= 60; ++k) {
      const Real p = phi_eval(phi, cfg.q, k);
      const Real ratio =
          k >= 0 ? p : p * std::pow(static_cast<Real>(cfg.q), static_cast<Real>(k) / cfg.r);
      brute = std::max(brute, ratio);
    }
    const Real dev = rel_dev(brute, cert.c_class);
    if (dev > max_rel) {
      max_rel = dev;
      if (dev > c.bound) c.repro = Json{{"preset", label}, {"brute", static_cast<double>(brute)}};
    }
  }
  // profiles outside the class must be rejected with a reason
  const PhiSpec growing({{std::nullopt, 1, Real(0.2)}, {0, 1, Real(-0.1)}});
  const PhiSpec steep({{std::nullopt, 1, 1 / cfg.r + Real(0.2)}});
  for (const auto* bad : {&growing, &steep}) {
    const auto cert = phi_class_check(*bad, cfg.q, cfg.r);
    if (cert.in_class || cert.violation.empty()) {
      c.status = CheckStatus::fail;
      c.repro = Json{{"reason", "non-member accepted"}};
      return c;
    }
  }
  c.measured = max_rel;
  c.status = max_rel <= c.bound ? CheckStatus::pass : CheckStatus::fail;
  if (c.status == CheckStatus::pass) c.repro = Json();
  return c;
}

inline CheckResult check_submultiplicativity(const VerifyConfig& cfg, std::uint64_t) {
  CheckResult c;
  c.bound = 1e-12L;
  c.tol = 0;
  Real max_rel = 0;
  const std::vector<std::pair<std::string, PhiSpec>> members{
      {"lebesgue", phi_lebesgue(cfg.r)},
      {"central_wide", phi_central(Real(1.5) * cfg.r)},
      {"kinked", PhiSpec({{std::nullopt, 1, Real(0.6)}, {0, 1, Real(0.2)}})},
  };
  for (const auto& [label, phi] : members) {
    const auto cert = phi_submult_check(phi, cfg.q);
    if (!cert.submultiplicative) {
      c.status = CheckStatus::fail;
      c.repro = Json{{"preset", label}, {"violation", cert.violation}};
      return c;
    }
    Real brute = 0;
    for (long s = -24; s <= 24; ++s)
      for (long t = -24; t <= 24; ++t)
        brute = std::max(brute, phi_eval(phi, cfg.q, s + t) /
                                    (phi_eval(phi, cfg.q, s) * phi_eval(phi, cfg.q, t)));
    const Real dev = rel_dev(brute, cert.c_sm);
    if (dev > max_rel) {
      max_rel = dev;
      if (dev > c.bound) c.repro = Json{{"preset", label}, {"brute", static_cast<double>(brute)}};
    }
  }
  // the envelope profile fails, and its witness defeats any constant by
  // a wide margin
  const auto bad = phi_submult_check(phi_envelope(cfg.r), cfg.q);
  const Real witness_factor =
      phi_eval(phi_envelope(cfg.r), cfg.q, bad.witness_s + bad.witness_t) /
      (phi_eval(phi_envelope(cfg.r), cfg.q, bad.witness_s) *
       phi_eval(phi_envelope(cfg.r), cfg.q, bad.witness_t));
  if (bad.submultiplicative || !(witness_factor > 1e6L)) {
    c.status = CheckStatus::fail;
    c.repro = Json{{"reason", "envelope accepted or witness too weak"},
                   {"witness_factor", static_cast<double>(witness_factor)}};
    return c;
  }
  c.measured = max_rel;
  c.detail = Json{{"envelope_witness_factor", static_cast<double>(witness_factor)}};
  c.status = max_rel <= c.bound ? CheckStatus::pass : CheckStatus::fail;
  if (c.status == CheckStatus::pass) c.repro = Json();
  return c;
}

inline CheckResult check_homogeneity(const VerifyConfig& cfg, std::uint64_t) {
  CheckResult c;
  c.bound = 1e-9L;
  c.tol = 0;
  const auto averaging = [](Real s, Real t) { return t <= s ? 1 / s : Real(0); };
  const auto reciprocal_max = [](Real s, Real t) { return 1 / std::max(s, t); };
  const auto reciprocal_sum = [](Real s, Real t) { return 1 / (s + t); };
  const auto quadratic = [](Real s, Real t) { return 1 / (s * s + t * t); };
  Real worst = 0;
  std::vector<long> qs{2, 3};
  if (std::find(qs.begin(), qs.end(), cfg.q) == qs.end()) qs.push_back(cfg.q);
  for (const long q : qs) {
    for (const auto& fn :
         std::vector<std::function<Real(Real, Real)>>{averaging, reciprocal_max, reciprocal_sum}) {
      const auto rep = homogeneity_check(fn, q);
      worst = std::max(worst, rep.max_rel_violation);
      if (!rep.pass || std::fabs(rep.estimated_degree + 1) > 1e-6L) {
        c.status = CheckStatus::fail;
        c.repro = Json{{"q", q}, {"degree", static_cast<double>(rep.estimated_degree)}};
        return c;
      }
    }
    const auto repb = homogeneity_check(quadratic, q);
    if (repb.pass || std::fabs(repb.estimated_degree + 2) > 0.05L) {
      c.status = CheckStatus::fail;
      c.repro = Json{{"q", q}, {"reason", "degree -2 kernel not rejected"}};
      return c;
    }
  }
  c.measured = worst;
  c.status = worst <= c.bound ? CheckStatus::pass : CheckStatus::fail;
  return c;
}

inline CheckResult check_convolution_equivalence(const VerifyConfig& cfg, std::uint64_t seed) {
  CheckResult c;
  c.seed = seed;
  c.bound = 1e-9L;
  c.tol = 0;
  Rng rng(seed);
  const FieldParams fp{cfg.q};
  const Real qr = static_cast<Real>(cfg.q);
  using Kernel2 = std::function<Real(Real, Real)>;
  const std::vector<std::pair<KernelSpec<Real>, Kernel2>> kernels{
      {hardy_kernel<Real>(fp), [](Real s, Real t) { return t <= s ? 1 / s : Real(0); }},
      {hlp_kernel<Real>(fp), [](Real s, Real t) { return 1 / std::max(s, t); }},
      {hilbert_kernel<Real>(fp), [](Real s, Real t) { return 1 / (s + t); }},
  };
  Real max_rel = 0;
  for (long t = 0; t < 10; ++t) {
    const auto f = random_window_function(rng, -5, 5);
    const auto g = random_window_function(rng, -5, 5);
    for (const auto& [K, k2] : kernels) {
      for (long m = -8; m <= 8; ++m) {
        // the defining integral as a finite sphere sum over the support
        Real direct = 0;
        for (long l = f.lo(); l <= f.hi(); ++l)
          direct += k2(std::pow(qr, static_cast<Real>(-m)), std::pow(qr, static_cast<Real>(-l))) *
                    sphere_measure<Real>(fp, l) * f.eval(l);
        const auto pt = apply_operator_at(K, f, m);
        const Real dev = rel_dev(direct, pt.value);
        if (dev > max_rel) {
          max_rel = dev;
          if (dev > c.bound) c.repro = Json{{"f", radial_to_json(f)}, {"m", m}, {"seed", seed}};
        }
        if (pt.value < -1e-15L) {
          c.status = CheckStatus::fail;  // nonnegative kernel on nonnegative f
          c.repro = Json{{"f", radial_to_json(f)}, {"m", m}, {"reason", "negative output"}};
          return c;
        }
      }
    }
    // linearity of the full application (exact-tail kernels only)
    for (const auto* K : {&kernels[0].first, &kernels[1].first}) {
      const auto lhs = apply_operator(*K, add(f, g)).value;
      const auto rhs = add(apply_operator(*K, f).value, apply_operator(*K, g).value);
      for (long m = -8; m <= 8; ++m)
        max_rel = std::max(max_rel, rel_dev(lhs.eval(m), rhs.eval(m)));
    }
  }
  c.measured = max_rel;
  c.status = max_rel <= c.bound ? CheckStatus::pass : CheckStatus::fail;
  if (c.status == CheckStatus::pass) c.repro = Json();
  return c;
}

inline CheckResult check_radialization_mc(const VerifyConfig& cfg, std::uint64_t seed) {
  CheckResult c;
  c.seed = seed;
  c.bound = 3;
  c.tol = 0;
  if (!is_prime(cfg.q)) {
    c.status = CheckStatus::skip;
    c.detail = Json{{"reason", "digit model needs a prime residue parameter"}};
    return c;
  }
  const FieldParams fp{cfg.q};
  const MorreyParams P{fp, cfg.r, cfg.alpha, phi_lebesgue(cfg.r)};
  const auto K = hlp_kernel<Real>(fp);
  const long per_sphere = std::max(100L, cfg.mc_samples / 20);
  Real max_z = 0;
  Json parts = Json::array();
  long contraction_failures = 0;

  // a lifted radial function: both estimators see zero variance and must
  // agree outright
  {
    Rng rs(Rng::derive(seed, 101));
    const auto fr = random_window_function(rs, -3, 3);
    const DigitFunction lifted{
        cfg.q, fr.lo(), fr.hi(), "lifted radial window",
        [fr](const LaurentElement& x) { return fr.eval(x.valuation.value_or(1000000)); }};
    const auto rec = mc_check_radialization(K, lifted, P, per_sphere, Rng::derive(seed, 11));
    max_z = std::max(max_z, rec.measured);
    if (rec.status == CheckStatus::fail) ++contraction_failures;
    parts.push_back(rec.detail);
  }
  // a digit-dependent perturbation: sphere averages are 1 + 1/q
  {
    const DigitFunction perturbed{
        cfg.q, -3, 3, "second digit indicator",
        [](const LaurentElement& x) {
          if (!x.valuation) return Real(0);
          const int d1 = x.digits.size() > 1 ? x.digits[1] : 0;
          return Real(1) + (d1 == 1 ? Real(1) : Real(0));
        }};
    const auto rec = mc_check_radialization(K, perturbed, P, per_sphere, Rng::derive(seed, 12));
    max_z = std::max(max_z, rec.measured);
    if (rec.status == CheckStatus::fail) ++contraction_failures;
    parts.push_back(rec.detail);
  }
  // norm contraction over a batch of random digit-dependent functions; the
  // shared-draw construction makes that inequality deterministic, so only it
  // gates here (the batch z statistics are reported, not asserted)
  Real batch_max_z = 0;
  {
    Rng rs(Rng::derive(seed, 102));
    const long batch_samples = std::max(100L, cfg.mc_samples / 100);
    for (long t = 0; t < 20; ++t) {
      const long lo = rs.range(-3, 0);
      const long hi = rs.range(lo, 3);
      const Real base = Real(-0.5) + Real(1.5) * static_cast<Real>(rs.unit());
      const Real w = Real(-1) + Real(2) * static_cast<Real>(rs.unit());
      const long idx = rs.range(1, 3);
      const int target = static_cast<int>(rs.below(static_cast<std::uint64_t>(cfg.q)));
      const DigitFunction random_fn{
          cfg.q, lo, hi, "random digit mixture",
          [base, w, idx, target](const LaurentElement& x) {
            const int d = static_cast<long>(x.digits.size()) > idx ? x.digits[idx] : 0;
            return base + (d == target ? w : Real(0));
          }};
      const auto rec =
          mc_check_radialization(K, random_fn, P, batch_samples, Rng::derive(seed, 200 + t));
      batch_max_z = std::max(batch_max_z, rec.measured);
      if (!rec.detail.value("contraction_ok", false)) {
        ++contraction_failures;
        if (c.repro.is_null()) c.repro = rec.repro;
      }
    }
  }
  c.measured = max_z;
  c.detail = Json{{"parts", parts},
                  {"batch_max_z", static_cast<double>(batch_max_z)},
                  {"contraction_failures", contraction_failures}};
  c.status =
      (max_z <= c.bound && contraction_failures == 0) ? CheckStatus::pass : CheckStatus::fail;
  return c;
}

inline CheckResult check_operator_norm_inequality(const VerifyConfig& cfg, std::uint64_t seed) {
  CheckResult c;
  c.seed = seed;
  c.bound = 1;
  c.tol = 1e-9L;
  const FieldParams fp{cfg.q};
  const MorreyParams P{fp, cfg.r, cfg.alpha, phi_lebesgue(cfg.r)};
  const std::vector<std::pair<std::string, KernelSpec<Real>>> kernels{
      {"averaging", hardy_kernel<Real>(fp)},
      {"reciprocal_max", hlp_kernel<Real>(fp)},
      {"reciprocal_sum", hilbert_kernel<Real>(fp)},
  };
  Real worst = 0;
  bool any_run = false;
  Json rows = Json::array();
  std::uint64_t stream = 0;
  for (const auto& [label, K] : kernels) {
    ++stream;
    const auto full = operator_norm_bound(K, P);
    if (!full.finite) {
      rows.push_back(Json{{"kernel", label}, {"skipped", full.condition}});
      continue;
    }
    any_run = true;
    const SearchParams sp{cfg.search_lo, cfg.search_hi, cfg.restarts, cfg.iters,
                          Rng::derive(seed, stream)};
    const auto res = empirical_operator_norm(K, P, sp);
    const Real rel = res.ratio / full.value;
    if (rel > worst) {
      worst = rel;
      if (rel > 1 + c.tol)
        c.repro = Json{{"kernel", label}, {"witness", radial_to_json(res.witness)}};
    }
    rows.push_back(Json{{"kernel", label},
                        {"ratio", static_cast<double>(res.ratio)},
                        {"bound", static_cast<double>(full.value)},
                        {"evaluations", res.evaluations},
                        {"witness", radial_to_json(res.witness)}});
  }
  c.detail = Json{{"kernels", rows}};
  if (!any_run) {
    c.status = CheckStatus::skip;
    c.detail["reason"] = "bound constant infinite for every builtin kernel here";
    return c;
  }
  c.measured = worst;
  c.status = worst <= 1 + c.tol ? CheckStatus::pass : CheckStatus::fail;
  if (c.status == CheckStatus::pass) c.repro = Json();
  return c;
}

inline CheckResult check_series_vs_closed_form(const VerifyConfig& cfg, std::uint64_t) {
  CheckResult c;
  c.bound = 1e-12L;
  c.tol = 0;
  Real max_rel = 0;
  std::vector<long> qs{2, 3};
  if (std::find(qs.begin(), qs.end(), cfg.q) == qs.end()) qs.push_back(cfg.q);
  std::vector<std::pair<Real, Real>> grid{{2, 0.5}, {3, 1}, {1.5, 0.25}, {2.5, 0.75}};
  grid.emplace_back(cfg.r, cfg.alpha);
  for (const long q : qs) {
    const FieldParams fp{q};
    for (const auto& [r, a] : grid) {
      if (!(a + 1 < r)) continue;
      {
        const auto series = main_bound_constant(hardy_kernel<Real>(fp), r, a);
        const auto closed = hardy_bound_constant(fp, r, a);
        max_rel = std::max(max_rel, rel_dev(series.value, closed.value));
      }
      // the averaging kernel's constant stays finite down to alpha = 0
      {
        const auto series = main_bound_constant(hardy_kernel<Real>(fp), r, Real(0));
        const auto closed = hardy_bound_constant(fp, r, Real(0));
        max_rel = std::max(max_rel, rel_dev(series.value, closed.value));
      }
      if (a > 0) {
        const auto series = main_bound_constant(hlp_kernel<Real>(fp), r, a);
        const auto closed = hlp_bound_constant(fp, r, a);
        max_rel = std::max(max_rel, rel_dev(series.value, closed.value));
      }
    }
  }
  c.measured = max_rel;
  c.status = max_rel <= c.bound ? CheckStatus::pass : CheckStatus::fail;
  if (c.status == CheckStatus::fail) c.repro = Json{{"max_rel", static_cast<double>(max_rel)}};
  return c;
}

inline CheckResult check_hlp_finiteness_boundary(const VerifyConfig& cfg, std::uint64_t) {
  CheckResult c;
  c.bound = 1;
  c.tol = 0;
  const FieldParams fp{cfg.q};
  const Real qr = static_cast<Real>(cfg.q);
  const Real unit = 1 - 1 / qr;
  Real min_attained = std::numeric_limits<Real>::infinity();
  // at and beyond the critical line the defining series must visibly diverge
  const std::vector<std::pair<Real, Real>> divergent{
      {2, 1}, {2, 1.5}, {1.5, 0.75}, {2, 0}, {3, 2}};
  for (const auto& [r, a] : divergent) {
    const auto b = hlp_bound_constant(fp, r, a);
    if (b.finite || !std::isinf(static_cast<double>(b.value)) ||
        b.condition != "alpha > 0 and alpha + 1 < r") {
      c.status = CheckStatus::fail;
      c.repro = Json{{"r", static_cast<double>(r)}, {"alpha", static_cast<double>(a)},
                     {"reason", "divergent constant reported finite"}};
      return c;
    }
    const Real u = std::pow(qr, (a + 1) / r - 1);
    const Real v = std::pow(qr, -a / r);
    Real total = unit, term_u = unit * u, term_v = unit * v;
    long l = 0;
    while (total <= 1e6L && l < 20000000L) {
      total += term_u + term_v;
      term_u *= u;
      term_v *= v;
      ++l;
    }
    min_attained = std::min(min_attained, total / Real(1e6));
  }
  // on the good side the constant is finite and matches its series
  for (const auto& [r, a] : std::vector<std::pair<Real, Real>>{{2, 0.5}, {3, 1.5}}) {
    const auto b = hlp_bound_constant(fp, r, a);
    const auto series = main_bound_constant(hlp_kernel<Real>(fp), r, a);
    if (!b.finite || !series.finite || rel_dev(b.value, series.value) > 1e-12L) {
      c.status = CheckStatus::fail;
      c.repro = Json{{"r", static_cast<double>(r)}, {"alpha", static_cast<double>(a)},
                     {"reason", "finite side misreported"}};
      return c;
    }
  }
  c.measured = min_attained;
  c.status = min_attained >= c.bound ? CheckStatus::pass : CheckStatus::fail;
  return c;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suite driver and report rendering

inline VerificationReport verify_suite(const VerifyConfig& cfg) {
  validate(cfg);
  struct Entry {
    const char* name;
    CheckResult (*run)(const VerifyConfig&, std::uint64_t);
    bool randomized;
  };
  const std::vector<Entry> entries{
      {"measures.ball_sphere_decomposition", detail::check_ball_sphere_decomposition, false},
      {"measures.weighted_closed_form", detail::check_weighted_closed_form, false},
      {"measures.sphere_decomposition_mc", detail::check_sphere_decomposition_mc, true},
      {"dilation.change_of_variables", detail::check_change_of_variables, true},
      {"dilation.bound_sweep", detail::check_dilation_bound_sweep, true},
      {"morrey.lebesgue_collapse", detail::check_lebesgue_collapse, true},
      {"morrey.char_ball_bound", detail::check_char_ball_bound, false},
      {"morrey.bracket_membership", detail::check_bracket_membership, false},
      {"phi.class_certificates", detail::check_class_certificates, false},
      {"phi.submultiplicativity", detail::check_submultiplicativity, false},
      {"kernel.homogeneity", detail::check_homogeneity, false},
      {"kernel.convolution_equivalence", detail::check_convolution_equivalence, true},
      {"kernel.radialization_mc", detail::check_radialization_mc, true},
      {"bound.operator_norm_inequality", detail::check_operator_norm_inequality, true},
      {"bound.series_vs_closed_form", detail::check_series_vs_closed_form, false},
      {"bound.hlp_finiteness_boundary", detail::check_hlp_finiteness_boundary, false},
  };
  VerificationReport rep{cfg, {}};
  rep.checks.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const std::uint64_t sub = e.randomized ? Rng::derive(cfg.seed, i + 1) : 0;
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult c;
    try {
      c = e.run(cfg, sub);
    } catch (const std::exception& ex) {
      c.status = CheckStatus::fail;
      c.measured = std::numeric_limits<Real>::infinity();
      c.repro = Json{{"exception", ex.what()}};
    }
    c.name = e.name;
    c.seed = sub;
    c.ms = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count());
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

inline bool all_passed(const VerificationReport& rep) {
  return std::none_of(rep.checks.begin(), rep.checks.end(),
                      [](const CheckResult& c) { return c.status == CheckStatus::fail; });
}

inline Json config_to_json(const VerifyConfig& cfg) {
  return Json{{"q", cfg.q},
              {"r", static_cast<double>(cfg.r)},
              {"alpha", static_cast<double>(cfg.alpha)},
              {"seed", cfg.seed},
              {"mc_samples", cfg.mc_samples},
              {"search_lo", cfg.search_lo},
              {"search_hi", cfg.search_hi},
              {"restarts", cfg.restarts},
              {"iters", cfg.iters}};
}

inline Json check_to_json(const CheckResult& c) {
  // no wall time here: the body must be identical across seeded reruns
  return Json{{"name", c.name},
              {"status", to_string(c.status)},
              {"measured", real_or_inf(c.measured)},
              {"bound", real_or_inf(c.bound)},
              {"tol", static_cast<double>(c.tol)},
              {"seed", c.seed},
              {"detail", c.detail},
              {"repro", c.repro}};
}

inline Json report_to_json(const VerificationReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back(check_to_json(c));
  return Json{{"config", config_to_json(rep.config)},
              {"checks", checks},
              {"passed", all_passed(rep)}};
}

namespace detail {

inline std::string csv_real(Real v) {
  if (std::isinf(static_cast<double>(v))) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << static_cast<double>(v);
  return os.str();
}

}  // namespace detail

inline std::string report_csv(const VerificationReport& rep) {
  std::ostringstream os;
  os << "name,status,measured,bound,tol,seed,ms\n";
  for (const auto& c : rep.checks)
    os << c.name << ',' << to_string(c.status) << ',' << detail::csv_real(c.measured) << ','
       << detail::csv_real(c.bound) << ',' << detail::csv_real(c.tol) << ',' << c.seed << ','
       << c.ms << '\n';
  return os.str();
}

}  // namespace lfa
