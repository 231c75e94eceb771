#include <lfa/verify.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>

using namespace lfa;

namespace {

VerifyConfig small_config() {
  VerifyConfig cfg;
  cfg.mc_samples = 4000;
  cfg.restarts = 2;
  cfg.iters = 8;
  return cfg;
}

const VerificationReport& cached_small_report() {
  static const VerificationReport rep = verify_suite(small_config());
  return rep;
}

}  // namespace

TEST_CASE("suite emits the full manifest and passes", "[verify]") {
  const auto& rep = cached_small_report();
  const auto& names = required_checks();
  REQUIRE(rep.checks.size() == names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    INFO(rep.checks[i].name);
    CHECK(rep.checks[i].name == names[i]);
    CHECK(rep.checks[i].status != CheckStatus::fail);
  }
  CHECK(all_passed(rep));
}

TEST_CASE("seeded rerun reproduces the report body", "[verify]") {
  const auto a = report_to_json(cached_small_report()).dump(2);
  const auto b = report_to_json(verify_suite(small_config())).dump(2);
  CHECK(a == b);
}

TEST_CASE("report body carries config echo, seeds, and no timings", "[verify]") {
  const auto j = report_to_json(cached_small_report());
  CHECK(j.at("passed").get<bool>());
  CHECK(j.at("config").at("q").get<long>() == 2);
  CHECK(j.at("config").at("mc_samples").get<long>() == 4000);
  CHECK(j.at("config").at("seed").get<std::uint64_t>() == 1);
  REQUIRE(j.at("checks").is_array());
  for (const auto& c : j.at("checks")) {
    CHECK(!c.contains("ms"));
    const auto name = c.at("name").get<std::string>();
    // randomized checks record their substream, deterministic ones record 0
    if (name == "measures.sphere_decomposition_mc" || name == "kernel.radialization_mc")
      CHECK(c.at("seed").get<std::uint64_t>() != 0);
    if (name == "measures.ball_sphere_decomposition" || name == "phi.class_certificates")
      CHECK(c.at("seed").get<std::uint64_t>() == 0);
  }
}

TEST_CASE("csv rendering has one row per check", "[verify]") {
  const auto csv = report_csv(cached_small_report());
  std::istringstream is(csv);
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "name,status,measured,bound,tol,seed,ms");
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(line.find("fail") == std::string::npos);
  }
  CHECK(rows == required_checks().size());
}

TEST_CASE("a failed check fails the report", "[verify]") {
  VerificationReport rep;
  rep.checks.push_back({"example", CheckStatus::pass, 0, 0, 0, 0, 0, Json(), Json()});
  CHECK(all_passed(rep));
  rep.checks.push_back({"broken", CheckStatus::fail, 2, 1, 0, 0, 0, Json(), Json()});
  CHECK(!all_passed(rep));
  CHECK(report_csv(rep).find("broken,fail") != std::string::npos);
  // skips do not fail the report
  rep.checks[1].status = CheckStatus::skip;
  CHECK(all_passed(rep));
}

TEST_CASE("digit model checks are skipped for non-prime q", "[verify]") {
  auto cfg = small_config();
  cfg.q = 4;
  const auto rep = verify_suite(cfg);
  CHECK(all_passed(rep));
  for (const auto& c : rep.checks) {
    if (c.name == "measures.sphere_decomposition_mc" || c.name == "kernel.radialization_mc") {
      CHECK(c.status == CheckStatus::skip);
      CHECK(c.detail.at("reason").get<std::string>() ==
            "digit model needs a prime residue parameter");
    } else {
      INFO(c.name);
      CHECK(c.status == CheckStatus::pass);
    }
  }
}

TEST_CASE("operator bound check is skipped past the critical line", "[verify]") {
  auto cfg = small_config();
  cfg.r = 1.5;
  cfg.alpha = 0.75;  // alpha + 1 >= r: every builtin constant is infinite
  const auto rep = verify_suite(cfg);
  CHECK(all_passed(rep));
  for (const auto& c : rep.checks)
    if (c.name == "bound.operator_norm_inequality") {
      CHECK(c.status == CheckStatus::skip);
      CHECK(c.detail.at("reason").get<std::string>() ==
            "bound constant infinite for every builtin kernel here");
    }
}

TEST_CASE("witness search is exact on a one-point kernel", "[verify]") {
  const FieldParams fp{2};
  // profile concentrated at offset zero: T scales every input by 1 - 1/q
  const auto K = table_kernel<Real>(fp, 0, {Real(1)});
  const MorreyParams P{fp, 2, 0.5, phi_lebesgue(2)};
  const SearchParams sp{-4, 4, 3, 10, 99};
  const auto res = empirical_operator_norm(K, P, sp);
  CHECK(std::fabs(res.ratio - Real(0.5)) < 1e-15L);
  CHECK(res.evaluations > 0);
  CHECK(!res.witness.is_zero());
}

TEST_CASE("witness search respects the theoretical bound and its baseline", "[verify]") {
  const FieldParams fp{2};
  const auto K = hlp_kernel<Real>(fp);
  const MorreyParams P{fp, 2, 0.5, phi_lebesgue(2)};
  const auto cap = operator_norm_bound(K, P);
  REQUIRE(cap.finite);

  const SearchParams sp{-6, 6, 4, 20, 2024};
  const auto res = empirical_operator_norm(K, P, sp);
  CHECK(res.ratio <= cap.value * (1 + 1e-9L));

  // the clipped unit-ball indicator is among the starting points, so the
  // search result can never fall below its plain ratio
  std::vector<Real> ind(13, Real(0));
  for (long m = 0; m <= 6; ++m) ind[static_cast<std::size_t>(m + 6)] = 1;
  const RadialFunction<Real> f0(-6, ind);
  const Real baseline =
      morrey_norm(apply_operator(K, f0).value, P).value / morrey_norm(f0, P).value;
  CHECK(res.ratio >= baseline * (1 - 1e-15L));

  // deterministic given the seed
  const auto rerun = empirical_operator_norm(K, P, sp);
  CHECK(rerun.ratio == res.ratio);
  CHECK(same_function(rerun.witness, res.witness));

  SECTION("empty window is rejected") {
    CHECK_THROWS_AS(empirical_operator_norm(K, P, {3, 1, 2, 5, 1}), error);
  }
}

TEST_CASE("radialize estimates sphere averages", "[verify]") {
  SECTION("digit-dependent function averages to its sphere mean") {
    // indicator of second digit equal to 1 over F_3: averages 1/3 everywhere
    const DigitFunction f{3, -2, 2, "second digit indicator",
                          [](const LaurentElement& x) {
                            const int d1 = x.digits.size() > 1 ? x.digits[1] : 0;
                            return d1 == 1 ? Real(1) : Real(0);
                          }};
    Rng rng(5);
    const auto est = radialize(f, 4000, rng);
    REQUIRE(est.mean.lo() == -2);
    REQUIRE(est.mean.hi() == 2);
    REQUIRE(est.std_error.size() == 5);
    for (long l = -2; l <= 2; ++l) {
      const auto i = static_cast<std::size_t>(l + 2);
      CHECK(est.std_error[i] > 0);
      CHECK(std::fabs(est.mean.eval(l) - Real(1) / 3) <= 4 * est.std_error[i]);
    }
  }
  SECTION("a lifted radial function is a fixed point") {
    const RadialFunction<Real> fr(-1, {Real(0.25), Real(2), Real(0.5)});
    const DigitFunction f{2, -1, 1, "lifted",
                          [fr](const LaurentElement& x) {
                            return fr.eval(x.valuation.value_or(1000000));
                          }};
    Rng rng(6);
    const auto est = radialize(f, 200, rng);
    for (long l = -1; l <= 1; ++l) {
      CHECK(est.mean.eval(l) == fr.eval(l));
      CHECK(est.std_error[static_cast<std::size_t>(l + 1)] == 0);
    }
  }
  SECTION("input validation") {
    const DigitFunction f{2, 0, 0, "one sphere",
                          [](const LaurentElement&) { return Real(1); }};
    Rng rng(7);
    CHECK_THROWS_AS(radialize(f, 50, rng), error);
    DigitFunction empty = f;
    empty.support_lo = 2;
    empty.support_hi = 1;
    CHECK_THROWS_AS(radialize(empty, 200, rng), error);
  }
}

TEST_CASE("radialization record compares both operator paths", "[verify]") {
  const FieldParams fp{3};
  const MorreyParams P{fp, 2, 0.5, phi_lebesgue(2)};
  const auto K = hlp_kernel<Real>(fp);

  SECTION("radial input agrees exactly") {
    const RadialFunction<Real> fr(0, {Real(1), Real(0.5)});
    const DigitFunction f{3, 0, 1, "lifted",
                          [fr](const LaurentElement& x) {
                            return fr.eval(x.valuation.value_or(1000000));
                          }};
    const auto rec = mc_check_radialization(K, f, P, 300, 11);
    CHECK(rec.status == CheckStatus::pass);
    CHECK(rec.measured == 0);
    CHECK(rec.detail.at("contraction_ok").get<bool>());
    CHECK(rec.detail.at("norm_radialized").get<double>() <=
          rec.detail.at("norm_mc").get<double>() * (1 + 1e-9));
  }
  SECTION("field mismatch is rejected") {
    const DigitFunction f{2, 0, 1, "wrong model",
                          [](const LaurentElement&) { return Real(1); }};
    CHECK_THROWS_AS(mc_check_radialization(K, f, P, 300, 11), error);
  }
}

TEST_CASE("config validation", "[verify]") {
  VerifyConfig cfg;
  cfg.q = 1;
  CHECK_THROWS_AS(verify_suite(cfg), error);
  cfg = VerifyConfig{};
  cfg.mc_samples = 10;
  CHECK_THROWS_AS(verify_suite(cfg), error);
  cfg = VerifyConfig{};
  cfg.search_lo = 5;
  cfg.search_hi = -5;
  CHECK_THROWS_AS(verify_suite(cfg), error);
}
