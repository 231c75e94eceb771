#include <lfa/kernel.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace lfa;

namespace {

const FieldParams q2{2};
const FieldParams q3{3};

Rational rat(long n, long d = 1) { return Rational(n) / Rational(d); }

}  // namespace

TEST_CASE("kernel profiles and determinedness", "[kernel]") {
  auto hardy = hardy_kernel<Rational>(q2);
  CHECK(hardy.profile(0) == 1);
  CHECK(hardy.profile(-7) == 1);
  CHECK(hardy.profile(1) == 0);
  CHECK(hardy.determined(100));
  CHECK(hardy.determined(-100));

  auto hlp = hlp_kernel<Rational>(q2);
  CHECK(hlp.profile(3) == rat(1, 8));
  CHECK(hlp.profile(-2) == 1);
  CHECK(hlp.profile(0) == 1);

  auto hil = hilbert_kernel<Rational>(q2);
  CHECK(hil.lo() == -48);
  CHECK(hil.hi() == 48);
  CHECK(hil.profile(0) == rat(1, 2));
  CHECK(hil.profile(2) == rat(1, 5));
  CHECK(hil.profile(-3) == rat(8, 9));
  CHECK(hil.determined(48));
  CHECK_FALSE(hil.determined(49));
  CHECK_FALSE(hil.determined(-49));
  CHECK_THROWS_AS(hil.profile(49), tail_error);
  CHECK(hil.profile_abs_bound(49) == pow_int(rat(1, 2), 49));
  CHECK(hil.profile_abs_bound(-50) == 1);

  auto table = table_kernel<Rational>(q3, -1, {rat(2), rat(5)});
  CHECK(table.profile(-1) == 2);
  CHECK(table.profile(0) == 5);
  CHECK(table.profile(7) == 0);
  CHECK(table.determined(7));

  CHECK_THROWS_AS(KernelSpec<Rational>(q2, 0, {}), error);
  CHECK_THROWS_AS(KernelSpec<Rational>(q2, 0, {rat(1)}, KernelTail<Rational>{rat(1), rat(0)}),
                  tail_error);
  // a zero-coefficient descriptor is the same as no descriptor
  KernelSpec<Rational> zero_tail(q2, 0, {rat(1)}, KernelTail<Rational>{rat(0), rat(3)});
  CHECK_FALSE(zero_tail.lower_tail().has_value());
  CHECK(zero_tail.profile(-5) == 0);
}

TEST_CASE("homogeneity check accepts degree -1 kernels and rejects others", "[kernel]") {
  auto rep1 = homogeneity_check([](Real s, Real t) { return 1 / std::max(s, t); }, 2);
  CHECK(rep1.pass);
  CHECK(rep1.estimated_degree == Catch::Approx(-1.0).margin(1e-9));

  auto rep2 = homogeneity_check([](Real s, Real t) { return 1 / (s + t); }, 3);
  CHECK(rep2.pass);
  CHECK(rep2.estimated_degree == Catch::Approx(-1.0).margin(1e-9));

  auto rep3 = homogeneity_check([](Real s, Real t) { return 1 / (s * t); }, 2);
  CHECK_FALSE(rep3.pass);
  CHECK(rep3.max_rel_violation > 0.5);
  CHECK(rep3.estimated_degree == Catch::Approx(-2.0).margin(1e-6));
}

TEST_CASE("ball averaging of a ball indicator gives the bracket profile", "[kernel]") {
  for (long q : {2L, 3L, 5L}) {
    const FieldParams fp{q};
    auto K = hardy_kernel<Rational>(fp);
    auto f = char_ball<Rational>(0);
    auto res = apply_operator(K, f);
    CHECK(res.exact);
    CHECK(res.error_bound == 0);
    CHECK(same_function(res.value, bracket_profile<Rational>(fp, 1)));
  }
}

TEST_CASE("two-sided averaging of a ball indicator is affine in the level", "[kernel]") {
  auto K = hlp_kernel<Rational>(q2);
  auto f = char_ball<Rational>(0);
  // the value grows linearly with the level, so no geometric representation exists
  CHECK_THROWS_AS(apply_operator(K, f), tail_error);
  // pointwise values follow 1 + (1 - 1/q) m on and above the unit sphere
  for (long m : {0L, 1L, 3L, 8L}) {
    auto p = apply_operator_at(K, f, m);
    CHECK(p.exact);
    CHECK(p.value == 1 + rat(1, 2) * rat(m));
  }
  // below it the kernel is flat and the sum telescopes to q^m
  auto p = apply_operator_at(K, f, -4);
  CHECK(p.exact);
  CHECK(p.value == rat(1, 16));
}

TEST_CASE("point-mass kernel scales the input by the unit sphere measure", "[kernel]") {
  auto K = table_kernel<Rational>(q2, 0, {rat(1)});
  RadialFunction<Rational> f(-1, {rat(1, 2), rat(2), rat(1)},
                             GeometricTail<Rational>{rat(3, 10), rat(9)},
                             GeometricTail<Rational>{rat(1), rat(7, 10)});
  auto res = apply_operator(K, f);
  CHECK(res.exact);
  CHECK(res.error_bound == 0);
  CHECK(same_function(res.value, f.scaled(rat(1, 2))));
}

TEST_CASE("operator result matches direct convolution sums", "[kernel]") {
  // lower descriptor forces a windowed lower side; the upper side settles to a constant
  RadialFunction<Real> f(-1, {0.5L, 2.0L, 1.0L}, GeometricTail<Real>{0.3L, 9.0L}, {});
  auto K = hlp_kernel<Real>(q2);
  auto res = apply_operator(K, f);
  CHECK_FALSE(res.exact);
  CHECK(res.error_bound > 0);
  REQUIRE(res.value.upper_tail().has_value());
  CHECK(res.value.upper_tail()->sigma == 1.0L);
  CHECK(res.value.upper_tail()->c == Catch::Approx(1.7520833333333333333L).epsilon(1e-15));
  CHECK_FALSE(res.value.lower_tail().has_value());

  const struct {
    long m;
    Real want;
  } inside[] = {
      {-3, 0.219907407407407407407L}, {-2, 0.439583333333333333333L},
      {0, 1.50208333333333333333L},   {2, 1.75208333333333333333L},
      {3, 1.75208333333333333333L},   {5, 1.75208333333333333333L},
      {9, 1.75208333333333333333L},
  };
  for (const auto& c : inside)
    CHECK(res.value.eval(c.m) == Catch::Approx(c.want).epsilon(1e-14));
  // below the window the representation is zero; the certificate covers what was dropped
  CHECK(res.value.eval(-6) == 0.0L);
  CHECK(res.error_bound >= 0.0274925141619671797998L);

  // pointwise evaluation agrees with the direct sums everywhere, dropped region included
  for (long m : {-6L, -3L, 0L, 5L})
    CHECK(apply_operator_at(K, f, m).value ==
          Catch::Approx(m == -6   ? 0.0274925141619671798L
                        : m == -3 ? 0.21990740740740740741L
                        : m == 0  ? 1.5020833333333333333L
                                  : 1.7520833333333333333L)
              .epsilon(1e-14));
}

TEST_CASE("a function with both descriptors can still be evaluated pointwise", "[kernel]") {
  RadialFunction<Real> f(-1, {0.5L, 2.0L, 1.0L}, GeometricTail<Real>{0.3L, 9.0L},
                         GeometricTail<Real>{1.0L, 0.7L});
  auto K = hlp_kernel<Real>(q2);
  // the large-radius side mixes a decaying law with a constant one
  CHECK_THROWS_AS(apply_operator(K, f), tail_error);
  const struct {
    long m;
    Real want;
  } probes[] = {
      {-6, 0.0289648699311979490306L}, {-3, 0.231686253561253561254L},
      {0, 1.59631410256410256410L},    {2, 2.12900641025641025641L},
      {5, 2.41791794871794871795L},    {9, 2.53253522448717948718L},
  };
  for (const auto& c : probes) {
    auto p = apply_operator_at(K, f, c.m);
    CHECK(p.exact);
    CHECK(p.value == Catch::Approx(c.want).epsilon(1e-14));
  }
}

TEST_CASE("divergent operator sums are rejected", "[kernel]") {
  auto hlp = hlp_kernel<Real>(q2);
  // small-radius decay too slow against a flat kernel end: sigma- <= q * sigma_K+
  RadialFunction<Real> flat(0, {1.0L}, GeometricTail<Real>{1.0L, 1.0L}, {});
  CHECK_THROWS_AS(apply_operator_at(hlp, flat, 0), divergence_error);
  RadialFunction<Real> slow(0, {1.0L}, GeometricTail<Real>{1.0L, 0.5L}, {});
  CHECK_THROWS_AS(apply_operator(hlp, slow), divergence_error);

  // growth matching the kernel's flat side exactly: sigma+ >= q * sigma_K-
  auto hardy = hardy_kernel<Real>(q2);
  RadialFunction<Real> grow(0, {1.0L}, {}, GeometricTail<Real>{1.0L, 2.0L});
  CHECK_THROWS_AS(apply_operator(hardy, grow), divergence_error);

  // with a bounding descriptor the same boundary is a certification failure instead
  auto hil = hilbert_kernel<Real>(q2);
  RadialFunction<Real> slow2(0, {1.0L}, GeometricTail<Real>{1.0L, 0.5L}, {});
  CHECK_THROWS_AS(apply_operator_at(hil, slow2, 0), tail_error);
}

TEST_CASE("mixed geometric laws fall back to a certified window", "[kernel]") {
  KernelSpec<Real> K(q2, 0, {1.0L}, KernelTail<Real>{1.0L, 1.0L},
                     KernelTail<Real>{1.0L, 0.25L});
  RadialFunction<Real> f(-1, {0.5L, 2.0L, 1.0L}, GeometricTail<Real>{0.3L, 9.0L},
                         GeometricTail<Real>{1.0L, 0.7L});
  auto res = apply_operator(K, f);
  CHECK_FALSE(res.exact);
  CHECK(res.error_bound > 0);
  CHECK_FALSE(res.value.lower_tail().has_value());
  CHECK_FALSE(res.value.upper_tail().has_value());

  const struct {
    long m;
    Real want;
  } inside[] = {
      {-3, 0.231672637003519356461L}, {-1, 0.923095776772247360483L},
      {0, 1.46972096530920060332L},   {2, 0.908295625942684766214L},
      {3, 0.652032428355957767722L},
  };
  for (const auto& c : inside)
    CHECK(res.value.eval(c.m) == Catch::Approx(c.want).epsilon(1e-14));

  // outside the window the certificate dominates the true values on both sides
  CHECK(res.error_bound >= 0.232490015082956259427L);   // m = 6
  CHECK(res.error_bound >= 0.0808494366930618401207L);  // m = 9
  CHECK(res.error_bound >= 0.115854473912071951288L);   // m = -4
  CHECK(res.error_bound >= 0.0289648512527922779678L);  // m = -6
  for (long m : {6L, 9L, -4L, -6L}) {
    CHECK(res.value.eval(m) == 0.0L);
    CHECK(std::abs(apply_operator_at(K, f, m).value) <= res.error_bound);
  }
}

TEST_CASE("confluent laws fall back to a certified window", "[kernel]") {
  // q * sigma_K+ equals the input ratio exactly, producing an (a + b m) sigma^m law
  KernelSpec<Rational> K(q2, 0, {rat(1)}, {}, KernelTail<Rational>{rat(1), rat(7, 20)});
  RadialFunction<Rational> f(0, {rat(1)}, {}, GeometricTail<Rational>{rat(1), rat(7, 10)});
  auto res = apply_operator(K, f);
  CHECK_FALSE(res.exact);
  CHECK_FALSE(res.value.upper_tail().has_value());
  CHECK_FALSE(res.value.lower_tail().has_value());

  // law: (1/2) (m + 1) (7/10)^m for m >= 0, exactly
  CHECK(res.value.eval(-1) == 0);
  CHECK(res.value.eval(0) == rat(1, 2));
  CHECK(res.value.eval(1) == rat(7, 10));
  CHECK(res.value.eval(2) == rat(147, 200));
  for (long m : {3L, 5L, 7L}) {
    auto p = apply_operator_at(K, f, m);
    CHECK(p.exact);
    CHECK(p.value == rat(m + 1, 2) * pow_int(rat(7, 10), m));
    CHECK(res.error_bound >= p.value);
  }
}

TEST_CASE("wide-window kernel evaluates pointwise with tiny certificates", "[kernel]") {
  auto K = hilbert_kernel<Real>(q2);
  auto f = char_ball<Real>(0);
  auto p0 = apply_operator_at(K, f, 0);
  CHECK_FALSE(p0.exact);
  CHECK(p0.error_bound <= 1e-12L);
  CHECK(std::abs(p0.value - 0.632249890174222104596L) <= p0.error_bound + 1e-15L);

  auto p3 = apply_operator_at(K, f, 3);
  CHECK(p3.error_bound <= 1e-12L);
  CHECK(std::abs(p3.value - 1.81002766795199988237L) <= p3.error_bound + 1e-14L);

  // the full operator image never settles onto a geometric law it can certify
  CHECK_THROWS_AS(apply_operator(K, f), tail_error);
  RadialFunction<Real> compact(0, {1.0L});
  CHECK_THROWS_AS(apply_operator(K, compact), tail_error);
}
