#include <lfa/serialize.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace lfa;

namespace {
Rational rat(long n, long d = 1) { return Rational(n) / Rational(d); }
}  // namespace

TEST_CASE("radial functions round-trip through json", "[serialize]") {
  RadialFunction<Rational> f(-2, {rat(3), rat(1, 3), rat(4)},
                             GeometricTail<Rational>{rat(2), rat(3)},
                             GeometricTail<Rational>{rat(1), rat(1, 3)});
  Json j = radial_to_json(f);
  CHECK(j["lo"] == -2);
  CHECK(j["values"][1] == "1/3");
  CHECK(j["lower_tail"]["sigma"] == "3");
  auto g = radial_from_json<Rational>(j);
  CHECK(same_function(f, g));
  CHECK(g.lower_tail() == f.lower_tail());
  CHECK(g.upper_tail() == f.upper_tail());

  // floating variant with dyadic values survives the double wire format
  RadialFunction<Real> h(0, {0.5L, 2.0L}, {}, GeometricTail<Real>{0.25L, 0.125L});
  auto h2 = radial_from_json<Real>(radial_to_json(h));
  CHECK(h2.lo() == 0);
  CHECK(h2.eval(1) == 2.0L);
  CHECK(h2.upper_tail()->sigma == 0.125L);
  CHECK_FALSE(h2.lower_tail().has_value());

  auto z = radial_from_json<Rational>(radial_to_json(RadialFunction<Rational>::zero()));
  CHECK(z.is_zero());
}

TEST_CASE("kernel specs round-trip with bound flags intact", "[serialize]") {
  auto K = hilbert_kernel<Rational>(FieldParams{2}, 6);
  Json j = kernel_to_json(K);
  CHECK(j["q"] == 2);
  CHECK(j["upper_tail"]["is_bound"] == true);
  auto K2 = kernel_from_json<Rational>(j);
  CHECK(K2.lo() == K.lo());
  CHECK(K2.profile(3) == rat(1, 9));
  CHECK(K2.upper_tail()->is_bound);
  CHECK(K2.lower_tail()->is_bound);

  auto H = hardy_kernel<Real>(FieldParams{3});
  auto H2 = kernel_from_json<Real>(kernel_to_json(H));
  CHECK(H2.profile(-4) == 1.0L);
  CHECK_FALSE(H2.upper_tail().has_value());
  CHECK_FALSE(H2.lower_tail()->is_bound);

  // a rational string is accepted for a floating scalar
  Json mixed = kernel_to_json(H);
  mixed["values"][0] = "3/4";
  CHECK(kernel_from_json<Real>(mixed).profile(0) == 0.75L);
}

TEST_CASE("weight specs round-trip and reject malformed input", "[serialize]") {
  auto phi = phi_envelope(2.0L);
  Json j = phi_to_json(phi);
  CHECK(j["segments"][0]["start"] == "-inf");
  CHECK(j["segments"][1]["start"] == 0);
  auto phi2 = phi_from_json(j);
  for (long k : {-7L, -1L, 0L, 3L, 12L})
    CHECK(phi_eval(phi2, 2, k) == phi_eval(phi, 2, k));

  PhiSpec custom({{std::nullopt, 2.0L, 0.0L}, {-1, 3.0L, 1.0L}, {4, 5.0L, 0.5L}});
  auto custom2 = phi_from_json(phi_to_json(custom));
  for (long k : {-10L, -1L, 0L, 4L, 9L})
    CHECK(phi_eval(custom2, 3, k) == Catch::Approx(phi_eval(custom, 3, k)).epsilon(1e-15));

  Json bad = phi_to_json(custom);
  bad["segments"][1]["start"] = "-inf";  // only the first segment may be unbounded
  CHECK_THROWS_AS(phi_from_json(bad), error);
  Json empty{{"segments", Json::array()}};
  CHECK_THROWS_AS(phi_from_json(empty), error);
}

TEST_CASE("digit elements round-trip including the zero element", "[serialize]") {
  auto x = laurent_make(3, -2, {1, 0, 2}, 5);
  auto x2 = laurent_from_json(laurent_to_json(x));
  CHECK(x2.p == 3);
  CHECK(x2.valuation == x.valuation);
  CHECK(x2.digits == x.digits);
  CHECK(x2.depth == 5);

  auto z = laurent_make(2, 0, {0, 0}, 4);
  auto z2 = laurent_from_json(laurent_to_json(z));
  CHECK(z2.is_zero());
  CHECK(z2.depth == 4);
}

TEST_CASE("result types serialize with readable sentinels", "[serialize]") {
  auto fine = bound_to_json(hlp_bound_constant(FieldParams{2}, 2.0L, 0.5L));
  CHECK(fine["finite"] == true);
  CHECK(fine["mode"] == "closed_form");
  CHECK(fine["value"].is_number());

  auto bad = bound_to_json(hlp_bound_constant(FieldParams{2}, 2.0L, 1.0L));
  CHECK(bad["finite"] == false);
  CHECK(bad["value"] == "inf");
  CHECK(bad["condition"] == "alpha > 0 and alpha + 1 < r");

  // dilation-flat weight: the supremum is a plateau running to -infinity
  MorreyParams P{FieldParams{2}, 2.0L, 1.0L, phi_lebesgue(2.0L)};
  auto n = norm_to_json(morrey_norm(char_ball<Real>(0), P));
  CHECK(n["finite"] == true);
  CHECK(n["argmax"].is_null());
  CHECK(n["argmax_at_minus_infinity"] == true);

  MorreyParams P2{FieldParams{2}, 2.0L, 1.0L, phi_central(4.0L)};
  auto n2 = norm_to_json(morrey_norm(char_sphere<Real>(0), P2));
  CHECK(n2["argmax"] == 0);
  CHECK(n2["argmax_at_minus_infinity"] == false);

  auto res = apply_operator(hardy_kernel<Rational>(FieldParams{2}), char_ball<Rational>(0));
  auto oj = operator_result_to_json(res);
  CHECK(oj["exact"] == true);
  CHECK(oj["error_bound"] == "0");
  CHECK(oj["function"]["upper_tail"]["sigma"] == "1");
}
