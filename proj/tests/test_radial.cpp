#include <catch2/catch_amalgamated.hpp>

#include <lfa/laurent.hpp>
#include <lfa/radial.hpp>

#include <cmath>

using namespace lfa;

namespace {

RadialFunction<Rational> random_profile(Rng& rng, long lo, long hi) {
  std::vector<Rational> vals;
  for (long m = lo; m <= hi; ++m) vals.emplace_back(static_cast<long>(rng.below(10)));
  return RadialFunction<Rational>(lo, std::move(vals));
}

}  // namespace

TEST_CASE("profile evaluation with tails", "[radial]") {
  FieldParams q2{2};
  auto br = bracket_profile<Rational>(q2, 1L);
  CHECK(br.eval(-3) == Rational(1, 8));  // |y| = 8 -> 1/|y|
  CHECK(br.eval(0) == 1);
  CHECK(br.eval(7) == 1);
  auto ball = char_ball<Rational>(2);
  CHECK(ball.eval(1) == 0);
  CHECK(ball.eval(2) == 1);
  CHECK(ball.eval(9) == 1);
  auto sph = char_sphere<Rational>(-1);
  CHECK(sph.eval(-1) == 1);
  CHECK(sph.eval(0) == 0);
  CHECK_THROWS_AS(RadialFunction<Rational>(0, {}), error);
}

TEST_CASE("sum merges windows and compatible tails", "[radial]") {
  auto sum = add(char_sphere<Rational>(0), char_ball<Rational>(1));
  CHECK(same_function(sum, char_ball<Rational>(0)));

  // same ratio: coefficients add; distinct ratios cannot be represented
  RadialFunction<Rational> f(0, {Rational(1)}, {}, GeometricTail<Rational>{1, Rational(1, 2)});
  RadialFunction<Rational> g(0, {Rational(2)}, {}, GeometricTail<Rational>{3, Rational(1, 2)});
  auto fg = add(f, g);
  REQUIRE(fg.upper_tail().has_value());
  CHECK(fg.upper_tail()->c == 4);
  RadialFunction<Rational> h(0, {Rational(1)}, {}, GeometricTail<Rational>{1, Rational(1, 3)});
  CHECK_THROWS_AS(add(f, h), tail_error);

  // cancelling coefficients erase the tail
  auto cancel = add(f, f.scaled(Rational(-1)));
  CHECK(cancel.is_zero());
}

TEST_CASE("dilation shifts the profile", "[radial]") {
  for (long l : {-3L, -1L, 0L, 2L, 5L}) {
    CHECK(same_function(dilate(char_ball<Rational>(0), l), char_ball<Rational>(-l)));
  }
  auto br = bracket_profile<Rational>(FieldParams{3}, 2L);
  auto d = dilate(br, 4);
  for (long m = -6; m <= 6; ++m) CHECK(d.eval(m) == br.eval(m + 4));
}

TEST_CASE("canonical form trims implied edges", "[radial]") {
  // window values that just restate the tails collapse away
  RadialFunction<Rational> f(-2, {Rational(4), Rational(2), Rational(1), Rational(1)},
                             GeometricTail<Rational>{1, Rational(1, 2)},
                             GeometricTail<Rational>{1, 1});
  auto s = f.simplified();
  CHECK(s.lo() == s.hi());
  CHECK(s.eval(-2) == 4);  // c sigma^-2 = (1/2)^-2
  for (long m = -5; m <= 5; ++m) CHECK(s.eval(m) == f.eval(m));
}

TEST_CASE("field integral in closed form", "[radial]") {
  FieldParams q2{2};
  CHECK(haar_integral(bracket_profile<Rational>(q2, 2L), q2) == Rational(3, 2));
  for (long k : {-3L, 0L, 5L})
    CHECK(haar_integral(char_ball<Rational>(k), q2) == qpow<Rational>(2, -k));
  CHECK(haar_integral(char_sphere<Rational>(0), FieldParams{5}) == Rational(4, 5));

  // boundary ratios diverge on both sides
  RadialFunction<Rational> slow(0, {Rational(1)}, {}, GeometricTail<Rational>{1, 2});
  CHECK_THROWS_AS(haar_integral(slow, q2), non_integrable_error);
  RadialFunction<Rational> heavy(0, {Rational(1)}, GeometricTail<Rational>{1, 2}, {});
  CHECK_THROWS_AS(haar_integral(heavy, q2), non_integrable_error);

  // linearity and the dilation change of variables
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    auto f = random_profile(rng, -4, 3), g = random_profile(rng, -2, 5);
    CHECK(haar_integral(add(f, g), q2) == haar_integral(f, q2) + haar_integral(g, q2));
    const long l = rng.range(-4, 4);
    CHECK(haar_integral(dilate(f, l), q2) == qpow<Rational>(2, l) * haar_integral(f, q2));
  }
}

TEST_CASE("monte carlo agreement on a ball", "[radial]") {
  Rng rng(31337);
  auto f = random_profile(rng, -4, 4);
  FieldParams fp{3};
  const Rational exact = haar_integral(f, fp);  // support starts at -4
  const int n = 100000;
  Rng mc(777);
  double sum = 0, sumsq = 0;
  for (int i = 0; i < n; ++i) {
    auto x = sample_haar(fp.q, {SampleRegion::Kind::ball, -4}, 12, mc);
    const long m = x.is_zero() ? f.hi() + 1 : *x.valuation;
    const double v = to_real(f.eval(m));
    sum += v;
    sumsq += v * v;
  }
  const double ball = std::pow(3.0, 4);  // |B^-4|
  const double mean = sum / n;
  const double var = (sumsq / n - mean * mean) / n;
  const double est = ball * mean;
  const double sigma = ball * std::sqrt(var);
  CHECK(std::abs(est - to_real(exact)) <= 3 * sigma);
}

TEST_CASE("weighted ball integral of indicators", "[radial]") {
  for (long q : {2L, 5L}) {
    FieldParams fp{q};
    for (long alpha : {1L, 2L}) {
      for (long eta : {-4L, 0L, 3L}) {
        auto chi = char_ball<Rational>(eta);
        for (long k = -8; k <= 8; ++k) {
          const Rational expect =
              weighted_ball_measure<Rational>(fp, std::max(k, eta), alpha);
          CHECK(weighted_ball_integral(chi, k, 1L, alpha, fp) == expect);
        }
      }
    }
  }
  // r only weights the values; the indicator is insensitive to it
  auto chi = char_ball<Rational>(0);
  CHECK(weighted_ball_integral(chi, 0, 3L, 1L, FieldParams{2}) == Rational(2, 3));
}

TEST_CASE("weighted integral convergence control", "[radial]") {
  FieldParams q2{2};
  // upper tail at the critical ratio sigma^r = q^(alpha+1)
  RadialFunction<Rational> crit(0, {Rational(1)}, {}, GeometricTail<Rational>{1, 2});
  CHECK_THROWS_AS(weighted_ball_integral(crit, 0, 2L, 1L, q2), non_integrable_error);
  CHECK_NOTHROW(weighted_ball_integral(crit, 0, 2L, 3L, q2));

  // full-field integral of the bracket profile, float path vs direct sums
  const Real r = 2.0L, alpha = 0.5L;
  auto br = bracket_profile<Real>(q2, 2.0L);
  const Real total = weighted_integral(br, r, alpha, q2);
  Real direct = 0;
  for (long l = -200; l <= 200; ++l) {
    const Real v = std::abs(br.eval(l));
    direct += std::pow(v, r) * std::pow(2.0L, -l * (alpha + 1)) * 0.5L;
  }
  CHECK(std::abs(total - direct) <= 1e-12L * total);

  // sub-critical lower tail diverges over the full field
  auto slow = bracket_profile<Real>(q2, 0.5L);  // sigma-^r = 2 < q^(alpha+1)
  CHECK_THROWS_AS(weighted_integral(slow, r, alpha, q2), non_integrable_error);
}
