#include <catch_amalgamated.hpp>

#include "support.hpp"
#include "vbtl/differences.hpp"

using namespace vbtl;
using vbtl::testing::kTwoPi;

TEST_CASE("first difference of a trigonometric polynomial") {
  const Grid g(1, 64, kTwoPi);
  const auto f = SampledFunction::from(g, [](const Point& x) { return std::sin(3 * x[0]) + 0.5 * std::cos(x[0]); });
  const double h = 0.3;
  const auto d = finite_difference(f, {h, 0.0}, 1);
  const auto expect = SampledFunction::from(g, [h](const Point& x) {
    return std::sin(3 * (x[0] + h)) + 0.5 * std::cos(x[0] + h) - std::sin(3 * x[0]) - 0.5 * std::cos(x[0]);
  });
  CHECK(testing::max_abs_diff(d, expect) < 1e-13);
}

TEST_CASE("difference multiplier on exponentials") {
  const Grid g(2, 32, kTwoPi);
  const Point h{0.11, -0.07};
  for (int M = 1; M <= 4; ++M) {
    const auto f = SampledFunction::from(g, [](const Point& x) { return std::polar(1.0, 5 * x[0] - 2 * x[1]); });
    const Complex m = std::pow(std::polar(1.0, 5 * h[0] - 2 * h[1]) - 1.0, M);
    CHECK(testing::max_abs_diff(finite_difference(f, h, M), f.scaled(m)) < 1e-10);
  }
}

TEST_CASE("differences annihilate constants exactly") {
  for (const Grid g : {Grid(1, 512, kTwoPi), Grid(2, 64, 1.0)}) {
    const auto c = SampledFunction::constant(g, 2.718281828);
    for (int M = 1; M <= 4; ++M) {
      const auto d = finite_difference(c, {0.37, 0.21}, M);
      for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == Complex(0.0));
    }
  }
}

TEST_CASE("closed form agrees with the inductive definition") {
  const Grid g(1, 256, kTwoPi);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto f = testing::random_trig(g, seed, 0, 60, false);
    for (int M = 1; M <= 4; ++M) {
      const Point h{0.05 + 0.1 * static_cast<double>(seed), 0.0};
      CHECK(testing::max_abs_diff(finite_difference(f, h, M), finite_difference_inductive(f, h, M)) < 1e-10 * f.max_abs() * std::exp2(M));
    }
  }
}

TEST_CASE("difference order must be positive") {
  const Grid g(1, 16, 1.0);
  CHECK_THROWS_AS(finite_difference(SampledFunction::zero(g), {0.1, 0.0}, 0), InvalidConfig);
  CHECK_THROWS_AS(ball_means(SampledFunction::zero(g), 0.1, 0), InvalidConfig);
}

TEST_CASE("ball means of constants vanish on both lattices") {
  for (const Grid g : {Grid(1, 256, kTwoPi), Grid(2, 32, kTwoPi)}) {
    const auto c = SampledFunction::constant(g, -1.5);
    for (double t : {g.spacing(), 8 * g.spacing()}) {
      for (double v : ball_means(c, t, 2)) CHECK(v == 0.0);
    }
  }
}

TEST_CASE("ball means of a sawtooth reproduce t") {
  const Grid g(1, 1024, kTwoPi);
  RealField v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = g.coordinate(i)[0] - std::numbers::pi;
  const SampledFunction f(g, v);
  for (int k = 1; k <= 4; ++k) {
    const double t = std::ldexp(1.0, -k);
    const RealField d = ball_means(f, t, 1);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.coordinate(i)[0];
      if (x < t + 0.1 || x > kTwoPi - t - 0.1) continue;
      CHECK(std::abs(d[i] - t) <= 0.02 * t);
    }
  }
}

TEST_CASE("ball means are nonnegative and homogeneous") {
  const Grid g(1, 256, kTwoPi);
  const auto f = testing::random_trig(g, 12, 0, 40);
  for (double t : {0.01, 0.3}) {
    const RealField a = ball_means(f, t, 2);
    const RealField b = ball_means(f.scaled(-2.5), t, 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i] >= 0.0);
      CHECK(b[i] == Catch::Approx(2.5 * a[i]).epsilon(1e-12).margin(1e-300));
    }
  }
}

TEST_CASE("ball means of a spike are monotone in the spike height") {
  const Grid g(1, 128, kTwoPi);
  RealField a(g.size(), 0.0), b(g.size(), 0.0);
  a[40] = 1.0;
  b[40] = 2.0;
  const RealField da = ball_means(SampledFunction(g, a), 0.5, 2);
  const RealField db = ball_means(SampledFunction(g, b), 0.5, 2);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(da[i] <= db[i]);
}

TEST_CASE("grid and sub-lattice quadratures agree for smooth functions") {
  const Grid g(1, 512, kTwoPi);
  const auto f = SampledFunction::from(g, [](const Point& x) { return std::sin(x[0]) + 0.2 * std::cos(4 * x[0]); });
  const double h = g.spacing();
  const RealField below = ball_means(f, 3.999 * h, 1);
  const RealField above = ball_means(f, 4.0 * h, 1);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    worst = std::max(worst, std::abs(below[i] - above[i]));
    scale = std::max(scale, above[i]);
  }
  CHECK(worst <= 0.02 * scale);
}

TEST_CASE("ball means of a linear phase in 2D") {
  // |Delta_h e^{i w.x}| = 2 |sin(w.h / 2)|, so d_t is the ball average of that profile.
  const Grid g(2, 64, kTwoPi);
  const auto f = SampledFunction::from(g, [](const Point& x) { return std::polar(1.0, 2.0 * x[0] + 1.0 * x[1]); });
  const double t = 0.5;
  double integral = 0.0;
  const int S = 1000;
  for (int a = 0; a < S; ++a)
    for (int b = 0; b < S; ++b) {
      const double x = -t + (a + 0.5) * 2 * t / S, y = -t + (b + 0.5) * 2 * t / S;
      if (x * x + y * y <= t * t) integral += 2 * std::abs(std::sin((2.0 * x + y) / 2)) * (2 * t / S) * (2 * t / S);
    }
  const RealField d = ball_means(f, t, 1);
  CHECK(d[0] == Catch::Approx(integral / (t * t)).epsilon(0.01));
  CHECK(d[777] == Catch::Approx(d[0]).epsilon(1e-12));
}

TEST_CASE("ball radius is limited to a quarter period") {
  const Grid g(1, 64, kTwoPi);
  CHECK_THROWS_AS(ball_means(SampledFunction::zero(g), 2.0, 1), InvalidConfig);
  CHECK(dyadic_radius(g, -3) == Catch::Approx(kTwoPi / 4));
  CHECK(dyadic_radius(g, 2) == 0.25);
}

TEST_CASE("difference norms of zero and constants") {
  const Grid g(1, 256, kTwoPi);
  const auto s = SmoothnessFunction::constant(g, 1.0);
  const auto p = VariableExponent::constant(g, 2.0);
  const KRange r = default_k_range(g);
  CHECK(r.lo == -6);
  CHECK(r.hi == 6);
  CHECK(besov_norm_differences(SampledFunction::zero(g), s, p, p, 2, r) == 0.0);
  const auto c = SampledFunction::constant(g, 1.5);
  const double lp = luxemburg_norm(c, p);
  CHECK(besov_norm_differences(c, s, p, p, 2, r) == lp);
  CHECK(tl_norm_differences(c, s, p, p, 2, r) == lp);
  CHECK(tl_norm_differences_continuous(c, s, p, p, 2, geometric_ladder(r.hi)) == lp);
}

TEST_CASE("difference norms require M > s+") {
  const Grid g(1, 64, kTwoPi);
  const auto s = SmoothnessFunction::constant(g, 1.5);
  const auto p = VariableExponent::constant(g, 2.0);
  try {
    besov_norm_differences(SampledFunction::zero(g), s, p, p, 1, {0, 2});
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("M > s+") != std::string::npos);
  }
  CHECK_THROWS_AS(tl_norm_differences_continuous(SampledFunction::zero(g), s, p, p, 2, {}), InvalidConfig);
}

TEST_CASE("truncated norm is bounded by the full one") {
  const Grid g(1, 256, kTwoPi);
  const auto f = testing::random_trig(g, 30, 0, 40);
  const auto s = SmoothnessFunction::constant(g, 0.8);
  const auto p = VariableExponent::constant(g, 1.5);
  const auto q = VariableExponent::constant(g, 2.5);
  const KRange full = default_k_range(g);
  for (Flavor fl : {Flavor::besov, Flavor::tl}) {
    CHECK(norm_differences(f, s, p, q, 2, {0, full.hi}, fl) <= norm_differences(f, s, p, q, 2, full, fl));
  }
}

TEST_CASE("2-microlocal norm with smoothness weights reproduces the s-version") {
  const Grid g(1, 256, kTwoPi);
  const auto f = testing::random_trig(g, 31, 0, 40);
  const auto s = SmoothnessFunction::constant(g, 1.0);
  const auto p = VariableExponent::constant(g, 2.0);
  const KRange r = default_k_range(g);
  const auto w = weights_from_smoothness(s, r.hi);
  CHECK(testing::rel_diff(besov_norm_differences_2ml(f, w, p, p, 2, r), besov_norm_differences(f, s, p, p, 2, r)) <
        1e-10);
  CHECK(testing::rel_diff(tl_norm_differences_2ml(f, w, p, p, 2, r), tl_norm_differences(f, s, p, p, 2, r)) < 1e-10);
  CHECK_THROWS_AS(besov_norm_differences_2ml(f, w, p, p, 2, {0, r.hi + 1}), InvalidConfig);
  CHECK_THROWS_AS(besov_norm_differences_2ml(f, w, p, p, 1, r), PreconditionError);
  const auto c = SampledFunction::constant(g, 2.0);
  CHECK(besov_norm_differences_2ml(c, w, p, p, 2, r) == luxemburg_norm(c, p));
}

TEST_CASE("condition reductions") {
  const Grid g(1, 64, kTwoPi);
  const auto two = VariableExponent::constant(g, 2.0);
  const auto half = VariableExponent::constant(g, 0.5);
  const auto s = SmoothnessFunction::constant(g, 0.3);
  for (Flavor fl : {Flavor::besov, Flavor::tl}) {
    const auto r = check_conditions(s, two, two, 2, fl);
    CHECK(r.sigma_p == 0.0);
    CHECK(r.sigma_pq == 0.0);
    CHECK(r.threshold_rhs == 0.0);
    CHECK(r.threshold_lhs == 0.3);
    CHECK(r.ok);
    const auto h = check_conditions(s, half, half, 2, fl);
    CHECK(h.threshold_rhs == 1.0);
    CHECK_FALSE(h.ok);
  }
  const auto bad = check_conditions(SmoothnessFunction::constant(g, 1.5), two, two, 1, Flavor::besov);
  CHECK_FALSE(bad.ok);
  CHECK(bad.violated.find("M > s+") != std::string::npos);
  const Grid g2(2, 16, kTwoPi);
  const auto h2 = check_conditions(SmoothnessFunction::constant(g2, 3.0), VariableExponent::constant(g2, 0.5),
                                   VariableExponent::constant(g2, 0.5), 4, Flavor::tl);
  CHECK(h2.threshold_rhs == 2.0);
  CHECK(h2.ok);
}

TEST_CASE("F-case conditions require finite exponents") {
  const Grid g(1, 32, kTwoPi);
  const auto r = check_conditions(SmoothnessFunction::constant(g, 1.0), VariableExponent::constant(g, 2.0),
                                  VariableExponent::constant(g, kInfinity), 2, Flavor::tl);
  CHECK_FALSE(r.exponents_ok);
  CHECK_FALSE(r.ok);
}
