#include <catch_amalgamated.hpp>

#include <sstream>

#include "support.hpp"
#include "vbtl/csv_io.hpp"
#include "vbtl/grid.hpp"

using namespace vbtl;
using vbtl::testing::kTwoPi;

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid(3, 16, 1.0), InvalidConfig);
  CHECK_THROWS_AS(Grid(1, 12, 1.0), InvalidConfig);
  CHECK_THROWS_AS(Grid(1, 4, 1.0), InvalidConfig);
  CHECK_THROWS_AS(Grid(1, 16, 0.0), InvalidConfig);
  const Grid g(2, 16, 2.0);
  CHECK(g.size() == 256);
  CHECK(g.spacing() == 0.125);
  CHECK(g.cell_volume() == 0.125 * 0.125);
}

TEST_CASE("periodic distance uses the minimum image") {
  const Grid g(1, 8, 1.0);
  CHECK(g.periodic_distance(0, 7) == 0.125);
  CHECK(g.periodic_distance(1, 5) == 0.5);
  CHECK(g.periodic_distance(Point{0.05, 0.0}, Point{0.95, 0.0}) == Catch::Approx(0.1));
  const Grid g2(2, 8, 1.0);
  CHECK(g2.periodic_distance(g2.index(0, 0), g2.index(7, 7)) == Catch::Approx(std::sqrt(2.0) * 0.125));
}

TEST_CASE("dft is unitary and inverts") {
  const Grid g(1, 64, kTwoPi);
  const auto f = testing::random_trig(g, 1, 0, 20, false);
  const auto back = idft(dft(f));
  CHECK(testing::max_abs_diff(f, back) < 1e-13);
  RealField sq(f.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = std::norm(f[i]);
  CHECK(dft(f).energy() == Catch::Approx(quadrature(g, sq)).epsilon(1e-12));
}

TEST_CASE("single mode lands at its frequency") {
  const Grid g(2, 16, kTwoPi);
  const auto f = SampledFunction::from(g, [](const Point& x) { return std::polar(1.0, 3 * x[0] - 2 * x[1]); });
  const Spectrum s = dft(f);
  CHECK(std::abs(s.at_mode(3, -2)) == Catch::Approx(16.0));
  const auto w = g.frequency(g.index(3, 14));
  CHECK(w[0] == Catch::Approx(3.0));
  CHECK(w[1] == Catch::Approx(-2.0));
}

TEST_CASE("spectral shift matches analytic translation") {
  const Grid g(1, 32, 1.0);
  const auto f = SampledFunction::from(g, [](const Point& x) { return std::cos(kTwoPi * 3 * x[0]); });
  const double off = 0.0137;
  const auto shifted = periodic_shift_sample(f, {off, 0.0});
  const auto expect = SampledFunction::from(g, [&](const Point& x) { return std::cos(kTwoPi * 3 * (x[0] + off)); });
  CHECK(testing::max_abs_diff(shifted, expect) < 1e-13);
  const auto cells = shift_by_cells(g, f.values(), 5);
  CHECK(std::abs(cells[0] - f[5]) == 0.0);
}

TEST_CASE("convolution with a discrete delta returns the function") {
  const Grid g(1, 32, 2.0);
  const auto f = testing::random_trig(g, 3, 0, 10);
  ComplexField d(g.size());
  d[0] = 1.0 / g.cell_volume();
  const auto c = periodic_convolution(f, SampledFunction(g, d));
  CHECK(testing::max_abs_diff(c, f) < 1e-12);
}

TEST_CASE("quadrature rejects non-finite values") {
  const Grid g(1, 8, 1.0);
  RealField v(8, 1.0);
  CHECK(quadrature(g, v) == 1.0);
  v[3] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(quadrature(g, v), InvalidInput);
}

TEST_CASE("sampled function rejects NaN") {
  const Grid g(1, 8, 1.0);
  RealField v(8, 0.0);
  v[2] = std::nan("");
  CHECK_THROWS_AS(SampledFunction(g, v), InvalidInput);
}

TEST_CASE("csv round trip is bit exact") {
  const Grid g(2, 8, 3.0);
  const auto f = testing::random_trig(g, 9, 0, 3, false);
  std::stringstream ss;
  write_samples(ss, f);
  const auto back = read_samples(ss);
  CHECK(back.grid() == g);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);
}

TEST_CASE("csv 1D header is optional") {
  std::stringstream ss("0\n1\n2\n3\n4\n5\n6\n7\n");
  const auto f = read_samples(ss);
  CHECK(f.grid().n() == 8);
  CHECK(f.grid().period() == Catch::Approx(kTwoPi));
  CHECK(f[5].real() == 5.0);
}

TEST_CASE("csv errors carry the line number") {
  std::stringstream ss("# dim=1 n=8 period=1\n0\n1\nabc\n");
  try {
    read_samples(ss);
    FAIL("expected an error");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}
