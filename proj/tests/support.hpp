#pragma once

// Shared fixtures for the test programs: seeded trigonometric polynomials and small helpers.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "vbtl/grid.hpp"
#include "vbtl/random.hpp"

namespace vbtl::testing {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Random trigonometric polynomial with integer modes |k_i| <= max_mode.
inline SampledFunction random_trig(const Grid& g, std::uint64_t seed, std::uint64_t index, long max_mode,
                                   bool real_valued = true) {
  auto rng = make_stream(seed, index);
  std::normal_distribution<double> normal;
  Spectrum s(g, ComplexField(g.size()));
  const long lim1 = g.dim() == 2 ? max_mode : 0;
  for (long k0 = -max_mode; k0 <= max_mode; ++k0)
    for (long k1 = -lim1; k1 <= lim1; ++k1) {
      const auto n = static_cast<long>(g.n());
      const std::size_t i0 = static_cast<std::size_t>((k0 + n) % n);
      const std::size_t i1 = static_cast<std::size_t>((k1 + n) % n);
      s.coefficients()[g.index(i0, i1)] = Complex(normal(rng), normal(rng));
    }
  SampledFunction f = idft(s);
  if (!real_valued) return f;
  ComplexField v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i].real();
  return {g, std::move(v)};
}

inline double rel_diff(double a, double b) {
  const double m = std::max(std::abs(a), std::abs(b));
  return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

inline double max_abs_diff(const SampledFunction& a, const SampledFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace vbtl::testing
