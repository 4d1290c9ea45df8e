#pragma once

// Seeded test-function families for the stability experiments.
//
//   band_limited_random  complex Gaussian coefficients on |xi| <= 2^(J-1), scaled by max(1,|xi|)^-(decay+1/2)
//   gaussian_bump        exp(-|x - c|^2 / (2 w^2)) with seeded centre jitter and width
//   cusp                 |x - x0|^gamma, cut off smoothly before the antipode of x0
//   chirp                r^gamma sin(r^-beta), r = sqrt(|x - x0|^2 + (h/4)^2), same cutoff
//
// Distances are periodic. x0 is jittered inside one grid cell per sample so that samples differ.
// Every sample is normalized to unit L2 norm; all norms compared downstream are homogeneous.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "vbtl/filter_bank.hpp"
#include "vbtl/random.hpp"

namespace vbtl {

enum class FamilyKind { band_limited_random, gaussian_bump, cusp, chirp };

inline const char* to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::band_limited_random: return "band_limited_random";
    case FamilyKind::gaussian_bump: return "gaussian_bump";
    case FamilyKind::cusp: return "cusp";
    case FamilyKind::chirp: return "chirp";
  }
  return "?";
}

inline FamilyKind family_from_string(const std::string& s) {
  for (FamilyKind k : {FamilyKind::band_limited_random, FamilyKind::gaussian_bump, FamilyKind::cusp, FamilyKind::chirp})
    if (s == to_string(k)) return k;
  throw InvalidConfig("unknown family '" + s + "'");
}

struct FamilySpec {
  FamilyKind kind = FamilyKind::band_limited_random;
  double gamma = 0.5;         // cusp and chirp exponent
  double beta = 1.0;          // chirp oscillation exponent
  std::optional<Point> x0;    // singular point; centre of the torus when unset
  double decay = 1.0;         // spectral decay for band_limited_random
  std::optional<int> top_level;  // J for band_limited_random; grid default when unset
};

inline void validate_family(const FamilySpec& f) {
  if ((f.kind == FamilyKind::cusp || f.kind == FamilyKind::chirp) && !(f.gamma > 0.0 && std::isfinite(f.gamma)))
    throw InvalidConfig("family gamma must be positive");
  if (f.kind == FamilyKind::chirp && !(f.beta > 0.0 && std::isfinite(f.beta)))
    throw InvalidConfig("chirp beta must be positive");
  if (!std::isfinite(f.decay)) throw InvalidConfig("family decay must be finite");
}

namespace detail {

inline SampledFunction normalized(const SampledFunction& f) {
  RealField m2(f.size());
  for (std::size_t i = 0; i < m2.size(); ++i) m2[i] = std::norm(f[i]);
  const double e = quadrature(f.grid(), m2);
  if (!(e > 0.0)) throw NumericFailure("family sample is identically zero");
  return f.scaled(1.0 / std::sqrt(e));
}

// 1 up to a quarter period, 0 from three eighths on.
inline double wrap_cutoff(double d, double period) { return smooth_step((d - period / 4) / (period / 8)); }

}  // namespace detail

inline SampledFunction make_family_sample(const FamilySpec& spec, const Grid& grid, std::uint64_t seed,
                                          std::uint64_t index) {
  validate_family(spec);
  auto rng = make_stream(seed, index);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double L = grid.period();
  const int dim = grid.dim();
  Point x0 = spec.x0.value_or(Point{L / 2, dim == 2 ? L / 2 : 0.0});

  switch (spec.kind) {
    case FamilyKind::band_limited_random: {
      const int J = spec.top_level.value_or(default_top_level(grid));
      const double cutoff = std::ldexp(1.0, J - 1);
      std::normal_distribution<double> normal;
      Spectrum s(grid, ComplexField(grid.size()));
      for (std::size_t i = 0; i < grid.size(); ++i) {
        // Draw for every mode so that the stream layout does not depend on J.
        const Complex z(normal(rng), normal(rng));
        const double r = grid.frequency_norm(i);
        if (r <= cutoff) s.coefficients()[i] = z * std::pow(std::max(1.0, r), -(spec.decay + 0.5));
      }
      return detail::normalized(idft(s));
    }
    case FamilyKind::gaussian_bump: {
      Point c = x0;
      for (int ax = 0; ax < dim; ++ax) c[ax] += (unit(rng) - 0.5) * L / 4;
      const double w = L / 20 + unit(rng) * L / 20;
      return detail::normalized(SampledFunction::from(grid, [&](const Point& x) {
        const double d = grid.periodic_distance(x, c);
        return std::exp(-d * d / (2 * w * w));
      }));
    }
    case FamilyKind::cusp:
    case FamilyKind::chirp: {
      for (int ax = 0; ax < dim; ++ax) x0[ax] += unit(rng) * grid.spacing();
      const double soft = grid.spacing() / 4;
      const bool chirp = spec.kind == FamilyKind::chirp;
      return detail::normalized(SampledFunction::from(grid, [&](const Point& x) {
        const double d = grid.periodic_distance(x, x0);
        const double cut = detail::wrap_cutoff(d, L);
        if (!chirp) return std::pow(d, spec.gamma) * cut;
        const double r = std::hypot(d, soft);
        return std::pow(r, spec.gamma) * std::sin(std::pow(r, -spec.beta)) * cut;
      }));
    }
  }
  throw InvalidConfig("unknown family");
}

}  // namespace vbtl
