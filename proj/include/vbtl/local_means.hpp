#pragma once

// Compactly supported local-means kernels and the local-means B/F norms.
//
// k0 is a smooth radial bump with unit integral. k is the m-fold five-point (three-point in 1D)
// discrete Laplacian of the same kind of bump, m = ceil(R / 2). Summation by parts moves the
// Laplacian onto the monomials, which it lowers by two degrees, so every discrete moment of
// order < 2m vanishes. The bump is quantized to multiples of 2^-40 before differencing so that
// the integer stencil is applied without rounding and the moments vanish to machine precision.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "vbtl/filter_bank.hpp"

namespace vbtl {

struct KernelSet {
  SampledFunction k0;
  SampledFunction k;
  double support_radius = 1.0;  // both kernels vanish at grid points with |y| >= support_radius
  int moment_order = 0;         // requested R
  int vanishing_moments = 0;    // achieved: moments of order < vanishing_moments vanish
  double tauber_epsilon = 0.0;  // |k0^| > 0 on |xi| < eps, |k^| > 0 on eps/2 < |xi| < 2 eps
  double bump_radius = 0.0;     // radius of the bump before differencing
};

namespace detail {

inline RealField quantized_bump(const Grid& g, double radius) {
  RealField b(g.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double r = g.displacement_length(i) / radius;
    if (r < 1.0) b[i] = std::ldexp(std::round(std::ldexp(std::exp(-1.0 / (1.0 - r * r)), 40)), -40);
  }
  return b;
}

// Unscaled discrete Laplacian: sum of neighbours minus 2 dim times the centre.
inline RealField grid_laplacian(const Grid& g, const RealField& v) {
  RealField out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double acc = v[g.shifted(i, 1)] + v[g.shifted(i, -1)] - 2.0 * v[i];
    if (g.dim() == 2) acc += v[g.shifted(i, 0, 1)] + v[g.shifted(i, 0, -1)] - 2.0 * v[i];
    out[i] = acc;
  }
  return out;
}

struct SupportPoint {
  Point y;
  double weight;  // cell volume times kernel value
};

inline std::vector<SupportPoint> support_points(const SampledFunction& kernel) {
  const Grid& g = kernel.grid();
  std::vector<SupportPoint> pts;
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    if (kernel[i] == 0.0) continue;
    const auto ax = g.axes(i);
    const Point y{static_cast<double>(g.signed_offset(ax[0])) * g.spacing(),
                  g.dim() == 2 ? static_cast<double>(g.signed_offset(ax[1])) * g.spacing() : 0.0};
    pts.push_back({y, kernel[i].real() * g.cell_volume()});
  }
  return pts;
}

// S(xi) = sum_y cell k(y) e^{i xi.y}: the symbol of f -> integral k(y) f(x + y) dy.
inline Complex kernel_symbol(const std::vector<SupportPoint>& pts, const Point& xi) {
  Complex acc = 0.0;
  for (const auto& p : pts) acc += p.weight * std::polar(1.0, xi[0] * p.y[0] + xi[1] * p.y[1]);
  return acc;
}

inline constexpr int kTauberRays = 8;
inline constexpr int kTauberSamples = 1024;

// Largest sampled radius r with |S| > floor on (0, r) along every scanned ray. The origin itself
// is skipped because the symbol of k vanishes there.
inline double first_zero_radius(const std::vector<SupportPoint>& pts, int dim, double r_max, double floor) {
  const int rays = dim == 1 ? 1 : kTauberRays;
  double first = r_max;
  for (int ray = 0; ray < rays; ++ray) {
    const double ang = std::numbers::pi * ray / rays;
    const Point dir{std::cos(ang), dim == 1 ? 0.0 : std::sin(ang)};
    for (int s = 1; s <= kTauberSamples; ++s) {
      const double r = r_max * s / kTauberSamples;
      if (r >= first) break;
      if (std::abs(kernel_symbol(pts, {r * dir[0], r * dir[1]})) <= floor) {
        first = r_max * (s - 1) / kTauberSamples;
        break;
      }
    }
  }
  return first;
}

inline double max_symbol(const std::vector<SupportPoint>& pts, double r_max) {
  double m = 0.0;
  for (int s = 0; s <= 256; ++s) {
    const double r = r_max * s / 256.0;
    m = std::max(m, std::abs(kernel_symbol(pts, {r, 0.0})));
  }
  return m;
}

}  // namespace detail

/// k0 and k supported in the ball of radius `support_radius`, with R vanishing moments for k and
/// a measured Tauberian radius.
inline KernelSet build_local_means_kernels(const Grid& grid, int R, double support_radius = 1.0) {
  if (R < 0) throw InvalidConfig("moment order R must be >= 0");
  if (!(support_radius > 0.0) || support_radius > 1.0) throw InvalidConfig("kernel support radius must lie in (0, 1]");
  if (support_radius > grid.period() / 4) throw InvalidConfig("kernel support radius exceeds a quarter period");
  const int m = (R + 1) / 2;
  const double h = grid.spacing();
  if (2.0 * support_radius / h < 16.0)
    throw InvalidConfig("kernel support must cover at least 16 grid points per axis; refine the grid");

  double radius = support_radius - (m + 1) * h;
  for (int attempt = 0; attempt < 5; ++attempt, radius *= 0.9) {
    if (2.0 * radius / h < 8.0) break;
    const RealField bump = detail::quantized_bump(grid, radius);
    RealField k = bump;
    for (int i = 0; i < m; ++i) k = detail::grid_laplacian(grid, k);
    double mass0 = 0.0, mass1 = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
      mass0 += bump[i];
      mass1 += std::abs(k[i]);
    }
    const double c0 = 1.0 / (mass0 * grid.cell_volume());
    const double c1 = 1.0 / (mass1 * grid.cell_volume());
    RealField k0v(bump.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
      k0v[i] = bump[i] * c0;
      k[i] *= c1;
    }
    KernelSet ks{SampledFunction(grid, k0v), SampledFunction(grid, k), support_radius, R, 2 * m, 0.0, radius};

    const auto p0 = detail::support_points(ks.k0);
    const auto p1 = detail::support_points(ks.k);
    const double r_max = 64.0 / radius;
    const double floor0 = 1e-12 * detail::max_symbol(p0, r_max);
    const double floor1 = 1e-12 * detail::max_symbol(p1, r_max);
    const double z0 = detail::first_zero_radius(p0, grid.dim(), r_max, floor0);
    const double z1 = detail::first_zero_radius(p1, grid.dim(), r_max, floor1);
    // eps <= z0 keeps k0^ nonzero on the ball, 2 eps <= z1 keeps k^ nonzero on the annulus.
    const double eps = std::min(z0, 0.5 * z1);
    if (eps > 0.0) {
      ks.tauber_epsilon = eps;
      return ks;
    }
  }
  throw NumericFailure("local-means kernel construction failed the Tauberian check after 5 attempts");
}

/// Discrete moment sum_y y^beta k(y) cell for a multi-index beta.
inline double kernel_moment(const SampledFunction& kernel, std::array<int, 2> beta) {
  RealField terms;
  for (const auto& pt : detail::support_points(kernel))
    terms.push_back(std::pow(pt.y[0], beta[0]) * std::pow(pt.y[1], beta[1]) * pt.weight);
  return pairwise_sum(terms);
}

/// Symbol xi -> integral k(y) e^{i xi.y} dy of the discretized kernel.
inline Complex kernel_symbol(const SampledFunction& kernel, const Point& xi) {
  return detail::kernel_symbol(detail::support_points(kernel), xi);
}

/// k(t, f)(x) = integral k(y) f(x + t y) dy, as the Fourier multiplier S(t xi).
inline SampledFunction local_means_block(const SampledFunction& f, const SampledFunction& kernel, double t) {
  require_same_grid(f.grid(), kernel.grid(), "local_means_block");
  if (!(t > 0.0)) throw InvalidConfig("local means scale t must be positive");
  const auto pts = detail::support_points(kernel);
  return apply_multiplier(dft(f), [&](const Point& xi) { return detail::kernel_symbol(pts, {t * xi[0], t * xi[1]}); });
}

/// Same quantity summed directly over the kernel support, one spectral shift per support point.
inline SampledFunction local_means_block_direct(const SampledFunction& f, const SampledFunction& kernel, double t) {
  require_same_grid(f.grid(), kernel.grid(), "local_means_block_direct");
  if (!(t > 0.0)) throw InvalidConfig("local means scale t must be positive");
  const Spectrum s = dft(f);
  ComplexField acc(f.size());
  for (const auto& pt : detail::support_points(kernel)) {
    const Point off{t * pt.y[0], t * pt.y[1]};
    const SampledFunction sh = apply_multiplier(s, [&](const Point& w) {
      return std::polar(1.0, w[0] * off[0] + w[1] * off[1]);
    });
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += pt.weight * sh[i];
  }
  return {f.grid(), std::move(acc)};
}

/// ||k0(1, f) w_0 | L_p|| + ||(k(2^-j, f) w_j)_{j=1..J} | l_q(L_p) or L_p(l_q)||.
inline double local_means_norm(const SampledFunction& f, const KernelSet& kernels, const WeightSequence& w,
                               const VariableExponent& p, const VariableExponent& q, Flavor flavor) {
  if (!(kernels.moment_order > w.alpha2()))
    throw PreconditionError("local means need moment order R > alpha2: R = " + std::to_string(kernels.moment_order) +
                            ", alpha2 = " + std::to_string(w.alpha2()));
  const auto& l0 = w.log2_level(0);
  const SampledFunction b0 = local_means_block(f, kernels.k0, 1.0);
  ComplexField v0 = b0.values();
  for (std::size_t i = 0; i < v0.size(); ++i) v0[i] *= std::exp2(l0[i]);
  const double head = luxemburg_norm(SampledFunction(f.grid(), std::move(v0)), p);
  if (w.top_level() < 1) return head;
  std::vector<SampledFunction> blocks;
  for (int j = 1; j <= w.top_level(); ++j) {
    const SampledFunction b = local_means_block(f, kernels.k, std::ldexp(1.0, -j));
    const auto& lj = w.log2_level(static_cast<std::size_t>(j));
    ComplexField v = b.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= std::exp2(lj[i]);
    blocks.emplace_back(f.grid(), std::move(v));
  }
  return head + mixed_norm(FunctionSequence(std::move(blocks), 1), p, q, flavor);
}

}  // namespace vbtl
