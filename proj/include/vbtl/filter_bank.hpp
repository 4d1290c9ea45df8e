#pragma once

// Dyadic resolution of unity and the Fourier-analytic B/F norms.

#include <climits>
#include <cmath>
#include <vector>

#include "vbtl/exponents.hpp"
#include "vbtl/grid.hpp"
#include "vbtl/variable_lebesgue.hpp"

namespace vbtl {

namespace detail {

inline double bump_exp(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace detail

/// Smooth step: 1 for t <= 0, 0 for t >= 1, C-infinity in between.
inline double smooth_step(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = detail::bump_exp(1.0 - t);
  return a / (a + detail::bump_exp(t));
}

/// phi_0(xi) as a function of |xi|: 1 on [0, 1], 0 beyond 2.
inline double phi0_radial(double r) { return smooth_step(r - 1.0); }

/// phi_j(xi) = phi_0(2^-j xi) - phi_0(2^{-j+1} xi) for j >= 1.
inline double phi_radial(int j, double r) {
  if (j == 0) return phi0_radial(r);
  return phi0_radial(std::ldexp(r, -j)) - phi0_radial(std::ldexp(r, 1 - j));
}

struct FilterBank {
  Grid grid;
  int J = 0;
  std::vector<RealField> filters;  // filters[j][spectrum index]
  /// phi_0 > 0 on |xi| < epsilon and phi_1 > 0 on epsilon/2 < |xi| < 2 epsilon.
  double epsilon = 2.0;
  /// phi_1 vanishes to infinite order at the origin.
  int moment_order = INT_MAX;
};

/// Largest J with 2^{J+1} below the Nyquist frequency pi N / L.
inline int default_top_level(const Grid& grid) {
  const double nyquist = grid.max_frequency();
  if (nyquist < 2.0) throw InvalidConfig("grid too coarse for a dyadic decomposition (pi N / L < 2)");
  int J = 0;
  while (std::ldexp(1.0, J + 2) <= nyquist) ++J;
  return J;
}

inline FilterBank build_resolution_of_unity(const Grid& grid, int J) {
  if (J < 0) throw InvalidConfig("top level J must be >= 0");
  if (std::ldexp(1.0, J + 1) > grid.max_frequency())
    throw InvalidConfig("top band 2^(J+1) = " + std::to_string(std::ldexp(1.0, J + 1)) +
                        " exceeds the Nyquist frequency " + std::to_string(grid.max_frequency()));
  FilterBank bank{grid, J, {}, 2.0, INT_MAX};
  bank.filters.assign(static_cast<std::size_t>(J) + 1, RealField(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.frequency_norm(i);
    for (int j = 0; j <= J; ++j) bank.filters[j][i] = phi_radial(j, r);
  }
  return bank;
}

/// Littlewood-Paley pieces (phi_j f^)^v, j = 0..J.
inline FunctionSequence lp_blocks(const SampledFunction& f, const FilterBank& bank) {
  require_same_grid(f.grid(), bank.grid, "lp_blocks");
  const Spectrum s = dft(f);
  std::vector<SampledFunction> out;
  out.reserve(bank.filters.size());
  for (const auto& phi : bank.filters) {
    Spectrum b = s;
    for (std::size_t i = 0; i < phi.size(); ++i) b.coefficients()[i] *= phi[i];
    out.push_back(idft(b));
  }
  return {std::move(out), 0};
}

/// (w_j g_j)_j for a sequence starting at level 0.
inline FunctionSequence apply_weights(const FunctionSequence& gs, const WeightSequence& w) {
  require_same_grid(gs.grid(), w.grid(), "apply_weights");
  if (gs.size() > w.level_count()) throw InvalidConfig("weight sequence has fewer levels than the block sequence");
  std::vector<SampledFunction> out;
  out.reserve(gs.size());
  for (std::size_t j = 0; j < gs.size(); ++j) {
    const auto& lg = w.log2_level(j + static_cast<std::size_t>(gs.index_origin()));
    ComplexField v = gs[j].values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= std::exp2(lg[i]);
    out.emplace_back(gs.grid(), std::move(v));
  }
  return {std::move(out), gs.index_origin()};
}

inline double fourier_norm(const SampledFunction& f, const WeightSequence& w, const VariableExponent& p,
                           const VariableExponent& q, Flavor flavor) {
  const FilterBank bank = build_resolution_of_unity(f.grid(), w.top_level());
  return mixed_norm(apply_weights(lp_blocks(f, bank), w), p, q, flavor);
}

/// || w_j (phi_j f^)^v | l_q(L_p) ||.
inline double besov_norm_fourier(const SampledFunction& f, const WeightSequence& w, const VariableExponent& p,
                                 const VariableExponent& q) {
  return fourier_norm(f, w, p, q, Flavor::besov);
}

/// || w_j (phi_j f^)^v | L_p(l_q) ||.
inline double tl_norm_fourier(const SampledFunction& f, const WeightSequence& w, const VariableExponent& p,
                              const VariableExponent& q) {
  return fourier_norm(f, w, p, q, Flavor::tl);
}

inline double besov_norm_fourier(const SampledFunction& f, const SmoothnessFunction& s, const VariableExponent& p,
                                 const VariableExponent& q, int J) {
  return besov_norm_fourier(f, weights_from_smoothness(s, J), p, q);
}

inline double tl_norm_fourier(const SampledFunction& f, const SmoothnessFunction& s, const VariableExponent& p,
                              const VariableExponent& q, int J) {
  return tl_norm_fourier(f, weights_from_smoothness(s, J), p, q);
}

}  // namespace vbtl
