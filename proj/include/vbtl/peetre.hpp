#pragma once

// Peetre maximal functions, eta kernels and the maximal-function B/F norms.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "vbtl/filter_bank.hpp"

namespace vbtl {

/// (Psi_k^* f)_a(x) = max over grid y of |b(y)| / (1 + (2^k |y - x|)^a), periodic distance.
///
/// Displacements are visited by increasing length; the scan stops once max|b| / denominator cannot
/// beat the running maximum, so the result equals the full grid maximum.
inline SampledFunction peetre_maximal(const SampledFunction& block, int k, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidConfig("Peetre parameter a must be positive and finite");
  const Grid& g = block.grid();
  const std::size_t total = g.size();
  const RealField mag = block.magnitude();
  const double top = *std::max_element(mag.begin(), mag.end());
  RealField out(total, 0.0);
  if (top == 0.0) return {g, out};

  const RealField lengths = g.displacement_lengths();
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return lengths[x] < lengths[y]; });
  const double scale = std::ldexp(1.0, k);
  RealField denom(total);
  for (std::size_t r = 0; r < total; ++r) denom[r] = 1.0 + std::pow(scale * lengths[order[r]], a);
  std::vector<std::array<std::ptrdiff_t, 2>> offsets(total);
  for (std::size_t r = 0; r < total; ++r) {
    const auto ax = g.axes(order[r]);
    offsets[r] = {g.signed_offset(ax[0]), g.dim() == 2 ? g.signed_offset(ax[1]) : 0};
  }

  for (std::size_t x = 0; x < total; ++x) {
    double best = mag[x];  // the y = x term; denominator 1
    for (std::size_t r = 1; r < total; ++r) {
      if (top / denom[r] <= best) break;
      const double v = mag[g.shifted(x, offsets[r][0], offsets[r][1])] / denom[r];
      if (v > best) best = v;
    }
    out[x] = best;
  }
  return {g, out};
}

/// eta_{nu,m}(x) = 2^{n nu} (1 + 2^nu |x|)^{-m}, |x| the periodic distance to the origin.
inline SampledFunction eta_kernel(const Grid& grid, int nu, double m) {
  if (!(m > 0.0)) throw InvalidConfig("eta kernel decay m must be positive");
  if (nu < 0) throw InvalidConfig("eta kernel level must be >= 0");
  const double scale = std::ldexp(1.0, nu);
  const double height = std::pow(scale, grid.dim());
  RealField v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = height * std::pow(1.0 + scale * grid.displacement_length(i), -m);
  return {grid, v};
}

/// Threshold a* above which the maximal-function characterization holds.
/// Besov: (n + c_log(1/q)) / p- + alpha; Triebel-Lizorkin: n / min(p-, q-) + alpha,
/// with alpha = c_log(s) for variable smoothness and the weight index otherwise.
inline double peetre_threshold(int dim, const VariableExponent& p, const VariableExponent& q, double alpha,
                               Flavor flavor) {
  const double n = dim;
  if (flavor == Flavor::besov) return (n + q.clog_estimate()) / p.p_minus() + alpha;
  return n / std::min(p.p_minus(), q.p_minus()) + alpha;
}

/// `a` as requested, or threshold + 1 when unset.
inline double resolve_peetre_a(std::optional<double> a, int dim, const VariableExponent& p,
                               const VariableExponent& q, double alpha, Flavor flavor) {
  if (a) {
    if (!(*a > 0.0)) throw InvalidConfig("Peetre parameter a must be positive");
    return *a;
  }
  return peetre_threshold(dim, p, q, alpha, flavor) + 1.0;
}

/// Sequence ((Psi_k^* f)_a)_k for the resolution-of-unity blocks.
inline FunctionSequence peetre_sequence(const SampledFunction& f, const FilterBank& bank, double a) {
  const FunctionSequence blocks = lp_blocks(f, bank);
  std::vector<SampledFunction> out;
  out.reserve(blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k) out.push_back(peetre_maximal(blocks[k], static_cast<int>(k), a));
  return {std::move(out), 0};
}

/// || w_k (Psi_k^* f)_a | l_q(L_p) || or || ... | L_p(l_q) ||; `a` defaults to threshold + 1.
inline double peetre_norm(const SampledFunction& f, const WeightSequence& w, const VariableExponent& p,
                          const VariableExponent& q, Flavor flavor, std::optional<double> a = std::nullopt) {
  const double aa = resolve_peetre_a(a, f.grid().dim(), p, q, w.alpha(), flavor);
  const FilterBank bank = build_resolution_of_unity(f.grid(), w.top_level());
  return mixed_norm(apply_weights(peetre_sequence(f, bank, aa), w), p, q, flavor);
}

}  // namespace vbtl
