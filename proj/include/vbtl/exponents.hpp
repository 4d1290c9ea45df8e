#pragma once

// Variable exponents p(.), q(.), smoothness functions s(.) and admissible weight sequences.
// Continuum conditions (log-Hoelder continuity, admissibility) are checked on sampled grid
// pairs with the periodic distance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "vbtl/grid.hpp"
#include "vbtl/random.hpp"

namespace vbtl {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Lower estimate of c_log(g): max over distinct grid pairs of |g(x)-g(y)| log(e + 1/|x-y|).
inline double estimate_log_holder(const Grid& grid, std::span<const double> g) {
  if (g.size() != grid.size()) throw InvalidInput("estimate_log_holder: sample count does not match grid");
  for (double v : g)
    if (!std::isfinite(v)) throw InvalidInput("estimate_log_holder: non-finite sample");
  const std::size_t n = grid.n();
  const std::size_t total = grid.size();
  double best = 0.0;
  // Displacements d and -d visit the same unordered pairs; scanning all of them keeps the loop simple.
  for (std::size_t d = 1; d < total; ++d) {
    const double factor = std::log(std::numbers::e + 1.0 / grid.displacement_length(d));
    double worst = 0.0;
    if (grid.dim() == 1) {
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(g[i] - g[(i + d) % n]));
    } else {
      const std::size_t d0 = d / n, d1 = d % n;
      for (std::size_t i0 = 0; i0 < n; ++i0) {
        const std::size_t row = ((i0 + d0) % n) * n;
        for (std::size_t i1 = 0; i1 < n; ++i1)
          worst = std::max(worst, std::abs(g[i0 * n + i1] - g[row + (i1 + d1) % n]));
      }
    }
    best = std::max(best, worst * factor);
  }
  return best;
}

/// Sampled exponent p(.) with values in (0, infinity].
class VariableExponent {
 public:
  VariableExponent(Grid grid, RealField samples) : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.size()) throw InvalidInput("exponent sample count does not match grid");
    infinity_mask_.resize(samples_.size());
    RealField inverse(samples_.size());
    p_minus_ = kInfinity;
    p_plus_ = 0.0;
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      const double p = samples_[i];
      if (std::isnan(p) || !(p > 0.0))
        throw InvalidInput("exponent must be bounded away from zero (got " + std::to_string(p) + ")");
      infinity_mask_[i] = std::isinf(p);
      if (!infinity_mask_[i]) p_minus_ = std::min(p_minus_, p);
      p_plus_ = std::max(p_plus_, p);
      inverse[i] = infinity_mask_[i] ? 0.0 : 1.0 / p;
    }
    clog_ = estimate_log_holder(grid_, inverse);
  }

  static VariableExponent constant(const Grid& grid, double p) { return {grid, RealField(grid.size(), p)}; }

  const Grid& grid() const { return grid_; }
  const RealField& samples() const { return samples_; }
  double operator[](std::size_t i) const { return samples_[i]; }
  /// Minimum of the finite samples (+inf when every sample is infinite).
  double p_minus() const { return p_minus_; }
  double p_plus() const { return p_plus_; }
  bool has_infinity() const { return std::isinf(p_plus_); }
  const std::vector<bool>& infinity_mask() const { return infinity_mask_; }
  /// Estimated log-Hoelder constant of 1/p.
  double clog_estimate() const { return clog_; }
  bool is_constant() const { return p_minus_ == p_plus_; }

 private:
  Grid grid_;
  RealField samples_;
  std::vector<bool> infinity_mask_;
  double p_minus_ = 0.0;
  double p_plus_ = 0.0;
  double clog_ = 0.0;
};

class SmoothnessFunction {
 public:
  SmoothnessFunction(Grid grid, RealField samples) : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.size()) throw InvalidInput("smoothness sample count does not match grid");
    for (double s : samples_)
      if (!std::isfinite(s)) throw InvalidInput("smoothness samples must be finite");
    const auto [lo, hi] = std::minmax_element(samples_.begin(), samples_.end());
    s_minus_ = *lo;
    s_plus_ = *hi;
    clog_ = estimate_log_holder(grid_, samples_);
  }
  static SmoothnessFunction constant(const Grid& grid, double s) { return {grid, RealField(grid.size(), s)}; }

  const Grid& grid() const { return grid_; }
  const RealField& samples() const { return samples_; }
  double operator[](std::size_t i) const { return samples_[i]; }
  double s_minus() const { return s_minus_; }
  double s_plus() const { return s_plus_; }
  double clog_estimate() const { return clog_; }
  double mean() const { return pairwise_sum(samples_) / static_cast<double>(samples_.size()); }

 private:
  Grid grid_;
  RealField samples_;
  double s_minus_ = 0.0;
  double s_plus_ = 0.0;
  double clog_ = 0.0;
};

/// Declared indices (alpha, alpha1, alpha2) and constant C of an admissible weight sequence.
struct AdmissibilityIndices {
  double alpha = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double fitted_C = 1.0;
};

/// Per-level weights w_0..w_J on a grid. Levels are stored as log2 values so that the
/// dyadic growth bracket is measured without overflow or cancellation.
class WeightSequence {
 public:
  static WeightSequence from_log2_levels(Grid grid, std::vector<RealField> log2_levels, AdmissibilityIndices idx) {
    return WeightSequence(grid, std::move(log2_levels), idx);
  }

  static WeightSequence from_levels(Grid grid, const std::vector<RealField>& levels, AdmissibilityIndices idx) {
    std::vector<RealField> logs;
    logs.reserve(levels.size());
    for (const auto& level : levels) {
      RealField l(level.size());
      for (std::size_t i = 0; i < level.size(); ++i) {
        if (!(level[i] > 0.0) || !std::isfinite(level[i]))
          throw InvalidInput("weight values must be positive and finite");
        l[i] = std::log2(level[i]);
      }
      logs.push_back(std::move(l));
    }
    return WeightSequence(grid, std::move(logs), idx);
  }

  const Grid& grid() const { return grid_; }
  std::size_t level_count() const { return log2_.size(); }
  int top_level() const { return static_cast<int>(log2_.size()) - 1; }
  const RealField& log2_level(std::size_t j) const { return log2_.at(j); }
  double value(std::size_t j, std::size_t i) const { return std::exp2(log2_[j][i]); }
  RealField level(std::size_t j) const {
    RealField out(log2_.at(j).size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::exp2(log2_[j][i]);
    return out;
  }
  const AdmissibilityIndices& indices() const { return idx_; }
  double alpha() const { return idx_.alpha; }
  double alpha1() const { return idx_.alpha1; }
  double alpha2() const { return idx_.alpha2; }
  double fitted_C() const { return idx_.fitted_C; }

 private:
  WeightSequence(Grid grid, std::vector<RealField> log2_levels, AdmissibilityIndices idx)
      : grid_(grid), log2_(std::move(log2_levels)), idx_(idx) {
    if (log2_.empty()) throw InvalidInput("weight sequence needs at least one level");
    for (const auto& l : log2_) {
      if (l.size() != grid_.size()) throw InvalidInput("weight level size does not match grid");
      for (double v : l)
        if (!std::isfinite(v)) throw InvalidInput("weight values must be positive and finite");
    }
    if (!(idx_.alpha >= 0.0)) throw InvalidInput("admissibility index alpha must be >= 0");
    if (!(idx_.fitted_C >= 1.0)) throw InvalidInput("admissibility constant C must be >= 1");
  }

  Grid grid_;
  std::vector<RealField> log2_;
  AdmissibilityIndices idx_;
};

struct AdmissibilityReport {
  bool passes = false;
  bool condition_i = false;
  bool condition_ii = false;
  double fitted_C = 1.0;      // smallest C validating (i) with the declared alpha
  double tight_alpha1 = 0.0;  // min over levels and points of log2(w_{j+1}/w_j)
  double tight_alpha2 = 0.0;  // max of the same
  bool exhaustive = true;     // false when (i) was checked on sampled pairs
};

struct PairScanOptions {
  /// Grids with at most this many points are scanned over all pairs.
  std::size_t exhaustive_point_limit = 1024;
  std::size_t sampled_pairs_per_level = std::size_t{1} << 17;
  std::uint64_t seed = 0x5eed;
};

namespace detail {

// Smallest C with w_j(x) <= C w_j(y) (1 + 2^j |x-y|)^alpha on the scanned pairs.
inline double scan_condition_i(const Grid& grid, const std::vector<RealField>& log2_levels, double alpha,
                               const PairScanOptions& opt, bool& exhaustive) {
  const std::size_t total = grid.size();
  const RealField lengths = grid.displacement_lengths();
  exhaustive = total <= opt.exhaustive_point_limit;
  double best = 0.0;  // log2 C; the diagonal gives 0
  RealField penalty(total);
  for (std::size_t j = 0; j < log2_levels.size(); ++j) {
    const auto& e = log2_levels[j];
    const double scale = std::exp2(static_cast<double>(j));
    for (std::size_t d = 0; d < total; ++d) penalty[d] = alpha * std::log2(1.0 + scale * lengths[d]);
    if (exhaustive) {
      for (std::size_t x = 0; x < total; ++x)
        for (std::size_t y = 0; y < total; ++y)
          best = std::max(best, e[x] - e[y] - penalty[grid.displacement(x, y)]);
    } else {
      auto rng = make_stream(opt.seed, j);
      std::uniform_int_distribution<std::size_t> pick(0, total - 1);
      for (std::size_t k = 0; k < opt.sampled_pairs_per_level; ++k) {
        const std::size_t x = pick(rng), y = pick(rng);
        best = std::max(best, e[x] - e[y] - penalty[grid.displacement(x, y)]);
      }
    }
  }
  return std::exp2(best);
}

inline std::pair<double, double> scan_condition_ii(const std::vector<RealField>& log2_levels) {
  double lo = kInfinity, hi = -kInfinity;
  for (std::size_t j = 0; j + 1 < log2_levels.size(); ++j)
    for (std::size_t i = 0; i < log2_levels[j].size(); ++i) {
      const double g = log2_levels[j + 1][i] - log2_levels[j][i];
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
  return {lo, hi};
}

inline bool dominates(double declared, double tight) {
  return declared >= tight - 1e-12 * std::max(1.0, std::abs(tight));
}

}  // namespace detail

/// Checks both admissibility conditions on the grid and reports the tightest constants.
/// A single-level sequence has no growth condition; its tight alphas are then +inf / -inf.
inline AdmissibilityReport verify_admissible(const WeightSequence& w, const PairScanOptions& opt = {}) {
  std::vector<RealField> logs;
  logs.reserve(w.level_count());
  for (std::size_t j = 0; j < w.level_count(); ++j) logs.push_back(w.log2_level(j));
  AdmissibilityReport r;
  r.fitted_C = detail::scan_condition_i(w.grid(), logs, w.alpha(), opt, r.exhaustive);
  std::tie(r.tight_alpha1, r.tight_alpha2) = detail::scan_condition_ii(logs);
  r.condition_i = detail::dominates(w.fitted_C(), r.fitted_C);
  r.condition_ii = detail::dominates(r.tight_alpha1, w.alpha1()) && detail::dominates(w.alpha2(), r.tight_alpha2);
  r.passes = r.condition_i && r.condition_ii;
  return r;
}

/// w_j(x) = 2^{j s(x)} with alpha1 = s-, alpha2 = s+, alpha = c_log(s).
inline WeightSequence weights_from_smoothness(const SmoothnessFunction& s, int J, const PairScanOptions& opt = {}) {
  if (J < 0) throw InvalidConfig("level count J must be >= 0");
  std::vector<RealField> logs(static_cast<std::size_t>(J) + 1, RealField(s.grid().size()));
  for (int j = 0; j <= J; ++j)
    for (std::size_t i = 0; i < s.samples().size(); ++i) logs[j][i] = static_cast<double>(j) * s[i];
  AdmissibilityIndices idx{s.clog_estimate(), s.s_minus(), s.s_plus(), 1.0};
  bool exhaustive = true;
  idx.fitted_C = detail::scan_condition_i(s.grid(), logs, idx.alpha, opt, exhaustive);
  return WeightSequence::from_log2_levels(s.grid(), std::move(logs), idx);
}

/// w_j(x) = 2^{js} (1 + 2^j |x - x0|)^{s'}; alpha = |s'|, the growth bracket and C are fitted on the grid.
inline WeightSequence two_microlocal_weights(const Grid& grid, double s, double sprime, const Point& x0, int J,
                                             const PairScanOptions& opt = {}) {
  if (J < 0) throw InvalidConfig("level count J must be >= 0");
  std::vector<RealField> logs(static_cast<std::size_t>(J) + 1, RealField(grid.size()));
  for (int j = 0; j <= J; ++j) {
    const double scale = std::exp2(static_cast<double>(j));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double d = grid.periodic_distance(grid.coordinate(i), x0);
      logs[j][i] = static_cast<double>(j) * s + (sprime == 0.0 ? 0.0 : sprime * std::log2(1.0 + scale * d));
    }
  }
  AdmissibilityIndices idx{std::abs(sprime), s, s, 1.0};
  if (J > 0) std::tie(idx.alpha1, idx.alpha2) = detail::scan_condition_ii(logs);
  bool exhaustive = true;
  idx.fitted_C = detail::scan_condition_i(grid, logs, idx.alpha, opt, exhaustive);
  return WeightSequence::from_log2_levels(grid, std::move(logs), idx);
}

}  // namespace vbtl
