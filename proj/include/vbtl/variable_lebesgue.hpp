#pragma once

// Modulars and Luxemburg norms of L_{p(.)}, l_{q(.)}(L_{p(.)}) and L_{p(.)}(l_{q(.)}).
//
// Every infimum of the form inf{lambda > 0 : rho(f / lambda^e) <= 1} reduces to a single
// monotone equation in u = log(lambda). It is solved by a bracketed TOMS 748 iteration, which
// keeps the bisection guarantee while converging in a handful of modular evaluations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "vbtl/exponents.hpp"
#include "vbtl/grid.hpp"

namespace vbtl {

/// Ordered sequence (f_nu) on a shared grid; `index_origin` is the nu of the first term.
class FunctionSequence {
 public:
  FunctionSequence(std::vector<SampledFunction> terms, long index_origin = 0)
      : terms_(std::move(terms)), origin_(index_origin) {
    if (terms_.empty()) throw InvalidInput("function sequence must be nonempty");
    for (const auto& t : terms_) require_same_grid(terms_.front().grid(), t.grid(), "function sequence");
  }

  static FunctionSequence from_real(const Grid& grid, const std::vector<RealField>& terms, long index_origin = 0) {
    std::vector<SampledFunction> out;
    out.reserve(terms.size());
    for (const auto& t : terms) out.emplace_back(grid, t);
    return {std::move(out), index_origin};
  }

  const Grid& grid() const { return terms_.front().grid(); }
  std::size_t size() const { return terms_.size(); }
  long index_origin() const { return origin_; }
  const SampledFunction& operator[](std::size_t i) const { return terms_[i]; }
  const std::vector<SampledFunction>& terms() const { return terms_; }

  FunctionSequence scaled(double c) const {
    std::vector<SampledFunction> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.scaled(c));
    return {std::move(out), origin_};
  }

 private:
  std::vector<SampledFunction> terms_;
  long origin_;
};

enum class LqlpPath { automatic, general, fast };

namespace detail {

inline constexpr int kMaxRootIterations = 200;
inline constexpr double kLogTolerance = 1e-13;

// Stop once the log-bracket is narrower than 1e-13, i.e. lambda is known to ~1e-13 relative.
struct LogWidthTolerance {
  bool operator()(double a, double b) const {
    return std::abs(b - a) <= std::max(kLogTolerance, 8 * std::numeric_limits<double>::epsilon() * std::abs(a));
  }
};

// inf{ lambda > 0 : sum_i cell * phi_{p_i}( exp(log_amp_i - shift) * lambda^{-e_i} ) <= 1 }.
// Zero amplitudes carry log_amp = -inf. Returns +inf when no finite lambda qualifies.
inline double unit_level(std::span<const double> log_amp, std::span<const double> p, std::span<const double> e,
                         double cell, double shift = 0.0) {
  const double log_cell = std::log(cell);
  double lower = -kInfinity;  // log of the bound imposed by p = infinity points
  double fixed = 0.0;         // modular contribution that does not scale with lambda
  std::vector<double> logA, k;
  logA.reserve(log_amp.size());
  k.reserve(log_amp.size());
  for (std::size_t i = 0; i < log_amp.size(); ++i) {
    const double la = log_amp[i] - shift;
    if (la == -kInfinity) continue;
    if (std::isinf(p[i])) {
      if (e[i] == 0.0) {
        if (la > 0.0) return kInfinity;
      } else {
        lower = std::max(lower, la / e[i]);
      }
    } else if (e[i] == 0.0) {
      fixed += std::exp(log_cell + p[i] * la);
    } else {
      logA.push_back(log_cell + p[i] * la);
      k.push_back(e[i] * p[i]);
    }
  }
  if (fixed > 1.0) return kInfinity;
  if (logA.empty()) return lower == -kInfinity ? 0.0 : std::exp(lower);
  if (fixed == 1.0) return kInfinity;

  const double target = std::log1p(-fixed);
  const double log_n = std::log(static_cast<double>(logA.size()));
  double lo = -kInfinity, hi = -kInfinity;
  for (std::size_t i = 0; i < logA.size(); ++i) {
    lo = std::max(lo, (logA[i] - target) / k[i]);
    hi = std::max(hi, (logA[i] + log_n - target) / k[i]);
  }
  // log of the variable part minus the target; nonincreasing in u.
  auto excess = [&](double u) {
    double m = -kInfinity;
    for (std::size_t i = 0; i < logA.size(); ++i) m = std::max(m, logA[i] - k[i] * u);
    double acc = 0.0;
    for (std::size_t i = 0; i < logA.size(); ++i) acc += std::exp(logA[i] - k[i] * u - m);
    return m + std::log(acc) - target;
  };
  if (lower != -kInfinity && lower >= hi) return std::exp(lower);
  if (lower != -kInfinity && lower > lo) {
    if (excess(lower) <= 0.0) return std::exp(lower);
    lo = lower;
  }
  const double f_lo = excess(lo);
  const double f_hi = excess(hi);
  if (f_lo <= 0.0) return std::exp(lo);
  if (f_hi >= 0.0) return std::exp(hi);
  std::uintmax_t iters = kMaxRootIterations;
  const auto [a, b] = boost::math::tools::toms748_solve(excess, lo, hi, f_lo, f_hi, LogWidthTolerance{}, iters);
  if (iters >= static_cast<std::uintmax_t>(kMaxRootIterations))
    throw NumericFailure("modular root finding did not converge");
  (void)a;
  return std::exp(b);
}

inline RealField log_magnitude(const SampledFunction& f) {
  RealField out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::log(std::abs(f[i]));
  return out;
}

inline RealField reciprocal_or_zero(const VariableExponent& q) {
  RealField e(q.samples().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::isinf(q[i]) ? 0.0 : 1.0 / q[i];
  return e;
}

// Outer solve for mixed norms: inf{mu > 0 : F(log mu) <= 0} with F nonincreasing.
template <class Fn>
double solve_outer(Fn&& F, double u0) {
  double lo = u0, hi = u0;
  double f_lo = F(lo), f_hi = f_lo;
  double step = 1.0;
  int guard = 0;
  if (f_lo > 0.0) {
    while (f_hi > 0.0) {
      lo = hi;
      f_lo = f_hi;
      hi += step;
      step *= 2.0;
      f_hi = F(hi);
      if (++guard > kMaxRootIterations) throw NumericFailure("mixed norm bracket expansion failed");
    }
  } else {
    while (f_lo <= 0.0) {
      hi = lo;
      f_hi = f_lo;
      lo -= step;
      step *= 2.0;
      f_lo = F(lo);
      if (++guard > kMaxRootIterations) throw NumericFailure("mixed norm bracket expansion failed");
    }
  }
  if (f_hi == 0.0) return std::exp(hi);
  // TOMS 748 cannot interpolate through infinities (F jumps between them where q = inf); clamping
  // keeps the bracket valid and degrades to bisection across a jump.
  auto clamped = [&](double u) { return std::clamp(F(u), -1e3, 1e3); };
  std::uintmax_t iters = kMaxRootIterations;
  const auto [a, b] = boost::math::tools::toms748_solve(clamped, lo, hi, std::clamp(f_lo, -1e3, 1e3),
                                                        std::clamp(f_hi, -1e3, 1e3), LogWidthTolerance{}, iters);
  if (iters >= static_cast<std::uintmax_t>(kMaxRootIterations))
    throw NumericFailure("mixed norm root finding did not converge");
  (void)a;
  return std::exp(b);
}

}  // namespace detail

/// rho_p(f) = integral of phi_{p(x)}(|f(x)|); +inf when |f| > 1 somewhere on {p = inf}.
inline double modular_lp(const SampledFunction& f, const VariableExponent& p) {
  require_same_grid(f.grid(), p.grid(), "modular_lp");
  RealField terms(f.size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::abs(f[i]);
    if (p.infinity_mask()[i]) {
      if (a > 1.0) return kInfinity;
    } else {
      terms[i] = std::pow(a, p[i]);
    }
  }
  return pairwise_sum(terms) * f.grid().cell_volume();
}

/// Luxemburg norm inf{lambda > 0 : rho_p(f / lambda) <= 1}.
inline double luxemburg_norm(const SampledFunction& f, const VariableExponent& p) {
  require_same_grid(f.grid(), p.grid(), "luxemburg_norm");
  if (f.max_abs() == 0.0) return 0.0;
  const RealField la = detail::log_magnitude(f);
  const RealField ones(f.size(), 1.0);
  return detail::unit_level(la, p.samples(), ones, f.grid().cell_volume());
}

/// Mixed modular of l_{q(.)}(L_{p(.)}).
///
/// The general path evaluates sum_nu inf{lambda_nu : rho_p(f_nu / lambda_nu^{1/q}) <= 1} with the
/// convention lambda^{1/inf} = 1 on {q = inf}. The fast path (q+ < inf only) evaluates
/// sum_nu || |f_nu|^q | L_{p/q} ||.
inline double modular_lqlp(const FunctionSequence& fs, const VariableExponent& p, const VariableExponent& q,
                           LqlpPath path = LqlpPath::automatic) {
  require_same_grid(fs.grid(), p.grid(), "modular_lqlp");
  require_same_grid(fs.grid(), q.grid(), "modular_lqlp");
  if (path == LqlpPath::automatic) path = q.has_infinity() ? LqlpPath::general : LqlpPath::fast;
  if (path == LqlpPath::fast && q.has_infinity())
    throw InvalidConfig("fast l_q(L_p) modular requires q+ < infinity");
  const double cell = fs.grid().cell_volume();
  RealField terms;
  terms.reserve(fs.size());
  if (path == LqlpPath::general) {
    const RealField e = detail::reciprocal_or_zero(q);
    for (const auto& f : fs.terms()) terms.push_back(detail::unit_level(detail::log_magnitude(f), p.samples(), e, cell));
  } else {
    RealField ratio(p.samples().size());
    for (std::size_t i = 0; i < ratio.size(); ++i) ratio[i] = p[i] / q[i];
    const RealField ones(ratio.size(), 1.0);
    for (const auto& f : fs.terms()) {
      RealField lg(f.size());
      for (std::size_t i = 0; i < lg.size(); ++i) lg[i] = std::log(std::pow(std::abs(f[i]), q[i]));
      terms.push_back(detail::unit_level(lg, ratio, ones, cell));
    }
  }
  for (double t : terms)
    if (std::isinf(t)) return kInfinity;
  return pairwise_sum(terms);
}

/// ||(f_nu) | l_{q(.)}(L_{p(.)})|| = inf{mu > 0 : modular(f / mu) <= 1}.
inline double norm_lqlp(const FunctionSequence& fs, const VariableExponent& p, const VariableExponent& q) {
  require_same_grid(fs.grid(), p.grid(), "norm_lqlp");
  require_same_grid(fs.grid(), q.grid(), "norm_lqlp");
  std::vector<RealField> logs;
  logs.reserve(fs.size());
  double start = -kInfinity;
  for (const auto& f : fs.terms()) {
    logs.push_back(detail::log_magnitude(f));
    start = std::max(start, *std::max_element(logs.back().begin(), logs.back().end()));
  }
  if (start == -kInfinity) return 0.0;
  if (std::all_of(q.samples().begin(), q.samples().end(), [](double v) { return std::isinf(v); })) {
    double sup = 0.0;
    for (const auto& f : fs.terms()) sup = std::max(sup, luxemburg_norm(f, p));
    return sup;
  }
  const double cell = fs.grid().cell_volume();
  const RealField e = detail::reciprocal_or_zero(q);
  auto F = [&](double u) {
    std::vector<double> lambdas;
    lambdas.reserve(logs.size());
    for (const auto& l : logs) {
      const double lam = detail::unit_level(l, p.samples(), e, cell, u);
      if (std::isinf(lam)) return kInfinity;
      lambdas.push_back(lam);
    }
    const double sum = pairwise_sum(lambdas);
    return sum == 0.0 ? -kInfinity : std::log(sum);
  };
  return detail::solve_outer(F, start);
}

/// Pointwise l_{q(x)} aggregation of (|f_nu(x)|)_nu; q = inf gives the pointwise maximum.
inline RealField pointwise_lq(const FunctionSequence& fs, const VariableExponent& q) {
  require_same_grid(fs.grid(), q.grid(), "pointwise_lq");
  RealField out(fs.grid().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double m = 0.0;
    for (const auto& f : fs.terms()) m = std::max(m, std::abs(f[i]));
    if (m == 0.0 || std::isinf(q[i])) {
      out[i] = m;
      continue;
    }
    double acc = 0.0;
    for (const auto& f : fs.terms()) acc += std::pow(std::abs(f[i]) / m, q[i]);
    out[i] = m * std::pow(acc, 1.0 / q[i]);
  }
  return out;
}

/// ||(f_nu) | L_{p(.)}(l_{q(.)})||.
inline double norm_lplq(const FunctionSequence& fs, const VariableExponent& p, const VariableExponent& q) {
  require_same_grid(fs.grid(), p.grid(), "norm_lplq");
  return luxemburg_norm(SampledFunction(fs.grid(), pointwise_lq(fs, q)), p);
}

enum class Flavor { besov, tl };

inline const char* to_string(Flavor f) { return f == Flavor::besov ? "besov" : "tl"; }

/// l_q(L_p) for Besov-type and L_p(l_q) for Triebel-Lizorkin-type sequences.
inline double mixed_norm(const FunctionSequence& fs, const VariableExponent& p, const VariableExponent& q,
                         Flavor flavor) {
  return flavor == Flavor::besov ? norm_lqlp(fs, p, q) : norm_lplq(fs, p, q);
}

}  // namespace vbtl
