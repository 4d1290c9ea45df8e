#pragma once

// Finite differences, ball means of differences and the difference-based B/F norms.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "vbtl/exponents.hpp"
#include "vbtl/filter_bank.hpp"
#include "vbtl/grid.hpp"
#include "vbtl/variable_lebesgue.hpp"

namespace vbtl {

namespace detail {

inline std::vector<double> binomial_row(int M) {
  std::vector<double> c(static_cast<std::size_t>(M) + 1, 1.0);
  for (int j = 1; j <= M; ++j) c[j] = c[j - 1] * (M - j + 1) / j;
  return c;
}

inline void require_order(int M) {
  if (M < 1) throw InvalidConfig("difference order M must be >= 1");
}

inline double unit_ball_volume(int dim) { return dim == 1 ? 2.0 : std::numbers::pi; }

}  // namespace detail

/// Delta^M_h f(x) = sum_j (-1)^j C(M, j) f(x + (M - j) h), with every shift applied spectrally.
inline SampledFunction finite_difference(const SampledFunction& f, const Point& h, int M) {
  detail::require_order(M);
  const auto c = detail::binomial_row(M);
  return apply_multiplier(dft(f), [&](const Point& w) {
    const double phase = w[0] * h[0] + w[1] * h[1];
    Complex acc = 0.0;
    for (int j = 0; j <= M; ++j) acc += ((j % 2) ? -c[j] : c[j]) * std::polar(1.0, (M - j) * phase);
    return acc;
  });
}

/// Delta^1_h applied M times.
inline SampledFunction finite_difference_inductive(const SampledFunction& f, const Point& h, int M) {
  detail::require_order(M);
  SampledFunction g = f;
  for (int i = 0; i < M; ++i) g = periodic_shift_sample(g, h) - g;
  return g;
}

namespace detail {

inline constexpr int kSubLattice = 32;
inline constexpr int kBoundarySubsamples = 16;

struct BallOffset {
  std::ptrdiff_t d0 = 0, d1 = 0;  // grid-offset path
  Point h{0.0, 0.0};              // sub-lattice path
  double weight = 0.0;
};

// Grid offsets o with weight |cell(o) ∩ B(0, t)|; cells are centred at the offsets.
inline std::vector<BallOffset> grid_ball_offsets(const Grid& g, double t) {
  const double h = g.spacing();
  const auto reach = static_cast<std::ptrdiff_t>(std::ceil(t / h + 0.5));
  std::vector<BallOffset> out;
  if (g.dim() == 1) {
    for (std::ptrdiff_t i = -reach; i <= reach; ++i) {
      const double lo = std::max(-t, (static_cast<double>(i) - 0.5) * h);
      const double hi = std::min(t, (static_cast<double>(i) + 0.5) * h);
      if (hi > lo) out.push_back({i, 0, {}, hi - lo});
    }
  } else {
    const int S = kBoundarySubsamples;
    for (std::ptrdiff_t i = -reach; i <= reach; ++i)
      for (std::ptrdiff_t j = -reach; j <= reach; ++j) {
        const double cx = static_cast<double>(i) * h, cy = static_cast<double>(j) * h;
        const double near = std::hypot(std::max(0.0, std::abs(cx) - 0.5 * h), std::max(0.0, std::abs(cy) - 0.5 * h));
        const double far = std::hypot(std::abs(cx) + 0.5 * h, std::abs(cy) + 0.5 * h);
        double w = 0.0;
        if (far <= t) {
          w = h * h;
        } else if (near < t) {
          int inside = 0;
          for (int a = 0; a < S; ++a)
            for (int b = 0; b < S; ++b) {
              const double x = cx + ((a + 0.5) / S - 0.5) * h;
              const double y = cy + ((b + 0.5) / S - 0.5) * h;
              if (x * x + y * y <= t * t) ++inside;
            }
          w = h * h * inside / (S * S);
        }
        if (w > 0.0) out.push_back({i, j, {}, w});
      }
  }
  return out;
}

inline std::vector<BallOffset> sub_lattice_offsets(int dim, double t) {
  const int S = kSubLattice;
  const double step = 2.0 * t / S;
  std::vector<BallOffset> out;
  for (int a = 0; a < S; ++a) {
    const double x = -t + (a + 0.5) * step;
    if (dim == 1) {
      out.push_back({0, 0, {x, 0.0}, step});
      continue;
    }
    for (int b = 0; b < S; ++b) {
      const double y = -t + (b + 0.5) * step;
      if (x * x + y * y <= t * t) out.push_back({0, 0, {x, y}, step * step});
    }
  }
  return out;
}

inline void normalize_weights(std::vector<BallOffset>& offs, double volume) {
  double sum = 0.0;
  for (const auto& o : offs) sum += o.weight;
  for (auto& o : offs) o.weight *= volume / sum;
}

}  // namespace detail

/// d^M_t f(x) = t^{-n} integral over |h| <= t of |Delta^M_h f(x)| dh.
///
/// For t >= 4 h the integral runs over grid offsets weighted by their overlap with the ball, and
/// the differences are exact index rotations. Smaller balls use a 32^n midpoint lattice with
/// spectral shifts. In both cases the weights are rescaled to the exact ball volume.
inline RealField ball_means(const SampledFunction& f, double t, int M) {
  detail::require_order(M);
  const Grid& g = f.grid();
  if (!(t > 0.0)) throw InvalidConfig("ball radius t must be positive");
  if (t > g.period() / 4 * (1 + 1e-12))
    throw InvalidConfig("ball radius " + std::to_string(t) + " exceeds a quarter period");
  const auto c = detail::binomial_row(M);
  const double volume = detail::unit_ball_volume(g.dim()) * std::pow(t, g.dim());
  const std::size_t n = g.size();
  RealField acc(n, 0.0);

  if (t >= 4.0 * g.spacing()) {
    auto offs = detail::grid_ball_offsets(g, t);
    detail::normalize_weights(offs, volume);
    const auto& v = f.values();
    RealField dm(n);
    for (const auto& o : offs) {
      // Offsets come in +-o pairs; Delta^M_{-o} f(x) = (-1)^M Delta^M_o f(x - M o), so one pass serves both.
      if (o.d0 < 0 || (o.d0 == 0 && o.d1 < 0)) continue;
      for (std::size_t i = 0; i < n; ++i) {
        Complex s = 0.0;
        for (int j = 0; j <= M; ++j) {
          const auto k = static_cast<std::ptrdiff_t>(M - j);
          s += ((j % 2) ? -c[j] : c[j]) * v[g.shifted(i, k * o.d0, k * o.d1)];
        }
        dm[i] = std::abs(s);
      }
      const bool origin = o.d0 == 0 && o.d1 == 0;
      for (std::size_t i = 0; i < n; ++i) {
        acc[i] += o.weight * dm[i];
        if (!origin) acc[i] += o.weight * dm[g.shifted(i, -M * o.d0, -M * o.d1)];
      }
    }
  } else {
    auto offs = detail::sub_lattice_offsets(g.dim(), t);
    detail::normalize_weights(offs, volume);
    const Spectrum s = dft(f);
    for (const auto& o : offs) {
      const SampledFunction d = apply_multiplier(s, [&](const Point& w) {
        const double phase = w[0] * o.h[0] + w[1] * o.h[1];
        Complex m = 0.0;
        for (int j = 0; j <= M; ++j) m += ((j % 2) ? -c[j] : c[j]) * std::polar(1.0, (M - j) * phase);
        return m;
      });
      for (std::size_t i = 0; i < n; ++i) acc[i] += o.weight * std::abs(d[i]);
    }
  }
  const double scale = std::pow(t, -g.dim());
  for (auto& a : acc) a *= scale;
  return acc;
}

/// Dyadic ball radius 2^-k, capped at a quarter period for large balls.
inline double dyadic_radius(const Grid& g, int k) { return std::min(std::ldexp(1.0, -k), g.period() / 4); }

struct KRange {
  int lo = 0;
  int hi = 0;
};

/// Default truncation [-J, J] with J the default top level of the grid.
inline KRange default_k_range(const Grid& g) {
  const int J = default_top_level(g);
  return {-J, J};
}

namespace detail {

inline void require_k_range(const KRange& r) {
  if (r.lo > r.hi) throw InvalidConfig("k range is empty (k_lo > k_hi)");
}

// Ball means for every k in the range; entry k - lo.
inline std::vector<RealField> dyadic_ball_means(const SampledFunction& f, int M, const KRange& r) {
  std::vector<RealField> out;
  out.reserve(static_cast<std::size_t>(r.hi - r.lo + 1));
  double last = 0.0;
  for (int k = r.lo; k <= r.hi; ++k) {
    const double t = dyadic_radius(f.grid(), k);
    // Capped radii repeat; reuse the previous level.
    out.push_back(t == last ? out.back() : ball_means(f, t, M));
    last = t;
  }
  return out;
}

template <class Log2Weight>
double difference_norm_from_means(const SampledFunction& f, const std::vector<RealField>& means, const KRange& r,
                                  Log2Weight&& log2_weight, const VariableExponent& p, const VariableExponent& q,
                                  Flavor flavor) {
  std::vector<SampledFunction> terms;
  terms.reserve(means.size());
  for (int k = r.lo; k <= r.hi; ++k) {
    const auto& d = means[static_cast<std::size_t>(k - r.lo)];
    RealField v(d.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = d[i] == 0.0 ? 0.0 : d[i] * std::exp2(log2_weight(k, i));
    terms.emplace_back(f.grid(), v);
  }
  return luxemburg_norm(f, p) + mixed_norm(FunctionSequence(std::move(terms), r.lo), p, q, flavor);
}

inline void require_smoothness_order(const SmoothnessFunction& s, int M) {
  detail::require_order(M);
  if (!(M > s.s_plus()))
    throw PreconditionError("condition M > s+ violated: M = " + std::to_string(M) +
                            ", s+ = " + std::to_string(s.s_plus()));
}

}  // namespace detail

/// ||f | L_p|| + ||(2^{k s(x)} d^M_{2^-k} f)_{k in range}| l_q(L_p) or L_p(l_q)||.
inline double norm_differences(const SampledFunction& f, const SmoothnessFunction& s, const VariableExponent& p,
                               const VariableExponent& q, int M, const KRange& r, Flavor flavor) {
  require_same_grid(f.grid(), s.grid(), "norm_differences");
  detail::require_smoothness_order(s, M);
  detail::require_k_range(r);
  const auto means = detail::dyadic_ball_means(f, M, r);
  return detail::difference_norm_from_means(
      f, means, r, [&](int k, std::size_t i) { return k * s[i]; }, p, q, flavor);
}

inline double besov_norm_differences(const SampledFunction& f, const SmoothnessFunction& s,
                                     const VariableExponent& p, const VariableExponent& q, int M, const KRange& r) {
  return norm_differences(f, s, p, q, M, r, Flavor::besov);
}

inline double tl_norm_differences(const SampledFunction& f, const SmoothnessFunction& s, const VariableExponent& p,
                                  const VariableExponent& q, int M, const KRange& r) {
  return norm_differences(f, s, p, q, M, r, Flavor::tl);
}

/// t_i = 2^{-i / per_octave}, i = -per_octave k_hi .. per_octave k_hi, in decreasing order.
inline std::vector<double> geometric_ladder(int k_hi, int per_octave = 2) {
  if (k_hi < 0 || per_octave < 1) throw InvalidConfig("ladder needs k_hi >= 0 and per_octave >= 1");
  std::vector<double> t;
  for (int i = -per_octave * k_hi; i <= per_octave * k_hi; ++i)
    t.push_back(std::exp2(-static_cast<double>(i) / per_octave));
  return t;
}

/// ||f | L_p|| + || (integral t^{-s q} (d^M_t f)^q dt / t)^{1/q} | L_p ||, trapezoid rule in log t.
/// Ball radii above a quarter period are capped there while the weight t^{-s} keeps decaying.
inline double tl_norm_differences_continuous(const SampledFunction& f, const SmoothnessFunction& s,
                                             const VariableExponent& p, const VariableExponent& q, int M,
                                             std::vector<double> t_nodes) {
  require_same_grid(f.grid(), s.grid(), "tl_norm_differences_continuous");
  detail::require_smoothness_order(s, M);
  if (t_nodes.empty()) throw InvalidConfig("t ladder is empty");
  if (q.has_infinity()) throw InvalidConfig("continuous F-norm needs q+ < infinity");
  for (double t : t_nodes)
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidConfig("t ladder nodes must be positive and finite");
  std::sort(t_nodes.begin(), t_nodes.end());
  t_nodes.erase(std::unique(t_nodes.begin(), t_nodes.end()), t_nodes.end());
  const Grid& g = f.grid();
  const std::size_t n = g.size();
  // integrand(t, x) = (t^{-s(x)} d_t(x))^{q(x)}
  std::vector<RealField> vals;
  vals.reserve(t_nodes.size());
  for (double t : t_nodes) {
    const RealField d = ball_means(f, std::min(t, g.period() / 4), M);
    RealField v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = d[i] == 0.0 ? 0.0 : std::pow(d[i] * std::pow(t, -s[i]), q[i]);
    vals.push_back(std::move(v));
  }
  RealField inner(n, 0.0);
  for (std::size_t m = 0; m + 1 < t_nodes.size(); ++m) {
    const double du = std::log(t_nodes[m + 1] / t_nodes[m]);
    for (std::size_t i = 0; i < n; ++i) inner[i] += 0.5 * du * (vals[m][i] + vals[m + 1][i]);
  }
  for (std::size_t i = 0; i < n; ++i) inner[i] = std::pow(inner[i], 1.0 / q[i]);
  return luxemburg_norm(f, p) + luxemburg_norm(SampledFunction(g, inner), p);
}

struct ConditionReport {
  bool ok = false;
  Flavor flavor = Flavor::besov;
  double sigma_p = 0.0;          // n (1 / min(p-, 1) - 1)
  double sigma_pq = 0.0;         // n (1 / min(p-, q-, 1) - 1)
  double threshold_lhs = 0.0;    // s- or alpha1
  double threshold_rhs = 0.0;
  bool smoothness_ok = false;    // threshold_lhs > threshold_rhs
  double order_bound = 0.0;      // s+ or alpha2
  bool order_ok = false;         // M > order_bound
  bool exponents_ok = true;      // F-case: p+, q+ < infinity
  double clog_s = 0.0;           // c_log(s) or alpha
  double clog_inv_q = 0.0;       // c_log(1/q)
  std::string violated;          // empty when ok
};

namespace detail {

inline ConditionReport evaluate_conditions(double lhs, double order_bound, double clog_s, int dim,
                                           const VariableExponent& p, const VariableExponent& q, int M,
                                           Flavor flavor, const char* lhs_name, const char* order_name) {
  ConditionReport r;
  r.flavor = flavor;
  const double n = dim;
  const double pm = p.p_minus(), qm = q.p_minus();
  r.sigma_p = n * (1.0 / std::min(pm, 1.0) - 1.0);
  r.sigma_pq = n * (1.0 / std::min({pm, qm, 1.0}) - 1.0);
  r.clog_s = clog_s;
  r.clog_inv_q = q.clog_estimate();
  r.threshold_lhs = lhs;
  if (flavor == Flavor::besov)
    r.threshold_rhs = r.sigma_p == 0.0 ? 0.0 : r.sigma_p * (1.0 + r.clog_inv_q / n + clog_s / n * pm);
  else
    r.threshold_rhs = r.sigma_pq == 0.0 ? 0.0 : r.sigma_pq * (1.0 + clog_s / n * std::min(pm, qm));
  r.smoothness_ok = r.threshold_lhs > r.threshold_rhs;
  r.order_bound = order_bound;
  r.order_ok = M > order_bound;
  r.exponents_ok = flavor == Flavor::besov || (!p.has_infinity() && !q.has_infinity());
  r.ok = r.smoothness_ok && r.order_ok && r.exponents_ok;
  std::vector<std::string> v;
  if (!r.order_ok) v.push_back(std::string("M > ") + order_name);
  if (!r.smoothness_ok)
    v.push_back(std::string(lhs_name) + (flavor == Flavor::besov ? " > sigma_p- [1 + c_log(1/q)/n + c_log(s) p-/n]"
                                                                 : " > sigma_{p-,q-} [1 + c_log(s) min(p-,q-)/n]"));
  if (!r.exponents_ok) v.push_back("p+, q+ < infinity");
  for (std::size_t i = 0; i < v.size(); ++i) r.violated += (i ? "; " : "") + v[i];
  return r;
}

}  // namespace detail

/// Hypotheses of the difference characterization for variable smoothness.
inline ConditionReport check_conditions(const SmoothnessFunction& s, const VariableExponent& p,
                                        const VariableExponent& q, int M, Flavor flavor) {
  return detail::evaluate_conditions(s.s_minus(), s.s_plus(), s.clog_estimate(), s.grid().dim(), p, q, M, flavor,
                                     "s-", "s+");
}

/// Hypotheses for admissible weights: alpha1 replaces s-, alpha replaces c_log(s), M > alpha2.
inline ConditionReport check_conditions(const WeightSequence& w, const VariableExponent& p,
                                        const VariableExponent& q, int M, Flavor flavor) {
  return detail::evaluate_conditions(w.alpha1(), w.alpha2(), w.alpha(), w.grid().dim(), p, q, M, flavor, "alpha1",
                                     "alpha2");
}

/// 2-microlocal difference norm; levels k < 0 use w_0 2^{-|k| alpha1}.
inline double norm_differences_2ml(const SampledFunction& f, const WeightSequence& w, const VariableExponent& p,
                                   const VariableExponent& q, int M, const KRange& r, Flavor flavor) {
  require_same_grid(f.grid(), w.grid(), "norm_differences_2ml");
  detail::require_order(M);
  detail::require_k_range(r);
  const ConditionReport c = check_conditions(w, p, q, M, flavor);
  if (!c.order_ok || !c.smoothness_ok) throw PreconditionError("2-microlocal difference norm: condition " + c.violated + " violated");
  if (r.hi > w.top_level())
    throw InvalidConfig("k_hi = " + std::to_string(r.hi) + " exceeds the weight sequence top level " +
                        std::to_string(w.top_level()));
  const auto means = detail::dyadic_ball_means(f, M, r);
  const double a1 = w.alpha1();
  return detail::difference_norm_from_means(
      f, means, r,
      [&](int k, std::size_t i) {
        return k >= 0 ? w.log2_level(static_cast<std::size_t>(k))[i] : w.log2_level(0)[i] + k * a1;
      },
      p, q, flavor);
}

inline double besov_norm_differences_2ml(const SampledFunction& f, const WeightSequence& w,
                                         const VariableExponent& p, const VariableExponent& q, int M,
                                         const KRange& r) {
  return norm_differences_2ml(f, w, p, q, M, r, Flavor::besov);
}

inline double tl_norm_differences_2ml(const SampledFunction& f, const WeightSequence& w, const VariableExponent& p,
                                      const VariableExponent& q, int M, const KRange& r) {
  return norm_differences_2ml(f, w, p, q, M, r, Flavor::tl);
}

}  // namespace vbtl
