#pragma once

// Norm-equivalence stability experiments.
//
// For each seeded sample the Fourier-analytic, Peetre-maximal, local-means and ball-means-of-
// differences norms are computed with the same weights and exponents. Equivalence is measured as
// the spread (max / min over samples) of every pairwise ratio. When the difference-norm
// conditions fail the report is marked non-contractual and `pass` is left undefined.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vbtl/csv_io.hpp"
#include "vbtl/differences.hpp"
#include "vbtl/expression.hpp"
#include "vbtl/families.hpp"
#include "vbtl/local_means.hpp"
#include "vbtl/peetre.hpp"

namespace vbtl {

/// w_j(x) = 2^(js) (1 + 2^j |x - x0|)^(s'), x0 on the diagonal of the torus.
struct TwoMicrolocalSpec {
  double s = 1.0;
  double sprime = 0.0;
  double x0 = 0.0;
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::string s = "1";
  std::optional<TwoMicrolocalSpec> weights;  // replaces s when set
  std::string p = "2";
  std::string q = "2";
  Flavor flavor = Flavor::besov;
  int dim = 1;
  std::size_t n = 512;
  double period = 2 * std::numbers::pi;
  int M = 2;
  std::optional<int> J;       // grid default when unset
  std::optional<double> a;    // threshold + 1 when unset
  std::optional<int> R;       // floor(alpha2) + 1 when unset
  FamilySpec family;
  int samples = 20;
  std::uint64_t seed = 1;
  bool inject_zero = false;   // replace sample 0 by f = 0
  double max_spread = 10.0;   // asserted bound on max/min of every pairwise ratio
};

inline const std::vector<std::string>& equivalence_methods() {
  static const std::vector<std::string> m{"fourier", "peetre", "localmeans", "differences"};
  return m;
}

struct RatioStats {
  std::string numerator;
  std::string denominator;
  std::optional<double> min;
  std::optional<double> max;
  std::optional<double> geomean;
  std::optional<double> spread;  // max / min
  std::vector<std::optional<double>> per_sample;
};

struct EquivalenceReport {
  ExperimentConfig config;
  std::vector<std::string> methods;
  std::vector<std::vector<double>> norms;  // [method][sample]
  std::vector<RatioStats> ratios;
  ConditionReport conditions;
  bool contractual = false;
  std::optional<bool> pass;
  // Resolved parameters.
  int J = 0;
  KRange k_range;
  double peetre_a = 0.0;
  int kernel_R = 0;
  double tauber_epsilon = 0.0;
  double runtime_seconds = 0.0;  // excluded from comparisons
};

namespace detail {

inline void set_bool(bool& out, const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") out = true;
  else if (v == "false" || v == "0") out = false;
  else throw InvalidConfig(key + ": expected true or false, got '" + v + "'");
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  if constexpr (std::is_integral_v<T>) {
    T out{};
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
      throw InvalidConfig(key + ": expected an integer, got '" + v + "'");
    return out;
  } else {
    const auto d = parse_double(v);
    if (!d) throw InvalidConfig(key + ": expected a number, got '" + v + "'");
    return *d;
  }
}

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline Flavor flavor_from_string(const std::string& s) {
  if (s == "besov" || s == "B") return Flavor::besov;
  if (s == "tl" || s == "F") return Flavor::tl;
  throw InvalidConfig("flavor must be besov or tl, got '" + s + "'");
}

/// "2ml:<s>,<s'>,<x0>"
inline TwoMicrolocalSpec parse_two_microlocal(const std::string& text) {
  if (text.rfind("2ml:", 0) != 0) throw InvalidConfig("weights must have the form 2ml:<s>,<s'>,<x0>");
  std::stringstream ss(text.substr(4));
  std::string part;
  std::vector<double> v;
  while (std::getline(ss, part, ',')) v.push_back(detail::parse_number<double>("weights", detail::trim(part)));
  if (v.size() != 3) throw InvalidConfig("weights must have the form 2ml:<s>,<s'>,<x0>");
  return {v[0], v[1], v[2]};
}

inline std::string to_string(const TwoMicrolocalSpec& w) {
  return "2ml:" + detail::format_double(w.s) + "," + detail::format_double(w.sprime) + "," +
         detail::format_double(w.x0);
}

/// Applies one key = value setting; unknown keys are errors.
inline void set_config_value(ExperimentConfig& c, const std::string& key, const std::string& value) {
  using detail::parse_number;
  if (key == "name") c.name = value;
  else if (key == "s") c.s = value;
  else if (key == "weights") c.weights = parse_two_microlocal(value);
  else if (key == "p") c.p = value;
  else if (key == "q") c.q = value;
  else if (key == "flavor") c.flavor = flavor_from_string(value);
  else if (key == "dim") c.dim = parse_number<int>(key, value);
  else if (key == "n") c.n = parse_number<std::size_t>(key, value);
  else if (key == "period") c.period = parse_number<double>(key, value);
  else if (key == "M") c.M = parse_number<int>(key, value);
  else if (key == "J") c.J = parse_number<int>(key, value);
  else if (key == "a") c.a = value == "auto" ? std::nullopt : std::optional(parse_number<double>(key, value));
  else if (key == "R") c.R = parse_number<int>(key, value);
  else if (key == "family") c.family.kind = family_from_string(value);
  else if (key == "gamma") c.family.gamma = parse_number<double>(key, value);
  else if (key == "beta") c.family.beta = parse_number<double>(key, value);
  else if (key == "x0") c.family.x0 = Point{parse_number<double>(key, value), parse_number<double>(key, value)};
  else if (key == "decay") c.family.decay = parse_number<double>(key, value);
  else if (key == "samples") c.samples = parse_number<int>(key, value);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "inject_zero") detail::set_bool(c.inject_zero, key, value);
  else if (key == "max_spread") c.max_spread = parse_number<double>(key, value);
  else throw InvalidConfig("unknown configuration key '" + key + "'");
}

/// Flat "key = value" text; '#' starts a comment.
inline ExperimentConfig parse_experiment_config(std::istream& in, ExperimentConfig c = {}) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidConfig("line " + std::to_string(lineno) + ": expected key = value");
    try {
      set_config_value(c, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    } catch (const InvalidConfig& e) {
      throw InvalidConfig("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

inline ExperimentConfig read_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open configuration file '" + path + "'");
  return parse_experiment_config(in);
}

/// Key/value view of a configuration, in a fixed order; parse_experiment_config reads it back.
inline std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& c) {
  using detail::format_double;
  std::vector<std::pair<std::string, std::string>> e{{"name", c.name}};
  if (c.weights) e.emplace_back("weights", to_string(*c.weights));
  else e.emplace_back("s", c.s);
  e.emplace_back("p", c.p);
  e.emplace_back("q", c.q);
  e.emplace_back("flavor", to_string(c.flavor));
  e.emplace_back("dim", std::to_string(c.dim));
  e.emplace_back("n", std::to_string(c.n));
  e.emplace_back("period", format_double(c.period));
  e.emplace_back("M", std::to_string(c.M));
  if (c.J) e.emplace_back("J", std::to_string(*c.J));
  e.emplace_back("a", c.a ? format_double(*c.a) : "auto");
  if (c.R) e.emplace_back("R", std::to_string(*c.R));
  e.emplace_back("family", to_string(c.family.kind));
  e.emplace_back("gamma", format_double(c.family.gamma));
  e.emplace_back("beta", format_double(c.family.beta));
  if (c.family.x0) e.emplace_back("x0", format_double((*c.family.x0)[0]));
  e.emplace_back("decay", format_double(c.family.decay));
  e.emplace_back("samples", std::to_string(c.samples));
  e.emplace_back("seed", std::to_string(c.seed));
  e.emplace_back("inject_zero", c.inject_zero ? "true" : "false");
  e.emplace_back("max_spread", format_double(c.max_spread));
  return e;
}

/// Exponents and weights of a configuration, evaluated on its grid.
struct ResolvedSpace {
  Grid grid;
  std::optional<SmoothnessFunction> s;
  VariableExponent p;
  VariableExponent q;
  WeightSequence w;
  int J;
};

inline VariableExponent exponent_from_expression(const std::string& text, const Grid& g, ExponentRole role,
                                                 bool allow_infinity) {
  const RealField v = evaluate_on_grid(parse_expression(text), g);
  validate_role(v, role, 0.0, allow_infinity);
  return VariableExponent(g, v);
}

inline SmoothnessFunction smoothness_from_expression(const std::string& text, const Grid& g) {
  const RealField v = evaluate_on_grid(parse_expression(text), g);
  validate_role(v, ExponentRole::s);
  return SmoothnessFunction(g, v);
}

inline ResolvedSpace resolve_space(const ExperimentConfig& c) {
  const Grid g(c.dim, c.n, c.period);
  const int J = c.J.value_or(default_top_level(g));
  auto p = exponent_from_expression(c.p, g, ExponentRole::p, true);
  auto q = exponent_from_expression(c.q, g, ExponentRole::q, c.flavor == Flavor::besov);
  if (c.weights) {
    const Point x0{c.weights->x0, c.dim == 2 ? c.weights->x0 : 0.0};
    auto w = two_microlocal_weights(g, c.weights->s, c.weights->sprime, x0, J);
    return {g, std::nullopt, std::move(p), std::move(q), std::move(w), J};
  }
  auto s = smoothness_from_expression(c.s, g);
  auto w = weights_from_smoothness(s, J);
  return {g, std::move(s), std::move(p), std::move(q), std::move(w), J};
}

inline void validate_experiment(const ExperimentConfig& c) {
  if (c.samples < 1) throw InvalidConfig("samples must be >= 1");
  if (c.M < 1) throw InvalidConfig("M must be >= 1");
  if (!(c.max_spread >= 1.0)) throw InvalidConfig("max_spread must be >= 1");
  validate_family(c.family);
  if ((c.family.kind == FamilyKind::cusp || c.family.kind == FamilyKind::chirp) && !(c.family.gamma < c.M))
    throw InvalidConfig("family gamma must lie in (0, M)");
}

inline EquivalenceReport run_equivalence_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  validate_experiment(cfg);
  const ResolvedSpace sp = resolve_space(cfg);
  const Grid& g = sp.grid;

  EquivalenceReport rep;
  rep.config = cfg;
  rep.methods = equivalence_methods();
  rep.J = sp.J;
  rep.k_range = {-sp.J, sp.J};
  rep.conditions = sp.s ? check_conditions(*sp.s, sp.p, sp.q, cfg.M, cfg.flavor)
                        : check_conditions(sp.w, sp.p, sp.q, cfg.M, cfg.flavor);
  rep.contractual = rep.conditions.ok;
  rep.peetre_a = resolve_peetre_a(cfg.a, g.dim(), sp.p, sp.q, sp.w.alpha(), cfg.flavor);
  rep.kernel_R = cfg.R.value_or(static_cast<int>(std::floor(sp.w.alpha2())) + 1);
  const KernelSet kernels = build_local_means_kernels(g, rep.kernel_R);
  rep.tauber_epsilon = kernels.tauber_epsilon;
  const bool order_ok = rep.conditions.order_ok;

  rep.norms.assign(rep.methods.size(), std::vector<double>(static_cast<std::size_t>(cfg.samples)));
  for (int i = 0; i < cfg.samples; ++i) {
    const SampledFunction f = cfg.inject_zero && i == 0
                                  ? SampledFunction::zero(g)
                                  : make_family_sample(cfg.family, g, cfg.seed, static_cast<std::uint64_t>(i));
    const auto idx = static_cast<std::size_t>(i);
    try {
      rep.norms[0][idx] = fourier_norm(f, sp.w, sp.p, sp.q, cfg.flavor);
      rep.norms[1][idx] = peetre_norm(f, sp.w, sp.p, sp.q, cfg.flavor, rep.peetre_a);
      rep.norms[2][idx] = local_means_norm(f, kernels, sp.w, sp.p, sp.q, cfg.flavor);
      if (!order_ok) {
        rep.norms[3][idx] = std::numeric_limits<double>::quiet_NaN();
      } else if (sp.s) {
        rep.norms[3][idx] = norm_differences(f, *sp.s, sp.p, sp.q, cfg.M, rep.k_range, cfg.flavor);
      } else {
        rep.norms[3][idx] = norm_differences_2ml(f, sp.w, sp.p, sp.q, cfg.M, rep.k_range, cfg.flavor);
      }
    } catch (const NumericFailure& e) {
      throw NumericFailure("sample " + std::to_string(i) + ": " + e.what());
    }
  }

  bool all_ok = true;
  bool any_defined = false;
  for (std::size_t a = 0; a < rep.methods.size(); ++a)
    for (std::size_t b = a + 1; b < rep.methods.size(); ++b) {
      RatioStats st;
      st.numerator = rep.methods[b];
      st.denominator = rep.methods[a];
      double lo = kInfinity, hi = 0.0, log_sum = 0.0;
      int count = 0;
      for (std::size_t i = 0; i < static_cast<std::size_t>(cfg.samples); ++i) {
        const double num = rep.norms[b][i], den = rep.norms[a][i];
        if (!(num > 0.0) || !(den > 0.0) || !std::isfinite(num) || !std::isfinite(den)) {
          st.per_sample.emplace_back();
          if ((num == 0.0) != (den == 0.0)) all_ok = false;  // one norm vanishes, the other does not
          continue;
        }
        const double r = num / den;
        st.per_sample.emplace_back(r);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        log_sum += std::log(r);
        ++count;
      }
      if (count > 0) {
        any_defined = true;
        st.min = lo;
        st.max = hi;
        st.geomean = std::exp(log_sum / count);
        st.spread = hi / lo;
        all_ok = all_ok && *st.spread <= cfg.max_spread;
      }
      rep.ratios.push_back(std::move(st));
    }
  if (rep.contractual && any_defined) rep.pass = all_ok;
  rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace vbtl
