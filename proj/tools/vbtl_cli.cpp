// vbtl_cli: norms, equivalence experiments, inequality suites and condition checks.
//
// Exit codes: 0 ok, 1 condition or assertion failure, 2 usage or invalid input, 3 numeric failure.

#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vbtl/vbtl.hpp"

namespace {

using namespace vbtl;

constexpr int kOk = 0;
constexpr int kConditionFailure = 1;
constexpr int kUsage = 2;
constexpr int kNumericFailure = 3;

// A failure attributed to one flag; the message starts with the flag name.
struct FlagError : InvalidInput {
  FlagError(const std::string& flag, const std::string& what) : InvalidInput(flag + ": " + what) {}
};

// Runs `fn`, prefixing any input or configuration error with the flag that supplied the value.
template <class F>
auto for_flag(const std::string& flag, F&& fn) {
  try {
    return fn();
  } catch (const FlagError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw FlagError(flag, e.what());
  }
}

void emit(const Json& j, const std::string& out) {
  if (out.empty()) std::cout << j.dump(2) << '\n';
  else write_json_file(out, j);
}

std::string format(double v) { return detail::format_double(v); }

void print_conditions(const ConditionReport& r) {
  std::cout << "flavor: " << to_string(r.flavor) << '\n'
            << "sigma_p: " << format(r.sigma_p) << '\n'
            << "sigma_pq: " << format(r.sigma_pq) << '\n'
            << "threshold: " << format(r.threshold_lhs) << " > " << format(r.threshold_rhs) << " "
            << (r.smoothness_ok ? "holds" : "fails") << '\n'
            << "order: M > " << format(r.order_bound) << " " << (r.order_ok ? "holds" : "fails") << '\n'
            << "exponents_finite: " << (r.exponents_ok ? "yes" : "no") << '\n'
            << "clog_s: " << format(r.clog_s) << '\n'
            << "clog_inv_q: " << format(r.clog_inv_q) << '\n'
            << "result: " << (r.ok ? "ok" : "violated: " + r.violated) << '\n';
}

// Exponents of a norm or conditions command, evaluated on one grid.
struct Space {
  std::optional<SmoothnessFunction> s;
  std::optional<WeightSequence> w;
  VariableExponent p;
  VariableExponent q;
};

Space resolve(const Grid& g, const std::string& s, const std::string& weights, const std::string& p,
              const std::string& q, Flavor flavor, int J) {
  auto pe = for_flag("--p", [&] { return exponent_from_expression(p, g, ExponentRole::p, true); });
  auto qe = for_flag("--q", [&] { return exponent_from_expression(q, g, ExponentRole::q, flavor == Flavor::besov); });
  if (!weights.empty()) {
    const auto spec = for_flag("--weights", [&] { return parse_two_microlocal(weights); });
    const Point x0{spec.x0, g.dim() == 2 ? spec.x0 : 0.0};
    auto w = for_flag("--weights", [&] { return two_microlocal_weights(g, spec.s, spec.sprime, x0, J); });
    return {std::nullopt, std::move(w), std::move(pe), std::move(qe)};
  }
  auto se = for_flag("--s", [&] { return smoothness_from_expression(s, g); });
  auto w = for_flag("--s", [&] { return weights_from_smoothness(se, J); });
  return {std::move(se), std::move(w), std::move(pe), std::move(qe)};
}

ConditionReport conditions_of(const Space& sp, int M, Flavor flavor) {
  return sp.s ? check_conditions(*sp.s, sp.p, sp.q, M, flavor) : check_conditions(*sp.w, sp.p, sp.q, M, flavor);
}

struct NormArgs {
  std::string input, flavor = "besov", method = "fourier", s = "1", weights, p = "2", q = "2", a = "auto", out;
  int M = 2;
  std::optional<int> J, k_lo, k_hi;
};

int run_norm(const NormArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const SampledFunction f = for_flag("--input", [&] { return read_samples_file(a.input); });
  const Grid& g = f.grid();
  const Flavor flavor = flavor_from_string(a.flavor);
  const int J = a.J.value_or(default_top_level(g));
  if (J < 0) throw FlagError("--J", "must be >= 0");
  if (J > default_top_level(g))
    throw FlagError("--J", "level " + std::to_string(J) + " exceeds the Nyquist limit " +
                               std::to_string(default_top_level(g)) + " of the input grid");
  const Space sp = resolve(g, a.s, a.weights, a.p, a.q, flavor, J);

  NormReport rep;
  rep.input = a.input;
  rep.method = a.method;
  rep.flavor = flavor;
  rep.parameters = {{"flavor", a.flavor}, {"method", a.method}};
  if (a.weights.empty()) rep.parameters.emplace_back("s", a.s);
  else rep.parameters.emplace_back("weights", a.weights);
  rep.parameters.insert(rep.parameters.end(), {{"p", a.p}, {"q", a.q}, {"J", std::to_string(J)}});

  int code = kOk;
  if (a.method == "fourier") {
    rep.value = fourier_norm(f, *sp.w, sp.p, sp.q, flavor);
  } else if (a.method == "peetre") {
    std::optional<double> av;
    if (a.a != "auto") av = for_flag("--a", [&] { return detail::parse_number<double>("value", a.a); });
    const double used = for_flag("--a", [&] { return resolve_peetre_a(av, g.dim(), sp.p, sp.q, sp.w->alpha(), flavor); });
    rep.parameters.emplace_back("a", format(used));
    rep.value = peetre_norm(f, *sp.w, sp.p, sp.q, flavor, used);
  } else if (a.method == "localmeans") {
    const int R = static_cast<int>(std::floor(sp.w->alpha2())) + 1;
    const KernelSet ks = build_local_means_kernels(g, R);
    rep.parameters.emplace_back("R", std::to_string(R));
    rep.value = local_means_norm(f, ks, *sp.w, sp.p, sp.q, flavor);
  } else {
    if (a.M < 1) throw FlagError("--M", "must be >= 1");
    const KRange r{a.k_lo.value_or(-J), a.k_hi.value_or(J)};
    if (r.lo > r.hi) throw FlagError("--k-lo", "must not exceed --k-hi");
    rep.parameters.insert(rep.parameters.end(), {{"M", std::to_string(a.M)},
                                                 {"k_lo", std::to_string(r.lo)},
                                                 {"k_hi", std::to_string(r.hi)}});
    rep.conditions = conditions_of(sp, a.M, flavor);
    if (!rep.conditions->ok) {
      const auto& c = *rep.conditions;
      std::cerr << "condition failure: " << c.violated << " (M = " << a.M << ", bound = " << format(c.order_bound)
                << ", threshold " << format(c.threshold_lhs) << " > " << format(c.threshold_rhs) << ")\n";
      rep.value = std::numeric_limits<double>::quiet_NaN();
      rep.pass = false;
      code = kConditionFailure;
    } else {
      rep.value = sp.s ? norm_differences(f, *sp.s, sp.p, sp.q, a.M, r, flavor)
                       : norm_differences_2ml(f, *sp.w, sp.p, sp.q, a.M, r, flavor);
    }
  }
  rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(to_json(rep), a.out);
  return code;
}

int run_equivalence(const std::string& config, const std::vector<std::pair<std::string, std::string>>& overrides,
                    const std::string& out) {
  ExperimentConfig c = config.empty() ? ExperimentConfig{} : for_flag("--config", [&] { return read_experiment_config(config); });
  for (const auto& [key, value] : overrides) {
    std::string flag = "--" + key;
    for (char& ch : flag) ch = ch == '_' ? '-' : ch;
    for_flag(flag, [&] { set_config_value(c, key, value); });
  }
  const EquivalenceReport rep = run_equivalence_experiment(c);
  emit(to_json(rep), out);
  if (!rep.contractual) std::cerr << "condition failure: " << rep.conditions.violated << '\n';
  else if (rep.pass && !*rep.pass) std::cerr << "assertion failure: a pairwise ratio spread exceeds max_spread\n";
  return rep.pass.value_or(false) ? kOk : kConditionFailure;
}

int run_inequalities(const std::string& suite, int trials, std::uint64_t seed, const std::string& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto reports = for_flag("--suite", [&] { return run_inequality_suite(suite, seed, trials); });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const Json j = inequality_file_json(suite, seed, trials, reports, secs);
  emit(j, out);
  for (const auto& r : reports)
    if (!r.pass)
      std::cerr << "assertion failure: " << r.suite << " / " << r.variant << ": " << r.violations << " violations\n";
  return j.at("pass").get<bool>() ? kOk : kConditionFailure;
}

int run_kernels(int R, double radius, bool check, int dim, std::size_t n) {
  const Grid g = for_flag("--n", [&] { return Grid(dim, n, 2 * std::numbers::pi); });
  const KernelSet ks = for_flag("--radius", [&] { return build_local_means_kernels(g, R, radius); });
  std::cout << "grid: dim=" << dim << " n=" << n << " period=" << format(g.period()) << '\n'
            << "support_radius: " << format(ks.support_radius) << '\n'
            << "moment_order: " << ks.moment_order << '\n'
            << "vanishing_moments: " << ks.vanishing_moments << '\n'
            << "tauber_epsilon: " << format(ks.tauber_epsilon) << '\n';
  double l1 = 0.0;
  for (const auto& v : ks.k.values()) l1 += std::abs(v);
  l1 *= std::pow(g.spacing(), dim);
  double worst = 0.0;
  for (int b0 = 0; b0 < ks.vanishing_moments; ++b0)
    for (int b1 = 0; b1 + b0 < ks.vanishing_moments; ++b1) {
      if (dim == 1 && b1 > 0) break;
      const double m = std::abs(kernel_moment(ks.k, {b0, b1}));
      worst = std::max(worst, m / l1);
      std::cout << "moment(" << b0 << (dim == 2 ? "," + std::to_string(b1) : "") << "): " << format(m) << '\n';
    }
  std::cout << "max_relative_moment: " << format(worst) << '\n';
  if (!check) return kOk;
  const bool ok = worst <= 1e-10 && ks.tauber_epsilon > 0.0;
  std::cout << "check: " << (ok ? "ok" : "failed") << '\n';
  return ok ? kOk : kConditionFailure;
}

int run_conditions(const std::string& s, const std::string& weights, const std::string& p, const std::string& q, int M,
                   const std::string& flavor_text, int dim, std::size_t n) {
  if (M < 1) throw FlagError("--M", "must be >= 1");
  const Grid g = for_flag("--n", [&] { return Grid(dim, n, 2 * std::numbers::pi); });
  const Flavor flavor = flavor_from_string(flavor_text);
  const Space sp = resolve(g, s, weights, p, q, flavor, default_top_level(g));
  const ConditionReport r = conditions_of(sp, M, flavor);
  print_conditions(r);
  if (!r.ok) std::cerr << "condition failure: " << r.violated << '\n';
  return r.ok ? kOk : kConditionFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable Besov and Triebel-Lizorkin norms on periodic grids"};
  app.require_subcommand(1);
  const auto flavors = CLI::IsMember({"besov", "tl", "B", "F"});

  NormArgs na;
  auto* norm = app.add_subcommand("norm", "Norm of a sampled function");
  norm->add_option("--input", na.input, "CSV samples")->required();
  norm->add_option("--flavor", na.flavor)->check(flavors);
  norm->add_option("--method", na.method)->check(CLI::IsMember({"fourier", "localmeans", "differences", "peetre"}));
  auto* norm_s = norm->add_option("--s", na.s, "smoothness expression");
  norm->add_option("--weights", na.weights, "2ml:<s>,<s'>,<x0>")->excludes(norm_s);
  norm->add_option("--p", na.p);
  norm->add_option("--q", na.q);
  norm->add_option("--M", na.M);
  norm->add_option("--J", na.J);
  norm->add_option("--a", na.a, "auto or a positive real");
  norm->add_option("--k-lo", na.k_lo);
  norm->add_option("--k-hi", na.k_hi);
  norm->add_option("--out", na.out, "report path; stdout when omitted");

  std::string eq_config, eq_out;
  std::map<std::string, std::string> eq_values;
  std::vector<std::pair<std::string, CLI::Option*>> eq_options;
  auto* equiv = app.add_subcommand("equivalence", "Pairwise norm ratios over a seeded family");
  equiv->add_option("--config", eq_config)->check(CLI::ExistingFile);
  equiv->add_option("--out", eq_out);
  for (const auto& [key, flag] : std::vector<std::pair<std::string, std::string>>{
           {"name", "--name"},       {"s", "--s"},         {"weights", "--weights"}, {"p", "--p"},
           {"q", "--q"},             {"flavor", "--flavor"}, {"dim", "--dim"},       {"n", "--n"},
           {"period", "--period"},   {"M", "--M"},         {"J", "--J"},             {"a", "--a"},
           {"R", "--R"},             {"family", "--family"}, {"gamma", "--gamma"},   {"beta", "--beta"},
           {"x0", "--x0"},           {"decay", "--decay"}, {"samples", "--samples"}, {"seed", "--seed"},
           {"inject_zero", "--inject-zero"}, {"max_spread", "--max-spread"}}) {
    eq_options.emplace_back(key, equiv->add_option(flag, eq_values[key], "overrides '" + key + "' from the file"));
  }

  std::string iq_suite = "all", iq_out;
  int iq_trials = 1000;
  std::uint64_t iq_seed = 1;
  auto* ineq = app.add_subcommand("inequalities", "Randomized inequality suites");
  std::vector<std::string> suites{"all"};
  for (const auto& s : inequality_suites()) suites.push_back(s);
  ineq->add_option("--suite", iq_suite)->check(CLI::IsMember(suites));
  ineq->add_option("--trials", iq_trials)->check(CLI::PositiveNumber);
  ineq->add_option("--seed", iq_seed);
  ineq->add_option("--out", iq_out);

  int k_R = 3, grid_dim = 1;
  std::size_t grid_n = 512;
  double k_radius = 1.0;
  bool k_check = false;
  auto* kern = app.add_subcommand("kernels", "Local-means kernel diagnostics");
  kern->add_option("--R", k_R)->check(CLI::NonNegativeNumber);
  kern->add_option("--radius", k_radius)->check(CLI::PositiveNumber);
  kern->add_flag("--check", k_check, "exit 1 unless moments vanish and the Tauberian radius is positive");
  kern->add_option("--dim", grid_dim)->check(CLI::Range(1, 2));
  kern->add_option("--n", grid_n);

  std::string c_s = "1", c_weights, c_p = "2", c_q = "2", c_flavor = "besov";
  int c_M = 2;
  auto* cond = app.add_subcommand("conditions", "Check the hypotheses of the difference characterization");
  auto* cond_s = cond->add_option("--s", c_s);
  cond->add_option("--weights", c_weights)->excludes(cond_s);
  cond->add_option("--p", c_p);
  cond->add_option("--q", c_q);
  cond->add_option("--M", c_M);
  cond->add_option("--flavor", c_flavor)->check(flavors);
  cond->add_option("--dim", grid_dim)->check(CLI::Range(1, 2));
  cond->add_option("--n", grid_n);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*norm) return run_norm(na);
    if (*equiv) {
      std::vector<std::pair<std::string, std::string>> overrides;
      for (const auto& [key, opt] : eq_options)
        if (opt->count() > 0) overrides.emplace_back(key, eq_values[key]);
      return run_equivalence(eq_config, overrides, eq_out);
    }
    if (*ineq) return run_inequalities(iq_suite, iq_trials, iq_seed, iq_out);
    if (*kern) return run_kernels(k_R, k_radius, k_check, grid_dim, grid_n);
    if (*cond) return run_conditions(c_s, c_weights, c_p, c_q, c_M, c_flavor, grid_dim, grid_n);
  } catch (const PreconditionError& e) {
    std::cerr << "condition failure: " << e.what() << '\n';
    return kConditionFailure;
  } catch (const NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kUsage;
}
