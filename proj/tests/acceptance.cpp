// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Run from the repository root (configs/ and tests/baselines/ are read relative to it).

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "support.hpp"
#include "vbtl/vbtl.hpp"

using namespace vbtl;
using namespace vbtl::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// 1. Sum of the filters is one on every covered grid frequency.
Outcome partition_of_unity() {
  double worst = 0.0;
  for (const Grid& g : {Grid(1, 512, kTwoPi), Grid(1, 1024, kTwoPi), Grid(2, 128, kTwoPi)}) {
    const int J = default_top_level(g);
    const auto bank = build_resolution_of_unity(g, J);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.frequency_norm(i) > std::ldexp(1.0, J)) continue;
      double sum = 0.0;
      for (const auto& f : bank.filters) sum += f[i];
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  }
  return {worst <= 1e-12, "max |sum phi_j - 1| = " + sci(worst) + " on 1D N=512, 1024 and 2D N=128"};
}

// 2. Luxemburg norm against the closed form, homogeneity and unit modular at the norm.
Outcome luxemburg() {
  const Grid g(1, 256, kTwoPi);
  double closed = 0.0, homog = 0.0, unit = 0.0;
  for (double p : {1.0, 2.0, 4.0}) {
    const auto pe = VariableExponent::constant(g, p);
    for (std::uint64_t t = 0; t < 50; ++t) {
      const auto f = random_trig(g, 2, t, 12);
      long double acc = 0.0L;
      for (const auto& v : f.values()) acc += std::pow(static_cast<long double>(std::abs(v)), p);
      const double exact = static_cast<double>(std::pow(acc * g.spacing(), 1.0L / p));
      const double n = luxemburg_norm(f, pe);
      closed = std::max(closed, rel_diff(n, exact));
      for (double c : {-3.7, 0.01}) homog = std::max(homog, rel_diff(luxemburg_norm(f.scaled(c), pe), std::abs(c) * n));
      unit = std::max(unit, std::abs(modular_lp(f.scaled(1.0 / n), pe) - 1.0));
    }
  }
  RealField pv(g.size());
  for (std::size_t i = 0; i < pv.size(); ++i) pv[i] = 1.5 + 0.5 * std::sin(g.coordinate(i)[0]);
  const VariableExponent pvar(g, pv);
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto f = random_trig(g, 3, t, 12);
    const double n = luxemburg_norm(f, pvar);
    unit = std::max(unit, std::abs(modular_lp(f.scaled(1.0 / n), pvar) - 1.0));
    homog = std::max(homog, rel_diff(luxemburg_norm(f.scaled(-3.7), pvar), 3.7 * n));
  }
  return {closed <= 1e-6 && homog <= 1e-10 && unit <= 1e-6,
          "closed form " + sci(closed) + ", homogeneity " + sci(homog) + ", modular at norm " + sci(unit) +
              " (p in {1,2,4} and 1.5+0.5sin, 50 inputs each)"};
}

// 3. Mixed norms against nested brute-force sums; both l_q(L_p) modular paths agree.
Outcome mixed_norms() {
  const Grid g(1, 64, kTwoPi);
  double lqlp = 0.0, lplq = 0.0, dual = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto rng = make_stream(31, t);
    std::uniform_real_distribution<double> u(0.6, 4.0);
    std::uniform_int_distribution<int> count(2, 6);
    const double p = u(rng), q = u(rng);
    const int K = count(rng);
    std::vector<SampledFunction> terms;
    for (int k = 0; k < K; ++k) terms.push_back(random_trig(g, 32 + t, static_cast<std::uint64_t>(k), 6));
    const FunctionSequence fs(terms);
    const auto pe = VariableExponent::constant(g, p), qe = VariableExponent::constant(g, q);

    long double outer = 0.0L;
    for (const auto& f : terms) {
      long double inner = 0.0L;
      for (const auto& v : f.values()) inner += std::pow(static_cast<long double>(std::abs(v)), p);
      outer += std::pow(inner * g.spacing(), static_cast<long double>(q / p));
    }
    lqlp = std::max(lqlp, rel_diff(norm_lqlp(fs, pe, qe), static_cast<double>(std::pow(outer, 1.0L / q))));

    long double total = 0.0L;
    for (std::size_t i = 0; i < g.size(); ++i) {
      long double pointwise = 0.0L;
      for (const auto& f : terms) pointwise += std::pow(static_cast<long double>(std::abs(f[i])), q);
      total += std::pow(pointwise, static_cast<long double>(p / q));
    }
    lplq = std::max(lplq, rel_diff(norm_lplq(fs, pe, qe),
                                   static_cast<double>(std::pow(total * g.spacing(), 1.0L / p))));

    RealField pv(g.size()), qv(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.coordinate(i)[0];
      pv[i] = p + 0.3 * std::sin(x);
      qv[i] = q + 0.3 * std::cos(x);
    }
    const VariableExponent pvar(g, pv), qvar(g, qv);
    dual = std::max(dual, rel_diff(modular_lqlp(fs, pvar, qvar, LqlpPath::general),
                                   modular_lqlp(fs, pvar, qvar, LqlpPath::fast)));
  }
  return {lqlp <= 1e-8 && lplq <= 1e-8 && dual <= 1e-8,
          "l_q(L_p) " + sci(lqlp) + ", L_p(l_q) " + sci(lplq) + ", dual-path modular " + sci(dual) +
              " over 100 sequences"};
}

// 4. Finite differences: constants, the multiplier identity and the inductive definition.
Outcome difference_algebra() {
  const Grid g(1, 256, kTwoPi);
  bool constants_zero = true;
  double multiplier = 0.0, inductive = 0.0;
  const auto c = SampledFunction::constant(g, 2.75);
  for (int M = 1; M <= 4; ++M)
    for (double h : {g.spacing(), 0.3, 1.234}) {
      for (const auto& v : finite_difference(c, Point{h, 0.0}, M).values()) constants_zero = constants_zero && v == 0.0;
      for (long w : {1L, 5L, 17L}) {
        const double om = g.angular(w);
        const auto e = SampledFunction::from(g, [&](const Point& x) { return std::exp(Complex(0.0, om * x[0])); });
        const auto d = finite_difference(e, Point{h, 0.0}, M);
        const Complex factor = std::pow(std::exp(Complex(0.0, om * h)) - 1.0, M);
        for (std::size_t i = 0; i < g.size(); ++i) multiplier = std::max(multiplier, std::abs(d[i] - factor * e[i]));
      }
      const auto f = random_trig(g, 41, static_cast<std::uint64_t>(M), 20);
      const auto a = finite_difference(f, Point{h, 0.0}, M), b = finite_difference_inductive(f, Point{h, 0.0}, M);
      inductive = std::max(inductive, max_abs_diff(a, b) / std::max(1.0, a.max_abs()));
    }
  return {constants_zero && multiplier <= 1e-10 && inductive <= 1e-10,
          std::string("constants ") + (constants_zero ? "exactly 0" : "NOT annihilated") + ", multiplier " +
              sci(multiplier) + ", inductive vs closed form " + sci(inductive) + " (M <= 4)"};
}

// 5. First-order ball means of a sawtooth equal t away from the jump.
Outcome sawtooth() {
  const Grid g(1, 1024, kTwoPi);
  RealField v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = g.coordinate(i)[0] - std::numbers::pi;
  const SampledFunction f(g, v);
  double worst = 0.0;
  for (int k = 1; k <= 4; ++k) {
    const double t = std::ldexp(1.0, -k);
    const RealField d = ball_means(f, t, 1);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.coordinate(i)[0];
      if (x < t + 0.1 || x > kTwoPi - t - 0.1) continue;
      worst = std::max(worst, std::abs(d[i] - t) / t);
    }
  }
  return {worst <= 0.02, "max |d_t - t| / t = " + sci(worst) + " for t = 2^-1..2^-4"};
}

// 6. Peetre maximal function: domination, antitonicity in a, translation equivariance.
Outcome peetre() {
  const Grid g(1, 128, kTwoPi);
  const auto bank = build_resolution_of_unity(g, default_top_level(g));
  int k_exact = 0;
  while (std::ldexp(g.spacing(), k_exact) < 1.0) ++k_exact;
  bool dominates = true, antitone = true, equivariant = true;
  std::size_t own_level_exceptions = 0, own_level_points = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = make_family_sample(FamilySpec{}, g, 61, s);
    const int j = static_cast<int>(s % static_cast<std::uint64_t>(bank.J + 1));
    const auto block = lp_blocks(f, bank)[static_cast<std::size_t>(j)];
    const auto out = peetre_maximal(block, j, 2.0);
    for (std::size_t i = 0; i < g.size(); ++i) dominates = dominates && out[i].real() >= std::abs(block[i]);
    const auto d = static_cast<std::ptrdiff_t>(7 + 3 * s);
    const auto shifted = peetre_maximal(SampledFunction(g, shift_by_cells(g, block.values(), d)), j, 2.0);
    const auto expect = shift_by_cells(g, out.values(), d);
    for (std::size_t i = 0; i < g.size(); ++i) equivariant = equivariant && shifted[i] == expect[i];
    // Antitone wherever every off-diagonal distance satisfies 2^k |x - y| >= 1.
    const auto lo = peetre_maximal(block, k_exact, 1.5), hi = peetre_maximal(block, k_exact, 3.0);
    for (std::size_t i = 0; i < g.size(); ++i) antitone = antitone && lo[i].real() >= hi[i].real();
    const auto own_hi = peetre_maximal(block, j, 3.0);
    for (std::size_t i = 0; i < g.size(); ++i, ++own_level_points)
      if (own_hi[i].real() > out[i].real()) ++own_level_exceptions;
  }
  return {dominates && antitone && equivariant,
          std::string("domination ") + (dominates ? "exact" : "FAILS") + ", antitone in a at k = " +
              std::to_string(k_exact) + " " + (antitone ? "exact" : "FAILS") + ", translation " +
              (equivariant ? "exact" : "FAILS") + " on 20 blocks; at the blocks' own levels (2^k h < 1) " +
              std::to_string(own_level_exceptions) + "/" + std::to_string(own_level_points) +
              " points increase from a = 2 to a = 3"};
}

// 7. Local-means kernels with R = 3: vanishing moments, exact compact support, Tauberian radius.
Outcome kernels() {
  double moment = 0.0, eps = kInfinity;
  bool support = true;
  for (const Grid& g : {Grid(1, 512, kTwoPi), Grid(2, 128, kTwoPi)}) {
    const KernelSet ks = build_local_means_kernels(g, 3);
    double l1 = 0.0;
    for (const auto& v : ks.k.values()) l1 += std::abs(v);
    l1 *= g.cell_volume();
    for (int b0 = 0; b0 < 3; ++b0)
      for (int b1 = 0; b0 + b1 < 3; ++b1) {
        if (g.dim() == 1 && b1 > 0) continue;
        moment = std::max(moment, std::abs(kernel_moment(ks.k, {b0, b1})) / l1);
      }
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.displacement_length(i) >= ks.support_radius) support = support && ks.k[i] == 0.0 && ks.k0[i] == 0.0;
    eps = std::min(eps, ks.tauber_epsilon);
  }
  return {moment <= 1e-10 && support && eps > 0.0,
          "max |moment| / ||k||_1 = " + sci(moment) + " for |beta| < 3, support " + (support ? "exact" : "LEAKS") +
              ", Tauberian epsilon = " + sci(eps) + " (1D N=512, 2D N=128)"};
}

// 8. Inequality suites at 1000 trials for two seeds.
Outcome inequalities() {
  const auto a = run_inequality_suite("all", 1, 1000);
  const auto b = run_inequality_suite("all", 2, 1000);
  bool ok = a.size() == b.size();
  int violations = 0;
  std::string failed;
  double worst_drift = 0.0;
  for (std::size_t i = 0; ok && i < a.size(); ++i) {
    violations += a[i].violations + b[i].violations;
    const bool stable = seed_stable(a[i], b[i]);
    if (a[i].drift_band > 0.0) worst_drift = std::max(worst_drift, seed_drift(a[i], b[i]) / a[i].drift_band);
    if (!a[i].pass || !b[i].pass || !stable) {
      ok = false;
      failed += " " + a[i].suite + "/" + a[i].variant;
    }
  }
  return {ok && violations == 0,
          std::to_string(a.size()) + " reports per seed, " + std::to_string(violations) +
              " violations, worst drift / band = " + sci(worst_drift) + (failed.empty() ? "" : ", failing:" + failed)};
}

// 9. Equivalence stability on the three shipped configurations, against committed baselines.
Outcome equivalence() {
  bool ok = true;
  std::ostringstream msg;
  const std::vector<std::pair<std::string, std::string>> runs{
      {"a", "configs/equivalence_default.cfg"},
      {"b", "configs/equivalence_variable.cfg"},
      {"c", "configs/equivalence_2microlocal.cfg"}};
  for (const auto& [tag, path] : runs) {
    const auto rep = run_equivalence_experiment(read_experiment_config(path));
    const auto base = equivalence_report_from_json(read_json_file("tests/baselines/equivalence_" + tag + ".json"));
    double spread = 0.0, off = 1.0;
    for (std::size_t r = 0; r < rep.ratios.size(); ++r) {
      const auto& now = rep.ratios[r];
      const auto& then = base.ratios.at(r);
      if (!now.spread || !then.geomean) {
        ok = false;
        continue;
      }
      spread = std::max(spread, *now.spread);
      for (auto [x, y] : {std::pair{*now.min, *then.min}, {*now.max, *then.max}, {*now.geomean, *then.geomean}})
        off = std::max(off, std::max(x / y, y / x));
    }
    ok = ok && rep.pass.value_or(false) && spread <= 10.0 && off <= 2.0;
    msg << "(" << tag << ") max spread " << sci(spread) << ", baseline factor " << sci(off) << "; ";
  }
  std::string s = msg.str();
  s.resize(s.size() - 2);
  return {ok, s};
}

// 10. Condition reductions for constant exponents, compared exactly.
Outcome condition_gate() {
  bool ok = true;
  for (const Grid& g : {Grid(1, 64, kTwoPi), Grid(2, 32, kTwoPi)}) {
    for (auto [p, q] : {std::pair{1.0, 1.0}, {2.0, 2.0}, {1.0, 3.0}, {4.0, 1.5}})
      for (Flavor fl : {Flavor::besov, Flavor::tl})
        for (double s : {-0.5, 0.0, 1e-3, 0.7, 1.5}) {
          const auto r = check_conditions(SmoothnessFunction(g, RealField(g.size(), s)), VariableExponent::constant(g, p),
                                          VariableExponent::constant(g, q), 2, fl);
          ok = ok && r.threshold_rhs == 0.0 && r.threshold_lhs == s && r.ok == (s > 0.0);
        }
    for (Flavor fl : {Flavor::besov, Flavor::tl}) {
      const auto half = VariableExponent::constant(g, 0.5);
      const double n = g.dim();
      const auto at = check_conditions(SmoothnessFunction(g, RealField(g.size(), n)), half, half, 3, fl);
      const auto above = check_conditions(SmoothnessFunction(g, RealField(g.size(), n + 0.25)), half, half, 3, fl);
      ok = ok && at.threshold_rhs == n && !at.smoothness_ok && above.ok;
    }
  }
  return {ok, "p, q >= 1 gives s- > 0 exactly; p = q = 1/2 gives threshold n (n = 1, 2), zero tolerance"};
}

// 11. Difference norms are insensitive to doubling the k range and the t-ladder density.
Outcome truncation() {
  struct Case {
    std::string label;
    std::string path;
    std::optional<int> M;
    bool asserted;
  };
  const std::vector<Case> cases{{"(a) M=2", "configs/equivalence_default.cfg", std::nullopt, true},
                                {"(b) M=3", "configs/equivalence_variable.cfg", 3, true},
                                {"(b) M=2", "configs/equivalence_variable.cfg", std::nullopt, false}};
  bool ok = true;
  std::ostringstream msg;
  for (const auto& c : cases) {
    ExperimentConfig cfg = read_experiment_config(c.path);
    if (c.M) cfg.M = *c.M;
    const ResolvedSpace sp = resolve_space(cfg);
    const int J = sp.J;
    double k_change = 0.0, ladder_change = 0.0, lo = kInfinity, hi = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
      const auto f = make_family_sample(cfg.family, sp.grid, cfg.seed, static_cast<std::uint64_t>(i));
      for (Flavor fl : {Flavor::besov, Flavor::tl}) {
        const double base = norm_differences(f, *sp.s, sp.p, sp.q, cfg.M, {-J, J}, fl);
        const double wide = norm_differences(f, *sp.s, sp.p, sp.q, cfg.M, {-2 * J, 2 * J}, fl);
        k_change = std::max(k_change, rel_diff(base, wide));
      }
      const double coarse = tl_norm_differences_continuous(f, *sp.s, sp.p, sp.q, cfg.M, geometric_ladder(J, 2));
      const double fine = tl_norm_differences_continuous(f, *sp.s, sp.p, sp.q, cfg.M, geometric_ladder(J, 4));
      ladder_change = std::max(ladder_change, rel_diff(coarse, fine));
      const double r = coarse / norm_differences(f, *sp.s, sp.p, sp.q, cfg.M, {-J, J}, Flavor::tl);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (c.asserted) ok = ok && k_change < 0.02 && ladder_change < 0.02;
    msg << c.label << (c.asserted ? "" : " [diagnostic]") << " k range " << sci(k_change) << ", ladder "
        << sci(ladder_change) << ", continuous/dyadic in [" << sci(lo) << ", " << sci(hi) << "]; ";
  }
  std::string s = msg.str();
  s.resize(s.size() - 2);
  return {ok, s};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"partition of unity", partition_of_unity},
      {"Luxemburg norm", luxemburg},
      {"mixed-norm oracle", mixed_norms},
      {"difference algebra", difference_algebra},
      {"sawtooth ball means", sawtooth},
      {"Peetre maximal function", peetre},
      {"local-means kernels", kernels},
      {"inequality suites", inequalities},
      {"equivalence stability", equivalence},
      {"condition gate", condition_gate},
      {"truncation robustness", truncation},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << i + 1 << " " << criteria[i].first << ": " << o.detail << " ("
              << sci(secs) << " s)" << std::endl;
  }
  std::cout << criteria.size() - failures << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
