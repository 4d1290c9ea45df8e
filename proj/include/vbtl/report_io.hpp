#pragma once

// JSON reports.
//
// Every report has the top-level fields {kind, config, ..., pass, meta}. `meta` holds the
// timestamp and run time and is the only part that changes between identical runs; compare
// reports with strip_meta. Undefined numbers (ratios of zero norms, skipped methods) are null.

#include <chrono>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vbtl/equivalence.hpp"
#include "vbtl/inequalities.hpp"

namespace vbtl {

using Json = nlohmann::ordered_json;

/// Result of a single norm evaluation on an input file.
struct NormReport {
  std::string input;
  std::string method;
  Flavor flavor = Flavor::besov;
  std::vector<std::pair<std::string, std::string>> parameters;
  double value = 0.0;
  std::optional<ConditionReport> conditions;
  bool pass = true;
  double runtime_seconds = 0.0;
};

namespace detail {

inline Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
inline Json number_or_null(const std::optional<double>& v) { return v ? number_or_null(*v) : Json(nullptr); }

inline double number_from(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}
inline std::optional<double> optional_from(const Json& j) {
  return j.is_null() ? std::nullopt : std::optional(j.get<double>());
}

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline Json meta(double runtime_seconds) {
  return Json{{"timestamp", utc_timestamp()}, {"runtime_seconds", runtime_seconds}};
}

inline Json entries_to_json(const std::vector<std::pair<std::string, std::string>>& e) {
  Json j = Json::object();
  for (const auto& [k, v] : e) j[k] = v;
  return j;
}

}  // namespace detail

inline Json to_json(const ConditionReport& r) {
  using detail::number_or_null;
  return Json{{"ok", r.ok},
              {"flavor", to_string(r.flavor)},
              {"sigma_p", number_or_null(r.sigma_p)},
              {"sigma_pq", number_or_null(r.sigma_pq)},
              {"threshold_lhs", number_or_null(r.threshold_lhs)},
              {"threshold_rhs", number_or_null(r.threshold_rhs)},
              {"smoothness_ok", r.smoothness_ok},
              {"order_bound", number_or_null(r.order_bound)},
              {"order_ok", r.order_ok},
              {"exponents_ok", r.exponents_ok},
              {"clog_s", number_or_null(r.clog_s)},
              {"clog_inv_q", number_or_null(r.clog_inv_q)},
              {"violated", r.violated}};
}

inline ConditionReport condition_report_from_json(const Json& j) {
  using detail::number_from;
  ConditionReport r;
  r.ok = j.at("ok").get<bool>();
  r.flavor = flavor_from_string(j.at("flavor").get<std::string>());
  r.sigma_p = number_from(j.at("sigma_p"));
  r.sigma_pq = number_from(j.at("sigma_pq"));
  r.threshold_lhs = number_from(j.at("threshold_lhs"));
  r.threshold_rhs = number_from(j.at("threshold_rhs"));
  r.smoothness_ok = j.at("smoothness_ok").get<bool>();
  r.order_bound = number_from(j.at("order_bound"));
  r.order_ok = j.at("order_ok").get<bool>();
  r.exponents_ok = j.at("exponents_ok").get<bool>();
  r.clog_s = number_from(j.at("clog_s"));
  r.clog_inv_q = number_from(j.at("clog_inv_q"));
  r.violated = j.at("violated").get<std::string>();
  return r;
}

inline Json to_json(const EquivalenceReport& r) {
  using detail::number_or_null;
  Json per_sample = Json::array();
  for (std::size_t i = 0; i < static_cast<std::size_t>(r.config.samples); ++i) {
    Json norms = Json::object(), ratios = Json::object();
    for (std::size_t m = 0; m < r.methods.size(); ++m) norms[r.methods[m]] = number_or_null(r.norms[m][i]);
    for (const auto& st : r.ratios) ratios[st.numerator + "/" + st.denominator] = number_or_null(st.per_sample[i]);
    per_sample.push_back(Json{{"index", i}, {"norms", norms}, {"ratios", ratios}});
  }
  Json ratios = Json::array();
  for (const auto& st : r.ratios)
    ratios.push_back(Json{{"pair", st.numerator + "/" + st.denominator},
                          {"numerator", st.numerator},
                          {"denominator", st.denominator},
                          {"min", number_or_null(st.min)},
                          {"max", number_or_null(st.max)},
                          {"geomean", number_or_null(st.geomean)},
                          {"spread", number_or_null(st.spread)}});
  return Json{{"kind", "equivalence"},
              {"config", detail::entries_to_json(config_entries(r.config))},
              {"methods", r.methods},
              {"per_sample", per_sample},
              {"ratios", ratios},
              {"constants",
               {{"J", r.J},
                {"k_lo", r.k_range.lo},
                {"k_hi", r.k_range.hi},
                {"peetre_a", r.peetre_a},
                {"kernel_R", r.kernel_R},
                {"tauber_epsilon", r.tauber_epsilon}}},
              {"conditions", to_json(r.conditions)},
              {"contractual", r.contractual},
              {"pass", r.pass ? Json(*r.pass) : Json(nullptr)},
              {"meta", detail::meta(r.runtime_seconds)}};
}

inline EquivalenceReport equivalence_report_from_json(const Json& j) {
  using detail::number_from;
  using detail::optional_from;
  if (j.at("kind") != "equivalence") throw InvalidInput("not an equivalence report");
  EquivalenceReport r;
  for (const auto& [k, v] : j.at("config").items()) set_config_value(r.config, k, v.get<std::string>());
  r.methods = j.at("methods").get<std::vector<std::string>>();
  const Json& ps = j.at("per_sample");
  r.norms.assign(r.methods.size(), std::vector<double>(ps.size()));
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t m = 0; m < r.methods.size(); ++m) r.norms[m][i] = number_from(ps[i].at("norms").at(r.methods[m]));
  for (const auto& s : j.at("ratios")) {
    RatioStats st;
    st.numerator = s.at("numerator").get<std::string>();
    st.denominator = s.at("denominator").get<std::string>();
    st.min = optional_from(s.at("min"));
    st.max = optional_from(s.at("max"));
    st.geomean = optional_from(s.at("geomean"));
    st.spread = optional_from(s.at("spread"));
    const std::string key = st.numerator + "/" + st.denominator;
    for (const auto& sample : ps) st.per_sample.push_back(optional_from(sample.at("ratios").at(key)));
    r.ratios.push_back(std::move(st));
  }
  const Json& c = j.at("constants");
  r.J = c.at("J").get<int>();
  r.k_range = {c.at("k_lo").get<int>(), c.at("k_hi").get<int>()};
  r.peetre_a = c.at("peetre_a").get<double>();
  r.kernel_R = c.at("kernel_R").get<int>();
  r.tauber_epsilon = c.at("tauber_epsilon").get<double>();
  r.conditions = condition_report_from_json(j.at("conditions"));
  r.contractual = j.at("contractual").get<bool>();
  if (!j.at("pass").is_null()) r.pass = j.at("pass").get<bool>();
  r.runtime_seconds = j.at("meta").at("runtime_seconds").get<double>();
  return r;
}

inline Json to_json(const InequalityReport& r) {
  using detail::number_or_null;
  return Json{{"suite", r.suite},
              {"variant", r.variant},
              {"seed", r.seed},
              {"trials", r.trials},
              {"violations", r.violations},
              {"bound", number_or_null(r.bound)},
              {"fitted_max", number_or_null(r.fitted_max)},
              {"fitted_min", number_or_null(r.fitted_min)},
              {"drift_band", r.drift_band},
              {"pass", r.pass}};
}

inline InequalityReport inequality_report_from_json(const Json& j) {
  InequalityReport r;
  r.suite = j.at("suite").get<std::string>();
  r.variant = j.at("variant").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.trials = j.at("trials").get<int>();
  r.violations = j.at("violations").get<int>();
  r.bound = detail::optional_from(j.at("bound"));
  r.fitted_max = detail::number_from(j.at("fitted_max"));
  r.fitted_min = detail::number_from(j.at("fitted_min"));
  r.drift_band = j.at("drift_band").get<double>();
  r.pass = j.at("pass").get<bool>();
  return r;
}

inline Json inequality_file_json(const std::string& suite, std::uint64_t seed, int trials,
                                 const std::vector<InequalityReport>& reports, double runtime_seconds) {
  Json list = Json::array();
  bool pass = true;
  for (const auto& r : reports) {
    list.push_back(to_json(r));
    pass = pass && r.pass;
  }
  return Json{{"kind", "inequalities"},
              {"config", {{"suite", suite}, {"seed", seed}, {"trials", trials}}},
              {"constants", list},
              {"pass", pass},
              {"meta", detail::meta(runtime_seconds)}};
}

inline Json to_json(const NormReport& r) {
  return Json{{"kind", "norm"},
              {"config", detail::entries_to_json(r.parameters)},
              {"input", r.input},
              {"method", r.method},
              {"flavor", to_string(r.flavor)},
              {"value", detail::number_or_null(r.value)},
              {"conditions", r.conditions ? to_json(*r.conditions) : Json(nullptr)},
              {"pass", r.pass},
              {"meta", detail::meta(r.runtime_seconds)}};
}

inline NormReport norm_report_from_json(const Json& j) {
  if (j.at("kind") != "norm") throw InvalidInput("not a norm report");
  NormReport r;
  for (const auto& [k, v] : j.at("config").items()) r.parameters.emplace_back(k, v.get<std::string>());
  r.input = j.at("input").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.flavor = flavor_from_string(j.at("flavor").get<std::string>());
  r.value = detail::number_from(j.at("value"));
  if (!j.at("conditions").is_null()) r.conditions = condition_report_from_json(j.at("conditions"));
  r.pass = j.at("pass").get<bool>();
  r.runtime_seconds = j.at("meta").at("runtime_seconds").get<double>();
  return r;
}

/// The report without its `meta` block, for comparisons between runs.
inline Json strip_meta(Json j) {
  j.erase("meta");
  return j;
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidConfig("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw InvalidConfig("failed writing '" + path + "'");
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed report '" + path + "': " + e.what());
  }
}

}  // namespace vbtl
