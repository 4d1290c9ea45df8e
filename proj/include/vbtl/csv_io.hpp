#pragma once

// Plain-text sample files.
//
//   # dim=<d> n=<N> period=<L>      optional for 1D (then n = line count, period = 2*pi)
//   re            or   re,im          one value per line, row-major for 2D
//
// Values are written in shortest round-trip form, so reading back reproduces every bit.

#include <charconv>
#include <fstream>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include "vbtl/grid.hpp"

namespace vbtl {

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::optional<double> parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace detail

inline void write_samples(std::ostream& out, const SampledFunction& f) {
  const Grid& g = f.grid();
  out << "# dim=" << g.dim() << " n=" << g.n() << " period=" << detail::format_double(g.period()) << '\n';
  for (const auto& v : f.values()) {
    out << detail::format_double(v.real());
    if (v.imag() != 0.0 || std::signbit(v.imag())) out << ',' << detail::format_double(v.imag());
    out << '\n';
  }
}

inline SampledFunction read_samples(std::istream& in) {
  int dim = 1;
  std::optional<std::size_t> n;
  double period = 2.0 * std::numbers::pi;
  ComplexField values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.front() == '#') {
      std::istringstream hs(line.substr(1));
      std::string tok;
      while (hs >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const auto val = detail::parse_double(std::string_view(tok).substr(eq + 1));
        if (!val) throw InvalidInput("line " + std::to_string(lineno) + ": bad header value for '" + key + "'");
        if (key == "dim") dim = static_cast<int>(*val);
        else if (key == "n") n = static_cast<std::size_t>(*val);
        else if (key == "period") period = *val;
      }
      continue;
    }
    const auto comma = line.find(',');
    const auto re = detail::parse_double(std::string_view(line).substr(0, comma));
    std::optional<double> im = 0.0;
    if (comma != std::string::npos) im = detail::parse_double(std::string_view(line).substr(comma + 1));
    if (!re || !im) throw InvalidInput("line " + std::to_string(lineno) + ": expected 're' or 're,im'");
    values.emplace_back(*re, *im);
  }
  const std::size_t per_axis = n.value_or(values.size());
  Grid grid(dim, per_axis, period);
  if (values.size() != grid.size())
    throw InvalidInput("expected " + std::to_string(grid.size()) + " samples, found " +
                       std::to_string(values.size()));
  return {grid, std::move(values)};
}

inline void write_samples_file(const std::string& path, const SampledFunction& f) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open '" + path + "' for writing");
  write_samples(out, f);
}

inline SampledFunction read_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return read_samples(in);
}

}  // namespace vbtl
