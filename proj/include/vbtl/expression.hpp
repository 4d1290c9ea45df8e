#pragma once

// Exponent mini-language for p(.), q(.) and s(.).
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := unary ('^' factor)?          '^' is right-associative
//   unary  := '-' unary | atom
//   atom   := number | x | y | pi | inf | ident '(' expr (',' expr)* ')' | '(' expr ')'
//
// Unary minus sits below '^', so "-2^2" is (-2)^2 = 4; write "-(2^2)" for -4.
// 'inf' may only pass through unchanged (e.g. max(2, inf) or a bare inf); an operation that
// manufactures an infinity or a NaN from finite operands is a domain error.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vbtl/csv_io.hpp"
#include "vbtl/error.hpp"
#include "vbtl/grid.hpp"

namespace vbtl {

class ExpressionError : public InvalidInput {
 public:
  ExpressionError(const std::string& msg, std::size_t offset)
      : InvalidInput(msg + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct ExprNode {
  enum class Kind { number, var_x, var_y, pi, inf, neg, add, sub, mul, div, pow, call };
  Kind kind = Kind::number;
  double value = 0.0;
  std::string name;
  std::vector<std::shared_ptr<const ExprNode>> args;
  std::size_t offset = 0;
};

namespace detail {

struct FunctionInfo {
  const char* name;
  std::size_t arity;
};

inline constexpr FunctionInfo kFunctions[] = {{"sin", 1}, {"cos", 1},  {"exp", 1}, {"log", 1},  {"abs", 1},
                                              {"sqrt", 1}, {"min", 2}, {"max", 2}, {"clamp", 3}};

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  std::shared_ptr<const ExprNode> parse() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) throw ExpressionError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return e;
  }

 private:
  using Ptr = std::shared_ptr<const ExprNode>;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      skip();
      throw ExpressionError(std::string("expected '") + c + "'", pos_);
    }
  }
  static Ptr binary(ExprNode::Kind k, Ptr a, Ptr b, std::size_t at) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->args = {std::move(a), std::move(b)};
    n->offset = at;
    return n;
  }

  Ptr expr() {
    Ptr lhs = term();
    for (;;) {
      skip();
      const std::size_t at = pos_;
      if (accept('+')) lhs = binary(ExprNode::Kind::add, lhs, term(), at);
      else if (accept('-')) lhs = binary(ExprNode::Kind::sub, lhs, term(), at);
      else return lhs;
    }
  }

  Ptr term() {
    Ptr lhs = factor();
    for (;;) {
      skip();
      const std::size_t at = pos_;
      if (accept('*')) lhs = binary(ExprNode::Kind::mul, lhs, factor(), at);
      else if (accept('/')) lhs = binary(ExprNode::Kind::div, lhs, factor(), at);
      else return lhs;
    }
  }

  Ptr factor() {
    Ptr base = unary();
    skip();
    const std::size_t at = pos_;
    if (accept('^')) return binary(ExprNode::Kind::pow, base, factor(), at);
    return base;
  }

  Ptr unary() {
    skip();
    const std::size_t at = pos_;
    if (accept('-')) {
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Kind::neg;
      n->args = {unary()};
      n->offset = at;
      return n;
    }
    return atom();
  }

  Ptr atom() {
    skip();
    const std::size_t at = pos_;
    if (pos_ >= s_.size()) throw ExpressionError("unexpected end of expression", pos_);
    auto n = std::make_shared<ExprNode>();
    n->offset = at;
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Ptr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t end = pos_;
      while (end < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.')) ++end;
      if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
        std::size_t e = end + 1;
        if (e < s_.size() && (s_[e] == '+' || s_[e] == '-')) ++e;
        if (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) {
          while (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) ++e;
          end = e;
        }
      }
      const auto v = parse_double(s_.substr(pos_, end - pos_));
      if (!v) throw ExpressionError("malformed number", pos_);
      n->value = *v;
      pos_ = end;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
      const std::string id(s_.substr(pos_, end - pos_));
      pos_ = end;
      if (id == "x") n->kind = ExprNode::Kind::var_x;
      else if (id == "y") n->kind = ExprNode::Kind::var_y;
      else if (id == "pi") n->kind = ExprNode::Kind::pi;
      else if (id == "inf") n->kind = ExprNode::Kind::inf;
      else return call(id, at);
      return n;
    }
    throw ExpressionError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  Ptr call(const std::string& id, std::size_t at) {
    const FunctionInfo* info = nullptr;
    for (const auto& f : kFunctions)
      if (id == f.name) info = &f;
    if (!info) throw ExpressionError("unknown identifier '" + id + "'", at);
    expect('(');
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::call;
    n->name = id;
    n->offset = at;
    n->args.push_back(expr());
    while (accept(',')) n->args.push_back(expr());
    expect(')');
    if (n->args.size() != info->arity)
      throw ExpressionError(id + " expects " + std::to_string(info->arity) + " argument(s), got " +
                                std::to_string(n->args.size()),
                            at);
    return n;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

// Evaluation failure; the caller attaches the grid location.
struct DomainError {
  std::string what;
  std::size_t offset;
};

inline double eval(const ExprNode& n, double x, double y) {
  using K = ExprNode::Kind;
  auto arg = [&](std::size_t i) { return eval(*n.args[i], x, y); };
  auto check = [&](double r, std::initializer_list<double> in, const char* op) {
    bool had_inf = false;
    for (double v : in) had_inf = had_inf || std::isinf(v);
    if (std::isnan(r) || (std::isinf(r) && !had_inf)) throw DomainError{std::string("domain error in ") + op, n.offset};
    return r;
  };
  switch (n.kind) {
    case K::number: return n.value;
    case K::var_x: return x;
    case K::var_y: return y;
    case K::pi: return std::numbers::pi;
    case K::inf: return std::numeric_limits<double>::infinity();
    case K::neg: return -arg(0);
    case K::add: { const double a = arg(0), b = arg(1); return check(a + b, {a, b}, "'+'"); }
    case K::sub: { const double a = arg(0), b = arg(1); return check(a - b, {a, b}, "'-'"); }
    case K::mul: { const double a = arg(0), b = arg(1); return check(a * b, {a, b}, "'*'"); }
    case K::div: {
      const double a = arg(0), b = arg(1);
      if (b == 0.0) throw DomainError{"division by zero", n.offset};
      return check(a / b, {a, b}, "'/'");
    }
    case K::pow: { const double a = arg(0), b = arg(1); return check(std::pow(a, b), {a, b}, "'^'"); }
    case K::call: break;
  }
  const std::string& f = n.name;
  const double a = arg(0);
  if (f == "sin") return check(std::sin(a), {a}, "sin");
  if (f == "cos") return check(std::cos(a), {a}, "cos");
  if (f == "exp") return check(std::exp(a), {a}, "exp");
  if (f == "abs") return std::abs(a);
  if (f == "log") {
    if (!(a > 0.0)) throw DomainError{"log of nonpositive value", n.offset};
    return check(std::log(a), {a}, "log");
  }
  if (f == "sqrt") {
    if (a < 0.0) throw DomainError{"sqrt of negative value", n.offset};
    return std::sqrt(a);
  }
  const double b = arg(1);
  if (f == "min") return std::min(a, b);
  if (f == "max") return std::max(a, b);
  const double c = arg(2);
  if (b > c) throw DomainError{"clamp with lower bound above upper bound", n.offset};
  return std::clamp(a, b, c);
}

inline void print(const ExprNode& n, std::string& out) {
  using K = ExprNode::Kind;
  auto bin = [&](const char* op) {
    out += '(';
    print(*n.args[0], out);
    out += op;
    print(*n.args[1], out);
    out += ')';
  };
  switch (n.kind) {
    case K::number: out += format_double(n.value); return;
    case K::var_x: out += 'x'; return;
    case K::var_y: out += 'y'; return;
    case K::pi: out += "pi"; return;
    case K::inf: out += "inf"; return;
    case K::neg: out += "(-"; print(*n.args[0], out); out += ')'; return;
    case K::add: bin(" + "); return;
    case K::sub: bin(" - "); return;
    case K::mul: bin(" * "); return;
    case K::div: bin(" / "); return;
    case K::pow: bin(" ^ "); return;
    case K::call:
      out += n.name;
      out += '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        print(*n.args[i], out);
      }
      out += ')';
      return;
  }
}

inline bool same_tree(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size()) return false;
  if (a.kind == ExprNode::Kind::number && !(a.value == b.value && std::signbit(a.value) == std::signbit(b.value)))
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_tree(*a.args[i], *b.args[i])) return false;
  return true;
}

}  // namespace detail

inline constexpr std::size_t kMaxExpressionBytes = 64 * 1024;

class ExponentExpression {
 public:
  ExponentExpression(std::string source, std::shared_ptr<const ExprNode> root)
      : source_(std::move(source)), root_(std::move(root)) {}

  const std::string& source() const { return source_; }
  const ExprNode& root() const { return *root_; }

  /// Point evaluation; throws ExpressionError naming the offending sub-expression.
  double evaluate(double x, double y = 0.0) const {
    try {
      return detail::eval(*root_, x, y);
    } catch (const detail::DomainError& e) {
      throw ExpressionError(e.what, e.offset);
    }
  }

  /// Canonical fully parenthesized form; parsing it reproduces the same tree.
  std::string to_string() const {
    std::string out;
    detail::print(*root_, out);
    return out;
  }

  bool structurally_equal(const ExponentExpression& o) const { return detail::same_tree(*root_, *o.root_); }

 private:
  std::string source_;
  std::shared_ptr<const ExprNode> root_;
};

inline ExponentExpression parse_expression(std::string_view text) {
  if (text.size() > kMaxExpressionBytes) throw ExpressionError("expression longer than 64 KiB", kMaxExpressionBytes);
  return {std::string(text), detail::Parser(text).parse()};
}

/// Pointwise evaluation at the grid coordinates.
inline RealField evaluate_on_grid(const ExponentExpression& e, const Grid& grid) {
  RealField out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Point x = grid.coordinate(i);
    try {
      out[i] = detail::eval(e.root(), x[0], x[1]);
    } catch (const detail::DomainError& err) {
      std::string where = "grid point " + std::to_string(i) + " (x=" + detail::format_double(x[0]);
      if (grid.dim() == 2) where += ", y=" + detail::format_double(x[1]);
      throw ExpressionError(err.what + " at " + where + ") in '" + e.source() + "'", err.offset);
    }
  }
  return out;
}

enum class ExponentRole { p, q, s };

/// Role checks: p > floor with optional inf; q likewise but inf only when allowed; s finite.
inline void validate_role(const RealField& v, ExponentRole role, double floor = 0.0, bool allow_infinity = true) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = v[i];
    const std::string at = " at grid point " + std::to_string(i);
    if (role == ExponentRole::s) {
      if (!std::isfinite(x)) throw InvalidInput("smoothness must be finite" + at);
      continue;
    }
    const char* name = role == ExponentRole::p ? "p" : "q";
    if (std::isinf(x) && x > 0) {
      if (!allow_infinity) throw InvalidInput(std::string(name) + " = inf is not allowed here" + at);
      continue;
    }
    if (!(x > floor)) throw InvalidInput(std::string(name) + " must exceed " + detail::format_double(floor) + at);
  }
}

}  // namespace vbtl
