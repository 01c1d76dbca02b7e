#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nsproj/rational.hpp"

namespace nsproj::dsl {

struct Span {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Expr {
  enum class Kind { number, eps, imag, ident, call, list, neg, binary };

  Kind kind = Kind::number;
  Rational value;    // number
  std::string text;  // number: literal as written
  std::string name;  // ident / call name; binary operator
  std::vector<Expr> args;
  Span span;

  static Expr number(Rational v, std::string text, Span s = {}) {
    Expr e{Kind::number, std::move(v), std::move(text), {}, {}, s};
    return e;
  }
  static Expr leaf(Kind k, std::string name = {}, Span s = {}) { return {k, 0, {}, std::move(name), {}, s}; }
  static Expr node(Kind k, std::string name, std::vector<Expr> args, Span s = {}) {
    return {k, 0, {}, std::move(name), std::move(args), s};
  }

  // Spans and literal spelling are not part of the structure.
  friend bool operator==(const Expr& a, const Expr& b) {
    return a.kind == b.kind && a.value == b.value && a.name == b.name && a.args == b.args;
  }
};

struct Stmt {
  enum class Kind { let, point, line, matrix, conic, assertion, print, call };

  Kind kind = Kind::print;
  std::string name;      // bound identifier, if any
  bool negated = false;  // `assert not ...`
  Expr expr;
  Span span;

  friend bool operator==(const Stmt& a, const Stmt& b) {
    return a.kind == b.kind && a.name == b.name && a.negated == b.negated && a.expr == b.expr;
  }
};

struct Program {
  std::vector<Stmt> statements;
  friend bool operator==(const Program&, const Program&) = default;
};

inline const char* keyword(Stmt::Kind k) {
  switch (k) {
    case Stmt::Kind::let: return "let";
    case Stmt::Kind::point: return "point";
    case Stmt::Kind::line: return "line";
    case Stmt::Kind::matrix: return "matrix";
    case Stmt::Kind::conic: return "conic";
    case Stmt::Kind::assertion: return "assert";
    case Stmt::Kind::print: return "print";
    case Stmt::Kind::call: return "call";
  }
  return "?";
}

namespace detail {

inline int precedence(const Expr& e) {
  if (e.kind == Expr::Kind::neg) return 3;
  if (e.kind != Expr::Kind::binary) return 5;
  if (e.name == "^") return 4;
  if (e.name == "*" || e.name == "/") return 2;
  return 1;
}

}  // namespace detail

/// Source text for an expression, parenthesized only where the grammar
/// needs it.
inline std::string to_source(const Expr& e) {
  auto wrap = [](const Expr& sub, bool parens) { return parens ? "(" + to_source(sub) + ")" : to_source(sub); };
  auto joined = [](const std::vector<Expr>& xs) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? ", " : "") + to_source(xs[k]);
    return out;
  };
  switch (e.kind) {
    case Expr::Kind::number: return e.text.empty() ? to_string(e.value) : e.text;
    case Expr::Kind::eps: return "eps";
    case Expr::Kind::imag: return "i";
    case Expr::Kind::ident: return e.name;
    case Expr::Kind::call: return e.name + "(" + joined(e.args) + ")";
    case Expr::Kind::list: return "[" + joined(e.args) + "]";
    case Expr::Kind::neg: return "-" + wrap(e.args[0], detail::precedence(e.args[0]) < 3);
    case Expr::Kind::binary: {
      const Expr& l = e.args[0];
      const Expr& r = e.args[1];
      if (e.name == "^")
        return wrap(l, detail::precedence(l) <= 4) + "^" + wrap(r, detail::precedence(r) < 3);
      int p = detail::precedence(e);
      return wrap(l, detail::precedence(l) < p) + " " + e.name + " " + wrap(r, detail::precedence(r) <= p);
    }
  }
  return {};
}

inline std::string to_source(const Stmt& s) {
  switch (s.kind) {
    case Stmt::Kind::let:
    case Stmt::Kind::point:
    case Stmt::Kind::line:
    case Stmt::Kind::matrix:
    case Stmt::Kind::conic: return std::string(keyword(s.kind)) + " " + s.name + " = " + to_source(s.expr) + ";";
    case Stmt::Kind::assertion: return std::string("assert ") + (s.negated ? "not " : "") + to_source(s.expr) + ";";
    case Stmt::Kind::print: return "print " + to_source(s.expr) + ";";
    case Stmt::Kind::call: return to_source(s.expr) + ";";
  }
  return {};
}

inline std::string to_source(const Program& p) {
  std::string out;
  for (const auto& s : p.statements) out += to_source(s) + "\n";
  return out;
}

}  // namespace nsproj::dsl
