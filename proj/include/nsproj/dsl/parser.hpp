#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nsproj/dsl/ast.hpp"
#include "nsproj/errors.hpp"

namespace nsproj::dsl {

struct ParseOptions {
  bool allow_decimal = false;
};

/// Accepted argument counts of a builtin.
struct Signature {
  std::size_t min_args;
  std::size_t max_args;
  bool predicate = false;
};

inline const std::map<std::string, Signature, std::less<>>& builtins() {
  static const std::map<std::string, Signature, std::less<>> table{
      {"root", {2, 2}},
      {"shadow", {1, 1}},
      {"classify", {1, 1}},
      {"conj", {1, 1}},
      {"abs", {1, 1}},
      {"limit", {3, 3}},
      {"join", {2, 2}},
      {"meet", {2, 2}},
      {"cross", {2, 2}},
      {"normalize", {1, 1}},
      {"sp", {2, 2}},
      {"det", {1, 3}},
      {"ndet", {3, 3}},
      {"shadow_cross", {2, 2}},
      {"apply", {2, 2}},
      {"apply_line", {2, 2}},
      {"adjugate", {1, 1}},
      {"inverse", {1, 1}},
      {"through", {5, 5}},
      {"I", {0, 0}},
      {"J", {0, 0}},
      {"cross_ratio", {4, 4}},
      {"cr_shadow", {4, 4}},
      {"almost_incident", {2, 2, true}},
      {"almost_parallel", {2, 2, true}},
      {"almost_collinear", {3, 3, true}},
      {"almost_equivalent", {2, 2, true}},
      {"almost_far", {1, 1, true}},
      {"almost_cocircular", {4, 4, true}},
      {"almost_singular", {1, 1, true}},
      {"non_singular", {1, 1, true}},
      {"almost_affine", {1, 1, true}},
      {"conic_contains", {2, 2, true}},
      {"in_eps_kernel", {2, 2, true}},
  };
  return table;
}

namespace detail {

struct Token {
  enum class Kind { ident, number, punct, end };
  Kind kind = Kind::end;
  std::string text;
  Span span;
};

inline std::string describe(const Token& t) {
  return t.kind == Token::Kind::end ? std::string("end of input") : "'" + t.text + "'";
}

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t pos = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  };
  while (pos < src.size()) {
    char ch = src[pos];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (ch == '#' || src.substr(pos, 2) == "//") {
      while (pos < src.size() && src[pos] != '\n') advance(1);
      continue;
    }
    Span here{line, col};
    std::size_t start = pos;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) advance(1);
      out.push_back({Token::Kind::ident, std::string(src.substr(start, pos - start)), here});
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) advance(1);
      if (pos + 1 < src.size() && src[pos] == '.' && std::isdigit(static_cast<unsigned char>(src[pos + 1]))) {
        advance(1);
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) advance(1);
      }
      out.push_back({Token::Kind::number, std::string(src.substr(start, pos - start)), here});
    } else if (std::string_view("()[],;=+-*/^").find(ch) != std::string_view::npos) {
      advance(1);
      out.push_back({Token::Kind::punct, std::string(1, ch), here});
    } else {
      throw Error(ErrorKind::SyntaxError, std::to_string(line) + ":" + std::to_string(col) +
                                              ": unexpected character '" + std::string(1, ch) + "'");
    }
  }
  out.push_back({Token::Kind::end, {}, {line, col}});
  return out;
}

inline bool is_reserved(std::string_view word) {
  static const std::set<std::string, std::less<>> words{"let",    "point", "line", "matrix", "conic", "assert",
                                                        "print", "not",   "eps",  "i"};
  return words.count(word) > 0;
}

class Parser {
 public:
  Parser(std::string_view src, ParseOptions opts) : tokens_(tokenize(src)), opts_(opts) {}

  Program program() {
    Program p;
    while (peek().kind != Token::Kind::end) p.statements.push_back(statement());
    return p;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  bool at(std::string_view text) const {
    const Token& t = peek();
    return (t.kind == Token::Kind::punct || t.kind == Token::Kind::ident) && t.text == text;
  }

  [[noreturn]] void fail(std::set<std::string> expected) const {
    const Token& t = peek();
    std::string list;
    for (const auto& e : expected) list += (list.empty() ? "" : ", ") + e;
    throw Error(ErrorKind::SyntaxError, std::to_string(t.span.line) + ":" + std::to_string(t.span.column) +
                                            ": expected one of {" + list + "}, found " + describe(t));
  }
  [[noreturn]] void fail_at(Span s, ErrorKind kind, const std::string& msg) const {
    throw Error(kind, std::to_string(s.line) + ":" + std::to_string(s.column) + ": " + msg);
  }

  Token expect(std::string_view text) {
    if (!at(text)) fail({"'" + std::string(text) + "'"});
    return take();
  }

  std::string identifier() {
    const Token& t = peek();
    if (t.kind != Token::Kind::ident || is_reserved(t.text)) fail({"identifier"});
    return take().text;
  }

  Stmt statement() {
    Stmt s;
    s.span = peek().span;
    static const std::map<std::string, Stmt::Kind, std::less<>> binders{{"let", Stmt::Kind::let},
                                                                         {"point", Stmt::Kind::point},
                                                                         {"line", Stmt::Kind::line},
                                                                         {"matrix", Stmt::Kind::matrix},
                                                                         {"conic", Stmt::Kind::conic}};
    if (peek().kind == Token::Kind::ident) {
      if (auto it = binders.find(peek().text); it != binders.end()) {
        take();
        s.kind = it->second;
        Span name_span = peek().span;
        s.name = identifier();
        if (bound_.count(s.name)) fail_at(name_span, ErrorKind::Redefinition, "'" + s.name + "' is already bound");
        expect("=");
        s.expr = expression();
        check_binding_shape(s);
        expect(";");
        bound_.insert(s.name);
        return s;
      }
      if (at("assert")) {
        take();
        s.kind = Stmt::Kind::assertion;
        if (at("not")) {
          take();
          s.negated = true;
        }
        if (peek().kind != Token::Kind::ident || !is_predicate(peek().text)) fail({"predicate"});
        s.expr = expression();
        if (s.expr.kind != Expr::Kind::call) fail_at(s.span, ErrorKind::SyntaxError, "assert needs a single predicate call");
        expect(";");
        return s;
      }
      if (at("print")) {
        take();
        s.kind = Stmt::Kind::print;
        s.expr = expression();
        expect(";");
        return s;
      }
      if (builtins().count(peek().text) && tokens_[pos_ + 1].text == "(") {
        s.kind = Stmt::Kind::call;
        s.expr = expression();
        if (s.expr.kind != Expr::Kind::call) fail({"';'"});
        expect(";");
        return s;
      }
    }
    fail({"'assert'", "'conic'", "'let'", "'line'", "'matrix'", "'point'", "'print'", "function call"});
  }

  static bool is_predicate(std::string_view name) {
    auto it = builtins().find(name);
    return it != builtins().end() && it->second.predicate;
  }

  void check_binding_shape(const Stmt& s) const {
    const Expr& e = s.expr;
    if (e.kind != Expr::Kind::list) return;
    if (s.kind == Stmt::Kind::point || s.kind == Stmt::Kind::line) {
      if (e.args.size() != 3)
        fail_at(e.span, ErrorKind::SyntaxError,
                std::string(keyword(s.kind)) + " needs 3 coordinates, got " + std::to_string(e.args.size()));
    } else if (s.kind == Stmt::Kind::matrix || s.kind == Stmt::Kind::conic) {
      bool ok = e.args.size() == 3;
      for (const auto& row : e.args) ok = ok && row.kind == Expr::Kind::list && row.args.size() == 3;
      if (!ok) fail_at(e.span, ErrorKind::SyntaxError, std::string(keyword(s.kind)) + " needs a 3x3 list of rows");
    }
  }

  // expr := term (('+' | '-') term)*
  Expr expression() {
    Expr lhs = term();
    while (at("+") || at("-")) {
      Token op = take();
      lhs = Expr::node(Expr::Kind::binary, op.text, {std::move(lhs), term()}, op.span);
    }
    return lhs;
  }

  // term := unary (('*' | '/') unary)*
  Expr term() {
    Expr lhs = unary();
    while (at("*") || at("/")) {
      Token op = take();
      lhs = Expr::node(Expr::Kind::binary, op.text, {std::move(lhs), unary()}, op.span);
    }
    return lhs;
  }

  // unary := '-' unary | power
  Expr unary() {
    if (at("-")) {
      Token op = take();
      return Expr::node(Expr::Kind::neg, "-", {unary()}, op.span);
    }
    return power();
  }

  // power := primary ('^' unary)?
  Expr power() {
    Expr base = primary();
    if (at("^")) {
      Token op = take();
      return Expr::node(Expr::Kind::binary, "^", {std::move(base), unary()}, op.span);
    }
    return base;
  }

  Expr primary() {
    const Token t = peek();
    if (t.kind == Token::Kind::number) {
      take();
      return Expr::number(literal(t), t.text, t.span);
    }
    if (at("(")) {
      take();
      Expr e = expression();
      expect(")");
      return e;
    }
    if (at("[")) {
      take();
      std::vector<Expr> items;
      if (!at("]")) {
        items.push_back(expression());
        while (at(",")) {
          take();
          items.push_back(expression());
        }
      }
      expect("]");
      return Expr::node(Expr::Kind::list, {}, std::move(items), t.span);
    }
    if (t.kind == Token::Kind::ident) {
      if (is_reserved(t.text) && t.text != "eps" && t.text != "i") fail({"expression"});
      take();
      if (t.text == "eps") return Expr::leaf(Expr::Kind::eps, {}, t.span);
      if (t.text == "i") return Expr::leaf(Expr::Kind::imag, {}, t.span);
      if (at("(")) return call(t);
      if (!bound_.count(t.text) && std::find(locals_.begin(), locals_.end(), t.text) == locals_.end())
        fail_at(t.span, ErrorKind::UnknownIdentifier, "'" + t.text + "' is not bound");
      return Expr::leaf(Expr::Kind::ident, t.text, t.span);
    }
    fail({"'('", "'['", "identifier", "number"});
  }

  Expr call(const Token& name) {
    auto sig = builtins().find(name.text);
    if (sig == builtins().end()) fail_at(name.span, ErrorKind::UnknownIdentifier, "unknown function '" + name.text + "'");
    expect("(");
    std::vector<Expr> args;
    if (name.text == "limit") {
      // limit(x, c, f): x is bound inside f only.
      Token var = peek();
      std::string x = identifier();
      if (bound_.count(x)) fail_at(var.span, ErrorKind::Redefinition, "'" + x + "' is already bound");
      args.push_back(Expr::leaf(Expr::Kind::ident, x, var.span));
      expect(",");
      args.push_back(expression());
      expect(",");
      locals_.push_back(x);
      args.push_back(expression());
      locals_.pop_back();
    } else if (!at(")")) {
      args.push_back(expression());
      while (at(",")) {
        take();
        args.push_back(expression());
      }
    }
    expect(")");
    if (args.size() < sig->second.min_args || args.size() > sig->second.max_args) {
      std::string want = std::to_string(sig->second.min_args);
      if (sig->second.max_args != sig->second.min_args) want += " to " + std::to_string(sig->second.max_args);
      fail_at(name.span, ErrorKind::SyntaxError,
              name.text + " takes " + want + " argument(s), got " + std::to_string(args.size()));
    }
    return Expr::node(Expr::Kind::call, name.text, std::move(args), name.span);
  }

  Rational literal(const Token& t) const {
    auto dot = t.text.find('.');
    if (dot == std::string::npos) return parse_rational(t.text);
    if (!opts_.allow_decimal)
      fail_at(t.span, ErrorKind::SyntaxError, "decimal literal '" + t.text + "' needs --allow-decimal");
    std::string digits = t.text.substr(0, dot) + t.text.substr(dot + 1);
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(t.text.size() - dot - 1));
    return Rational(decimal_integer(digits), scale);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  ParseOptions opts_;
  std::set<std::string, std::less<>> bound_;
  std::vector<std::string> locals_;
};

}  // namespace detail

/// Parses a construction script. Throws SyntaxError, UnknownIdentifier or
/// Redefinition with a `line:column` prefix.
inline Program parse(std::string_view source, ParseOptions opts = {}) {
  return detail::Parser(source, opts).program();
}

}  // namespace nsproj::dsl
