#include <gtest/gtest.h>

#include <json.hpp>

#include "nsproj/dsl.hpp"
#include "support/generators.hpp"

using namespace nsproj;
using namespace nsproj::dsl;

namespace {

const char* kFarPoint =
    "let H = 1/eps;\n"
    "point P = [2*H, 3*H, 1];\n"
    "assert almost_incident(P, [0,0,1]);\n";

const char* kFalsePositive =
    "point X = [1, 0, 1];\n"
    "point Y = [eps, 0, 1];\n"
    "point Z = [0, eps, 1];\n"
    "assert almost_collinear(X, Y, Z);\n";

template <class F>
Error error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected an nsproj::Error";
  return Error(ErrorKind::TypeError, "none");
}

Report run(std::string_view src, FieldConfig cfg = {}) { return evaluate(parse(src), cfg); }

}  // namespace

TEST(Parse, FarPointScript) {
  Program p = parse(kFarPoint);
  ASSERT_EQ(p.statements.size(), 3u);
  EXPECT_EQ(p.statements[0].kind, Stmt::Kind::let);
  EXPECT_EQ(p.statements[1].kind, Stmt::Kind::point);
  EXPECT_EQ(p.statements[2].kind, Stmt::Kind::assertion);
  EXPECT_EQ(p.statements[2].span.line, 3u);
  EXPECT_EQ(to_source(p.statements[1]), "point P = [2 * H, 3 * H, 1];");
}

TEST(Parse, EmptySource) {
  EXPECT_TRUE(parse("").statements.empty());
  EXPECT_TRUE(parse("  # only a comment\n// and another\n").statements.empty());
}

TEST(Parse, ArityOfPointLiteral) {
  Error e = error_of([] { parse("point P = [1,2];"); });
  EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
  EXPECT_NE(std::string(e.what()).find("1:11"), std::string::npos) << e.what();
  EXPECT_EQ(error_of([] { parse("matrix M = [[1,0,0],[0,1,0]];"); }).kind(), ErrorKind::SyntaxError);
  EXPECT_EQ(error_of([] { parse("print root(2);"); }).kind(), ErrorKind::SyntaxError);
}

TEST(Parse, ErrorsCarryPositionAndSortedExpectations) {
  Error e = error_of([] { parse("let H = 1;\nlet = 3;"); });
  EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
  EXPECT_STREQ(e.what(), "SyntaxError: 2:5: expected one of {identifier}, found '='");
  Error start = error_of([] { parse("H;"); });
  EXPECT_STREQ(start.what(),
               "SyntaxError: 1:1: expected one of {'assert', 'conic', 'let', 'line', 'matrix', 'point', 'print', "
               "function call}, found 'H'");
  Error tail = error_of([] { parse("let a = (1 + 2;"); });
  EXPECT_STREQ(tail.what(), "SyntaxError: 1:15: expected one of {')'}, found ';'");
  EXPECT_EQ(error_of([] { parse("let a = 1 $ 2;"); }).kind(), ErrorKind::SyntaxError);
  EXPECT_EQ(error_of([] { parse("assert shadow(1);"); }).kind(), ErrorKind::SyntaxError);
}

TEST(Parse, NameResolution) {
  EXPECT_EQ(error_of([] { parse("print Q;"); }).kind(), ErrorKind::UnknownIdentifier);
  EXPECT_EQ(error_of([] { parse("let a = frob(1);"); }).kind(), ErrorKind::UnknownIdentifier);
  EXPECT_EQ(error_of([] { parse("let a = 1; point a = [1,0,0];"); }).kind(), ErrorKind::Redefinition);
  EXPECT_EQ(error_of([] { parse("let eps = 1;"); }).kind(), ErrorKind::SyntaxError);
  // The variable of limit() is local to its body.
  EXPECT_NO_THROW(parse("print limit(x, 1, x^2);"));
  EXPECT_EQ(error_of([] { parse("print limit(x, 1, x); print x;"); }).kind(), ErrorKind::UnknownIdentifier);
  EXPECT_EQ(error_of([] { parse("print limit(x, x, 1);"); }).kind(), ErrorKind::UnknownIdentifier);
}

TEST(Parse, DecimalsNeedOptIn) {
  EXPECT_EQ(error_of([] { parse("let a = 0.25;"); }).kind(), ErrorKind::SyntaxError);
  Program p = parse("let a = 0.25;", {.allow_decimal = true});
  EXPECT_EQ(p.statements[0].expr.value, Rational(1, 4));
  Report r = evaluate(p);
  EXPECT_EQ(std::get<HyperNumber>(*r.statements[0].value), HyperNumber(Rational(1, 4)));
}

TEST(Parse, Precedence) {
  Report r = run("let a = 2 + 3 * 4; let b = -2^2; let c = 2^-1; let d = (1 - 2) - 3; let e = 2^3^2;");
  auto num = [&](std::size_t k) { return std::get<HyperNumber>(*r.statements[k].value); };
  EXPECT_EQ(num(0), HyperNumber(14));
  EXPECT_EQ(num(1), HyperNumber(-4));
  EXPECT_EQ(num(2), HyperNumber(Rational(1, 2)));
  EXPECT_EQ(num(3), HyperNumber(-4));
  EXPECT_EQ(num(4), HyperNumber(512));
}

TEST(Evaluate, FarPointScenario) {
  Report r = run(std::string(kFarPoint) + "print sp(P, [0,0,1]);\nprint classify(P);\n");
  ASSERT_EQ(r.statements.size(), 5u);
  EXPECT_EQ(r.statements[2].status, StatementResult::Status::passed);
  EXPECT_EQ(std::get<HyperNumber>(*r.statements[2].diagnostic), HyperNumber::eps());
  EXPECT_EQ(std::get<HyperNumber>(*r.statements[3].value), HyperNumber::eps());
  EXPECT_EQ(std::get<Label>(*r.statements[4].value).text, "unlimited");
  EXPECT_EQ(r.exit_status(), 0);
}

TEST(Evaluate, FalsePositiveDeterminantFails) {
  Report r = run(kFalsePositive);
  const StatementResult& a = r.statements.back();
  EXPECT_EQ(a.status, StatementResult::Status::failed);
  EXPECT_EQ(a.diagnostic_label, "ndet");
  EXPECT_EQ(to_text(*a.diagnostic), "1 - eps");
  EXPECT_EQ(r.exit_status(), 1);
  EXPECT_EQ(r.exit_status(false), 0);
}

TEST(Evaluate, ShadowOfUnlimitedIsAnError) {
  Report r = run("print shadow(1/eps);");
  ASSERT_EQ(r.statements.size(), 1u);
  EXPECT_EQ(r.statements[0].status, StatementResult::Status::error);
  EXPECT_EQ(r.statements[0].error_kind, ErrorKind::UnlimitedNumber);
  EXPECT_EQ(r.exit_status(), 2);
}

TEST(Evaluate, FailuresPoisonOnlyDependents) {
  Report r = run(
      "let a = 1/0;\n"
      "let b = a + 1;\n"
      "let c = 2;\n"
      "point P = [b, c, 1];\n"
      "print c * 3;\n");
  using S = StatementResult::Status;
  EXPECT_EQ(r.statements[0].status, S::error);
  EXPECT_EQ(r.statements[0].error_kind, ErrorKind::DivisionByZero);
  EXPECT_EQ(r.statements[1].status, S::skipped);
  EXPECT_EQ(r.statements[1].error_kind, ErrorKind::DependencyFailed);
  EXPECT_EQ(r.statements[2].status, S::ok);
  EXPECT_EQ(r.statements[3].status, S::skipped);
  EXPECT_EQ(r.statements[4].status, S::ok);
  EXPECT_EQ(std::get<HyperNumber>(*r.statements[4].value), HyperNumber(6));
}

TEST(Evaluate, ErrorLocality) {
  // Appending a failing statement never changes earlier results.
  std::string prefix = std::string(kFarPoint) + kFalsePositive + "print classify(P);\n";
  std::string text_prefix = emit_text(run(prefix));
  std::string text_full = emit_text(run(prefix + "print shadow(1/eps);\nlet z = root(-1, 2);\n"));
  auto body = [](const std::string& s) { return s.substr(0, s.rfind("--")); };
  EXPECT_EQ(body(text_full).substr(0, body(text_prefix).size()), body(text_prefix));
}

TEST(Evaluate, TypesAndModes) {
  Report r = run("point P = [1, 0, 1]; print P + 1;");
  EXPECT_EQ(r.statements[1].error_kind, ErrorKind::TypeError);
  Report real = run("let z = i;", {.truncation_order = 8, .real = true});
  EXPECT_EQ(real.statements[0].error_kind, ErrorKind::RealModeUnsupported);
  Report zero = run("point P = [0, 0, 0];");
  EXPECT_EQ(zero.statements[0].error_kind, ErrorKind::ZeroVector);
  Report asym = run("conic K = [[1, 2, 0], [0, 1, 0], [0, 0, 1]];");
  EXPECT_EQ(asym.statements[0].error_kind, ErrorKind::TypeError);
  Report order = run("let a = 1/(1 + eps);", {.truncation_order = 3, .real = false});
  EXPECT_EQ(to_text(*order.statements[0].value), "1 - eps + eps^2");
}

TEST(Evaluate, LimitsAndNotes) {
  Report r = run(
      "print limit(x, 1, (x^2 - 1)/(x - 1));\n"
      "print limit(x, 0, 1/x);\n"
      "matrix M = [[1,0,0],[0,1,0],[0,0,eps]];\n"
      "print apply_line(M, [0, 1, 0]);\n");
  EXPECT_EQ(std::get<HyperNumber>(*r.statements[0].value), HyperNumber(2));
  EXPECT_EQ(r.statements[1].error_kind, ErrorKind::NotRemovable);
  ASSERT_EQ(r.statements[3].notes.size(), 1u);
  EXPECT_NE(r.statements[3].notes[0].find("almost_singular"), std::string::npos);
}

TEST(Emit, EmptyReportJson) { EXPECT_EQ(emit_json(run("")), R"({"schema":1,"statements":[]})"); }

TEST(Emit, TextLines) {
  std::string text = emit_text(run(std::string(kFarPoint) + "print classify(P);\n"));
  EXPECT_NE(text.find("ASSERT almost_incident(P, [0, 0, 1]) ... PASS"), std::string::npos) << text;
  EXPECT_NE(text.find("\nclassify(P) = unlimited\n"), std::string::npos) << text;
  EXPECT_NE(text.find("-- 4 statements: 1 passed, 0 failed, 0 errors, 0 skipped"), std::string::npos) << text;
}

TEST(Emit, JsonShape) {
  auto doc = nlohmann::json::parse(emit_json(run(std::string(kFarPoint) + "print 1/2 - 3*i*eps;")));
  EXPECT_EQ(doc["schema"], 1);
  const auto& st = doc["statements"];
  ASSERT_EQ(st.size(), 4u);
  EXPECT_EQ(st[0]["name"], "H");
  EXPECT_EQ(st[0]["value"]["terms"], nlohmann::json::parse(R"([{"exp":"-1","re":"1","im":"0"}])"));
  EXPECT_EQ(st[2]["status"], "passed");
  EXPECT_EQ(st[2]["diagnostic"]["label"], "sp");
  EXPECT_EQ(st[2]["diagnostic"]["value"]["terms"], nlohmann::json::parse(R"([{"exp":"1","re":"1","im":"0"}])"));
  EXPECT_EQ(st[3]["value"]["terms"],
            nlohmann::json::parse(R"([{"exp":"0","re":"1/2","im":"0"},{"exp":"1","re":"0","im":"-3"}])"));
  auto err = nlohmann::json::parse(emit_json(run("print shadow(1/eps);")));
  EXPECT_EQ(err["statements"][0]["error"]["kind"], "UnlimitedNumber");
}

TEST(Emit, Determinism) {
  std::string src = std::string(kFarPoint) + kFalsePositive +
                    "matrix M = [[3/5, 4/5, 7], [-4/5, 3/5, 2], [eps, eps^2, 1]];\nprint inverse(M);\n"
                    "print classify(M);\nassert almost_affine(M);\n";
  std::string first = emit_json(run(src));
  for (int k = 0; k < 5; ++k) ASSERT_EQ(emit_json(run(src)), first);
  EXPECT_EQ(emit_text(run(src)), emit_text(run(src)));
}

// ---------------------------------------------------------------------------
// Round trip over generated programs

namespace {

class ProgramGen {
 public:
  explicit ProgramGen(std::uint64_t seed) : g_(seed) {}

  Program program() {
    Program p;
    numbers_.clear();
    int n = g_.integer(0, 8);
    for (int k = 0; k < n; ++k) p.statements.push_back(statement(k));
    return p;
  }

 private:
  Stmt statement(int k) {
    Stmt s;
    std::string fresh = "v" + std::to_string(k);
    switch (g_.integer(0, 6)) {
      case 0:
        s.kind = Stmt::Kind::let;
        s.expr = expr(3);
        break;
      case 1:
      case 2:
        s.kind = g_.coin() ? Stmt::Kind::point : Stmt::Kind::line;
        s.expr = list(3);
        break;
      case 3:
        s.kind = g_.coin() ? Stmt::Kind::matrix : Stmt::Kind::conic;
        s.expr = Expr::node(Expr::Kind::list, {}, {list(2), list(2), list(2)});
        break;
      case 4: {
        s.kind = Stmt::Kind::assertion;
        s.negated = g_.coin();
        std::vector<std::string> preds;
        for (const auto& [name, sig] : builtins())
          if (sig.predicate) preds.push_back(name);
        s.expr = call(g_.pick(preds), 2);
        break;
      }
      case 5:
        s.kind = Stmt::Kind::print;
        s.expr = expr(3);
        break;
      default: {
        s.kind = Stmt::Kind::call;
        std::vector<std::string> names;
        for (const auto& [name, sig] : builtins())
          if (name != "limit") names.push_back(name);
        s.expr = call(g_.pick(names), 2);
        break;
      }
    }
    if (s.kind != Stmt::Kind::assertion && s.kind != Stmt::Kind::print && s.kind != Stmt::Kind::call) {
      s.name = fresh;
      numbers_.push_back(fresh);
    }
    return s;
  }

  Expr list(int depth) {
    return Expr::node(Expr::Kind::list, {}, {expr(depth), expr(depth), expr(depth)});
  }

  Expr call(const std::string& name, int depth) {
    const Signature& sig = builtins().at(name);
    std::vector<Expr> args;
    auto n = static_cast<std::size_t>(g_.integer(static_cast<int>(sig.min_args), static_cast<int>(sig.max_args)));
    for (std::size_t k = 0; k < n; ++k) args.push_back(expr(depth));
    return Expr::node(Expr::Kind::call, name, std::move(args));
  }

  Expr expr(int depth) {
    int choice = g_.integer(0, depth <= 0 ? 3 : 9);
    switch (choice) {
      case 0: return Expr::number(Rational(g_.integer(0, 40)), {});
      case 1: return Expr::leaf(Expr::Kind::eps);
      case 2: return Expr::leaf(Expr::Kind::imag);
      case 3:
        if (!numbers_.empty()) return Expr::leaf(Expr::Kind::ident, g_.pick(numbers_));
        return Expr::number(Rational(g_.integer(0, 9)), {});
      case 4: return Expr::node(Expr::Kind::neg, "-", {expr(depth - 1)});
      case 5:
      case 6: {
        static const std::vector<std::string> ops{"+", "-", "*", "/", "^"};
        return Expr::node(Expr::Kind::binary, g_.pick(ops), {expr(depth - 1), expr(depth - 1)});
      }
      case 7: {
        std::string x = "t" + std::to_string(locals_++);
        numbers_.push_back(x);
        Expr body = expr(depth - 1);
        numbers_.pop_back();
        return Expr::node(Expr::Kind::call, "limit", {Expr::leaf(Expr::Kind::ident, x), expr(depth - 1), body});
      }
      case 8: return Expr::node(Expr::Kind::list, {}, {expr(depth - 1), expr(depth - 1)});
      default: {
        static const std::vector<std::string> fs{"shadow", "root", "det", "join", "I", "cross_ratio", "classify"};
        return call(g_.pick(fs), depth - 1);
      }
    }
  }

  gen::Gen g_;
  std::vector<std::string> numbers_;
  int locals_ = 0;
};

}  // namespace

TEST(RoundTrip, PrintThenParseIsIdentity) {
  ProgramGen pg(51);
  for (int trial = 0; trial < 500; ++trial) {
    Program p = pg.program();
    std::string text = to_source(p);
    Program q;
    try {
      q = parse(text);
    } catch (const Error& e) {
      FAIL() << e.what() << "\n" << text;
    }
    ASSERT_EQ(q, p) << text;
    ASSERT_EQ(to_source(q), text);
  }
}
