#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "nsproj/dsl/ast.hpp"
#include "nsproj/nsproj.hpp"

namespace nsproj::dsl {

/// A classification label such as `unlimited` or `almost_singular`.
struct Label {
  std::string text;
  friend bool operator==(const Label&, const Label&) = default;
};

using Value = std::variant<HyperNumber, HyperVector, HyperMatrix, ConicForm, bool, Label>;

inline std::string type_name(const Value& v) {
  struct {
    std::string operator()(const HyperNumber&) const { return "number"; }
    std::string operator()(const HyperVector& x) const {
      switch (x.role()) {
        case Role::point: return "point";
        case Role::line: return "line";
        case Role::plain: return "vector";
      }
      return "vector";
    }
    std::string operator()(const HyperMatrix&) const { return "matrix"; }
    std::string operator()(const ConicForm&) const { return "conic"; }
    std::string operator()(bool) const { return "boolean"; }
    std::string operator()(const Label&) const { return "class"; }
  } visitor;
  return std::visit(visitor, v);
}

inline std::string to_text(const Value& v) {
  struct {
    std::string operator()(const HyperNumber& x) const { return x.str(); }
    std::string operator()(const HyperVector& x) const { return x.str(); }
    std::string operator()(const HyperMatrix& x) const { return x.str(); }
    std::string operator()(const ConicForm& x) const { return x.str(); }
    std::string operator()(bool x) const { return x ? "true" : "false"; }
    std::string operator()(const Label& x) const { return x.text; }
  } visitor;
  return std::visit(visitor, v);
}

struct StatementResult {
  enum class Status { ok, passed, failed, error, skipped };

  std::size_t index = 0;
  Stmt::Kind kind = Stmt::Kind::print;
  std::string name;
  std::string source;  // expression text
  Span span;
  Status status = Status::ok;
  std::optional<Value> value;
  std::optional<Value> diagnostic;
  std::string diagnostic_label;
  std::optional<ErrorKind> error_kind;
  std::string error_message;
  std::vector<std::string> notes;
};

inline const char* to_string(StatementResult::Status s) {
  switch (s) {
    case StatementResult::Status::ok: return "ok";
    case StatementResult::Status::passed: return "passed";
    case StatementResult::Status::failed: return "failed";
    case StatementResult::Status::error: return "error";
    case StatementResult::Status::skipped: return "skipped";
  }
  return "?";
}

struct Report {
  FieldConfig config;
  std::vector<StatementResult> statements;

  [[nodiscard]] std::size_t count(StatementResult::Status s) const {
    std::size_t n = 0;
    for (const auto& r : statements) n += r.status == s ? 1 : 0;
    return n;
  }
  [[nodiscard]] bool has_errors() const {
    return count(StatementResult::Status::error) + count(StatementResult::Status::skipped) > 0;
  }
  [[nodiscard]] bool has_failures() const { return count(StatementResult::Status::failed) > 0; }

  /// 0 ok, 1 assertion failure, 2 error. Errors take precedence.
  [[nodiscard]] int exit_status(bool check_assertions = true) const {
    if (has_errors()) return 2;
    if (check_assertions && has_failures()) return 1;
    return 0;
  }
};

namespace detail {

/// Result of a builtin: value plus the quantity that decided it.
struct Outcome {
  Value value;
  std::optional<Value> diagnostic;
  std::string diagnostic_label;
  std::vector<std::string> notes;
};

class Interpreter {
 public:
  Outcome run(const Expr& e) {
    notes_.clear();
    diagnostic_.reset();
    diagnostic_label_.clear();
    Value v = eval(e);
    return {std::move(v), std::move(diagnostic_), std::move(diagnostic_label_), std::move(notes_)};
  }

  void bind(const std::string& name, Value v) { env_.insert_or_assign(name, std::move(v)); }

 private:
  [[noreturn]] static void type_error(const std::string& msg) { throw Error(ErrorKind::TypeError, msg); }

  static const HyperNumber& number(const Value& v, const char* what) {
    if (auto p = std::get_if<HyperNumber>(&v)) return *p;
    type_error(std::string(what) + " expects a number, got " + type_name(v));
  }
  static const HyperVector& vector(const Value& v, const char* what, std::size_t dim = 3) {
    auto p = std::get_if<HyperVector>(&v);
    if (!p) type_error(std::string(what) + " expects a vector, got " + type_name(v));
    if (p->size() != dim)
      throw Error(ErrorKind::DimensionMismatch,
                  std::string(what) + " expects " + std::to_string(dim) + " coordinates, got " + std::to_string(p->size()));
    return *p;
  }
  static const HyperMatrix& matrix(const Value& v, const char* what) {
    if (auto p = std::get_if<HyperMatrix>(&v)) return *p;
    type_error(std::string(what) + " expects a matrix, got " + type_name(v));
  }
  static const ConicForm& conic(const Value& v, const char* what) {
    if (auto p = std::get_if<ConicForm>(&v)) return *p;
    type_error(std::string(what) + " expects a conic, got " + type_name(v));
  }
  static PlanarPair pair(const Value& v, const char* what) {
    const HyperVector& x = vector(v, what, 2);
    return {x[0], x[1]};
  }
  static std::uint32_t small_integer(const HyperNumber& x, const char* what) {
    if (!x.is_standard() || !x.is_real() || !is_integer(x.coefficient_at(0).real()))
      type_error(std::string(what) + " needs a standard integer, got " + x.str());
    Integer n = numerator_of(x.coefficient_at(0).real());
    if (n < 0 || n > 1'000'000) type_error(std::string(what) + " out of range: " + x.str());
    return n.convert_to<std::uint32_t>();
  }

  void diagnose(std::string label, Value v) {
    diagnostic_label_ = std::move(label);
    diagnostic_ = std::move(v);
  }

  Value eval(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::number: return HyperNumber(e.value);
      case Expr::Kind::eps: return HyperNumber::eps();
      case Expr::Kind::imag:
        if (field_config().real) throw Error(ErrorKind::RealModeUnsupported, "'i' needs the complex field");
        return HyperNumber(ComplexRational::i());
      case Expr::Kind::ident: {
        auto it = env_.find(e.name);
        if (it == env_.end()) throw Error(ErrorKind::UnknownIdentifier, "'" + e.name + "' is not bound");
        return it->second;
      }
      case Expr::Kind::list: return list(e);
      case Expr::Kind::neg: return negate(eval(e.args[0]));
      case Expr::Kind::binary: return binary(e.name, eval(e.args[0]), eval(e.args[1]));
      case Expr::Kind::call: return call(e);
    }
    type_error("unknown expression");
  }

  Value list(const Expr& e) {
    if (!e.args.empty() && e.args[0].kind == Expr::Kind::list) {
      if (e.args.size() != 3) throw Error(ErrorKind::DimensionMismatch, "matrix literal needs 3 rows");
      HyperMatrix m;
      for (std::size_t r = 0; r < 3; ++r) {
        Value row = eval(e.args[r]);
        const HyperVector& v = vector(row, "matrix row");
        for (std::size_t c = 0; c < 3; ++c) m(r, c) = v[c];
      }
      return m;
    }
    std::vector<HyperNumber> xs;
    for (const auto& a : e.args) xs.push_back(number(eval(a), "vector entry"));
    return HyperVector(std::move(xs));
  }

  static Value negate(const Value& v) {
    if (auto x = std::get_if<HyperNumber>(&v)) return -*x;
    if (auto x = std::get_if<HyperVector>(&v)) return x->scaled(HyperNumber(-1));
    if (auto x = std::get_if<HyperMatrix>(&v)) return x->scaled(HyperNumber(-1));
    type_error("cannot negate a " + type_name(v));
  }

  static Value binary(const std::string& op, const Value& a, const Value& b) {
    const auto* na = std::get_if<HyperNumber>(&a);
    const auto* nb = std::get_if<HyperNumber>(&b);
    const auto* va = std::get_if<HyperVector>(&a);
    const auto* vb = std::get_if<HyperVector>(&b);
    const auto* ma = std::get_if<HyperMatrix>(&a);
    const auto* mb = std::get_if<HyperMatrix>(&b);
    if (na && nb) {
      if (op == "+") return *na + *nb;
      if (op == "-") return *na - *nb;
      if (op == "*") return *na * *nb;
      if (op == "/") return *na / *nb;
      if (*nb == HyperNumber()) return pow(*na, 0);
      // Negative standard integer exponents go through the reciprocal.
      bool negative = nb->is_standard() && nb->is_real() && nb->coefficient_at(0).real() < 0;
      std::uint32_t n = small_integer(negative ? -*nb : *nb, "exponent");
      return pow(*na, negative ? -static_cast<std::int64_t>(n) : static_cast<std::int64_t>(n));
    }
    if (op == "+" || op == "-") {
      if (va && vb) return op == "+" ? *va + *vb : *va - *vb;
      if (ma && mb) return op == "+" ? *ma + *mb : *ma - *mb;
    }
    if (op == "*") {
      if (na && vb) return vb->scaled(*na);
      if (va && nb) return va->scaled(*nb);
      if (na && mb) return mb->scaled(*na);
      if (ma && nb) return ma->scaled(*nb);
      if (ma && vb) return *ma * *vb;
      if (ma && mb) return *ma * *mb;
    }
    if (op == "/") {
      if (va && nb) return va->scaled(reciprocal(*nb));
      if (ma && nb) return ma->scaled(reciprocal(*nb));
    }
    type_error("no operator " + type_name(a) + " " + op + " " + type_name(b));
  }

  Value call(const Expr& e) {
    const std::string& f = e.name;
    if (f == "limit") return limit(e);
    std::vector<Value> args;
    args.reserve(e.args.size());
    for (const auto& a : e.args) args.push_back(eval(a));
    auto it = handlers().find(f);
    if (it == handlers().end()) throw Error(ErrorKind::UnknownIdentifier, "unknown function '" + f + "'");
    return it->second(*this, args);
  }

  Value limit(const Expr& e) {
    const std::string& x = e.args[0].name;
    HyperNumber c = number(eval(e.args[1]), "limit point");
    auto saved = env_.find(x) != env_.end() ? std::optional<Value>(env_.at(x)) : std::nullopt;
    auto restore = [&] {
      if (saved)
        env_.insert_or_assign(x, *saved);
      else
        env_.erase(x);
    };
    SqueezeResult r;
    try {
      r = squeeze_extend(
          [&](const HyperNumber& xv) {
            env_.insert_or_assign(x, Value(xv));
            return number(eval(e.args[2]), "limit body");
          },
          c);
    } catch (...) {
      restore();
      throw;
    }
    restore();
    diagnose("f(c+eps), f(c-eps)", HyperVector{r.right, r.left});
    if (!r.removable())
      throw Error(ErrorKind::NotRemovable,
                  "f(c+eps) = " + r.right.str() + " and f(c-eps) = " + r.left.str() + " do not share a limited shadow");
    return HyperNumber(*r.limit);
  }

  using Handler = std::function<Value(Interpreter&, const std::vector<Value>&)>;

  static const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table = make_handlers();
    return table;
  }

  static std::map<std::string, Handler> make_handlers() {
    std::map<std::string, Handler> h;
    using Args = const std::vector<Value>&;
    using I = Interpreter;

    h["root"] = [](I&, Args a) -> Value {
      return nth_root(number(a[0], "root"), small_integer(number(a[1], "root index"), "root index"));
    };
    h["shadow"] = [](I&, Args a) -> Value {
      if (auto v = std::get_if<HyperVector>(&a[0])) {
        std::vector<HyperNumber> xs;
        for (const auto& z : projective_shadow(*v)) xs.emplace_back(z);
        return HyperVector(std::move(xs), v->role());
      }
      return HyperNumber(shadow(number(a[0], "shadow")));
    };
    h["classify"] = [](I& self, Args a) -> Value {
      if (auto v = std::get_if<HyperVector>(&a[0])) return Label{std::string(nsproj::to_string(classify_vector(*v)))};
      if (auto m = std::get_if<HyperMatrix>(&a[0])) {
        HyperNumber d = appreciable_matrix_determinant(*m);
        self.diagnose("det(M_A)", d);
        return Label{std::string(nsproj::to_string(classify_matrix(*m)))};
      }
      return Label{std::string(nsproj::to_string(classify(number(a[0], "classify"))))};
    };
    h["conj"] = [](I&, Args a) -> Value {
      if (auto v = std::get_if<HyperVector>(&a[0])) return v->conj();
      if (auto m = std::get_if<HyperMatrix>(&a[0])) return m->conj_transpose().transpose();
      return number(a[0], "conj").conj();
    };
    h["abs"] = [](I&, Args a) -> Value { return abs(number(a[0], "abs")); };
    h["join"] = [](I&, Args a) -> Value { return join(vector(a[0], "join"), vector(a[1], "join")); };
    h["meet"] = [](I&, Args a) -> Value { return meet(vector(a[0], "meet"), vector(a[1], "meet")); };
    h["cross"] = [](I&, Args a) -> Value {
      return appreciable_cross_product(vector(a[0], "cross"), vector(a[1], "cross"));
    };
    h["normalize"] = [](I&, Args a) -> Value {
      if (auto m = std::get_if<HyperMatrix>(&a[0])) return appreciable_matrix(*m);
      const HyperVector& v = vector(a[0], "normalize");
      return appreciable_representative(v).with_role(v.role());
    };
    h["sp"] = [](I&, Args a) -> Value { return appreciable_scalar_product(vector(a[0], "sp"), vector(a[1], "sp")); };
    h["det"] = [](I&, Args a) -> Value {
      if (a.size() == 1) return appreciable_matrix_determinant(matrix(a[0], "det"));
      if (a.size() != 3) type_error("det takes a matrix or three vectors");
      return appreciable_determinant(vector(a[0], "det"), vector(a[1], "det"), vector(a[2], "det"));
    };
    h["ndet"] = [](I&, Args a) -> Value {
      return normalized_determinant(vector(a[0], "ndet"), vector(a[1], "ndet"), vector(a[2], "ndet"));
    };
    h["shadow_cross"] = [](I&, Args a) -> Value {
      std::vector<HyperNumber> xs;
      for (const auto& z : shadow_cross_product(vector(a[0], "shadow_cross"), vector(a[1], "shadow_cross")))
        xs.emplace_back(z);
      return HyperVector(std::move(xs));
    };
    h["apply"] = [](I&, Args a) -> Value { return apply_to_point(matrix(a[0], "apply"), vector(a[1], "apply")); };
    h["apply_line"] = [](I& self, Args a) -> Value {
      const HyperMatrix& m = matrix(a[0], "apply_line");
      if (classify_matrix(m) == MatrixClass::almost_singular)
        self.notes_.push_back("line transport under an almost_singular matrix");
      return apply_to_line(m, vector(a[1], "apply_line"));
    };
    h["adjugate"] = [](I&, Args a) -> Value { return adjugate(matrix(a[0], "adjugate")); };
    h["inverse"] = [](I&, Args a) -> Value { return inverse(matrix(a[0], "inverse")); };
    h["through"] = [](I&, Args a) -> Value {
      return conic_through_five(vector(a[0], "through"), vector(a[1], "through"), vector(a[2], "through"),
                                vector(a[3], "through"), vector(a[4], "through"));
    };
    h["I"] = [](I&, Args) -> Value { return points_I_J().first; };
    h["J"] = [](I&, Args) -> Value { return points_I_J().second; };
    h["cross_ratio"] = [](I&, Args a) -> Value {
      return cross_ratio(pair(a[0], "cross_ratio"), pair(a[1], "cross_ratio"), pair(a[2], "cross_ratio"),
                         pair(a[3], "cross_ratio"));
    };
    h["cr_shadow"] = [](I&, Args a) -> Value {
      return HyperNumber(cross_ratio_shadow(pair(a[0], "cr_shadow"), pair(a[1], "cr_shadow"),
                                            pair(a[2], "cr_shadow"), pair(a[3], "cr_shadow")));
    };

    // Predicates record the quantity their verdict was read from.
    h["almost_incident"] = [](I& self, Args a) -> Value {
      const HyperVector &p = vector(a[0], "almost_incident"), &l = vector(a[1], "almost_incident");
      HyperNumber s = appreciable_scalar_product(p, l);
      self.diagnose("sp", s);
      return is_infinitesimal(s);
    };
    h["almost_parallel"] = [](I& self, Args a) -> Value {
      const HyperVector &l = vector(a[0], "almost_parallel"), &m = vector(a[1], "almost_parallel");
      bool verdict = almost_parallel(l, m);
      self.diagnose("meet", appreciable_representative(meet(l, m)));
      return verdict;
    };
    h["almost_collinear"] = [](I& self, Args a) -> Value {
      HyperNumber d = normalized_determinant(vector(a[0], "almost_collinear"), vector(a[1], "almost_collinear"),
                                             vector(a[2], "almost_collinear"));
      self.diagnose("ndet", d);
      return is_infinitesimal(d);
    };
    h["almost_equivalent"] = [](I& self, Args a) -> Value {
      const Value& x = a[0];
      const HyperVector& v = std::get_if<HyperVector>(&x) && std::get<HyperVector>(x).size() == 2
                                 ? vector(x, "almost_equivalent", 2)
                                 : vector(x, "almost_equivalent");
      const HyperVector& w = vector(a[1], "almost_equivalent", v.size());
      bool verdict = almost_equivalent(v, w);
      if (v.size() == 3) self.diagnose("cross", appreciable_cross_product(v, w));
      return verdict;
    };
    h["almost_far"] = [](I& self, Args a) -> Value {
      const HyperVector& p = vector(a[0], "almost_far");
      HyperVector rep = appreciable_representative(p);
      self.diagnose("z", rep[2]);
      return is_infinitesimal(rep[2]);
    };
    h["almost_cocircular"] = [](I& self, Args a) -> Value {
      HyperNumber b = cocircularity_bracket(vector(a[0], "almost_cocircular"), vector(a[1], "almost_cocircular"),
                                            vector(a[2], "almost_cocircular"), vector(a[3], "almost_cocircular"));
      self.diagnose("bracket", b);
      self.notes_.push_back("brackets taken on appreciable representatives");
      return is_infinitesimal(b);
    };
    h["almost_singular"] = [](I& self, Args a) -> Value {
      const HyperMatrix& m = matrix(a[0], "almost_singular");
      self.diagnose("det(M_A)", appreciable_matrix_determinant(m));
      return classify_matrix(m) == MatrixClass::almost_singular;
    };
    h["non_singular"] = [](I& self, Args a) -> Value {
      const HyperMatrix& m = matrix(a[0], "non_singular");
      self.diagnose("det(M_A)", appreciable_matrix_determinant(m));
      return classify_matrix(m) == MatrixClass::non_singular;
    };
    h["almost_affine"] = [](I& self, Args a) -> Value {
      AffineCheck r = check_almost_affine(matrix(a[0], "almost_affine"));
      if (r.representative)
        self.diagnose("representative", *r.representative);
      else
        self.notes_.push_back("(3,3) entry of M_A is not appreciable");
      return r.almost_affine;
    };
    h["conic_contains"] = [](I& self, Args a) -> Value {
      HyperNumber v = conic_value(conic(a[0], "conic_contains"), vector(a[1], "conic_contains"));
      self.diagnose("form", v);
      return is_infinitesimal(v);
    };
    h["in_eps_kernel"] = [](I& self, Args a) -> Value {
      const HyperMatrix& m = matrix(a[0], "in_eps_kernel");
      const HyperVector& v = vector(a[1], "in_eps_kernel");
      bool verdict = eps_kernel_member(m, v);
      self.diagnose("image", apply_to_point(m, v));
      return verdict;
    };
    return h;
  }

  std::map<std::string, Value> env_;
  std::optional<Value> diagnostic_;
  std::string diagnostic_label_;
  std::vector<std::string> notes_;
};

inline void collect_identifiers(const Expr& e, std::set<std::string>& out, std::set<std::string>& locals) {
  if (e.kind == Expr::Kind::ident && !locals.count(e.name)) out.insert(e.name);
  if (e.kind == Expr::Kind::call && e.name == "limit") {
    collect_identifiers(e.args[1], out, locals);
    bool fresh = locals.insert(e.args[0].name).second;
    collect_identifiers(e.args[2], out, locals);
    if (fresh) locals.erase(e.args[0].name);
    return;
  }
  for (const auto& a : e.args) collect_identifiers(a, out, locals);
}

}  // namespace detail

/// Runs every statement in order under `cfg`. A statement whose value fails
/// to compute is reported as an error; later statements that reference the
/// names it would have bound are skipped with DependencyFailed.
inline Report evaluate(const Program& prog, const FieldConfig& cfg = {}) {
  FieldScope scope(cfg);
  Report report{cfg, {}};
  detail::Interpreter interp;
  std::set<std::string> failed;

  for (std::size_t k = 0; k < prog.statements.size(); ++k) {
    const Stmt& s = prog.statements[k];
    StatementResult r;
    r.index = k;
    r.kind = s.kind;
    r.name = s.name;
    r.source = (s.negated ? "not " : "") + to_source(s.expr);
    r.span = s.span;

    std::set<std::string> used, locals;
    detail::collect_identifiers(s.expr, used, locals);
    std::string blocked;
    for (const auto& u : used)
      if (failed.count(u)) {
        blocked = u;
        break;
      }
    if (!blocked.empty()) {
      r.status = StatementResult::Status::skipped;
      r.error_kind = ErrorKind::DependencyFailed;
      r.error_message = "depends on '" + blocked + "', which failed";
      if (!s.name.empty()) failed.insert(s.name);
      report.statements.push_back(std::move(r));
      continue;
    }

    try {
      detail::Outcome out = interp.run(s.expr);
      Value v = std::move(out.value);
      switch (s.kind) {
        case Stmt::Kind::point:
        case Stmt::Kind::line: {
          auto* vec = std::get_if<HyperVector>(&v);
          if (!vec || vec->size() != 3)
            throw Error(ErrorKind::TypeError, std::string(keyword(s.kind)) + " needs a 3-vector, got " + type_name(v));
          if (vec->is_zero()) throw Error(ErrorKind::ZeroVector, std::string(keyword(s.kind)) + " cannot be zero");
          v = vec->with_role(s.kind == Stmt::Kind::point ? Role::point : Role::line);
          break;
        }
        case Stmt::Kind::matrix:
          if (!std::holds_alternative<HyperMatrix>(v))
            throw Error(ErrorKind::TypeError, "matrix needs a 3x3 matrix, got " + type_name(v));
          if (std::get<HyperMatrix>(v).is_zero()) throw Error(ErrorKind::ZeroMatrix, "matrix cannot be zero");
          break;
        case Stmt::Kind::conic:
          if (auto* m = std::get_if<HyperMatrix>(&v)) v = ConicForm(*m);
          if (!std::holds_alternative<ConicForm>(v))
            throw Error(ErrorKind::TypeError, "conic needs a symmetric matrix, got " + type_name(v));
          break;
        case Stmt::Kind::assertion: {
          bool verdict = std::get<bool>(v);
          if (s.negated) verdict = !verdict;
          r.status = verdict ? StatementResult::Status::passed : StatementResult::Status::failed;
          break;
        }
        default: break;
      }
      if (!s.name.empty()) interp.bind(s.name, v);
      r.value = std::move(v);
      r.diagnostic = std::move(out.diagnostic);
      r.diagnostic_label = std::move(out.diagnostic_label);
      r.notes = std::move(out.notes);
    } catch (const Error& e) {
      r.status = StatementResult::Status::error;
      r.error_kind = e.kind();
      r.error_message = e.detail();
      if (!s.name.empty()) failed.insert(s.name);
    }
    report.statements.push_back(std::move(r));
  }
  return report;
}

}  // namespace nsproj::dsl
