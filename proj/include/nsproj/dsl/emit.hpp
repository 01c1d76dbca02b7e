#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "nsproj/dsl/interpreter.hpp"

namespace nsproj::dsl {

namespace detail {

inline nlohmann::json term_json(const Term& t) {
  return {{"exp", nsproj::to_string(t.exponent)}, {"re", nsproj::to_string(t.coefficient.real())},
          {"im", nsproj::to_string(t.coefficient.imag())}};
}

inline nlohmann::json number_json(const HyperNumber& x) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : x.terms()) terms.push_back(term_json(t));
  return terms;
}

inline nlohmann::json vector_json(const HyperVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(number_json(x));
  return out;
}

inline nlohmann::json matrix_json(const HyperMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < 3; ++j) row.push_back(number_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json value_json(const Value& v) {
  nlohmann::json out{{"type", type_name(v)}};
  if (auto x = std::get_if<HyperNumber>(&v)) {
    out["terms"] = number_json(*x);
    out["leading"] = x->is_zero() ? nlohmann::json() : term_json(x->leading_term().terms().front());
  } else if (auto x = std::get_if<HyperVector>(&v)) {
    out["entries"] = vector_json(*x);
  } else if (auto x = std::get_if<HyperMatrix>(&v)) {
    out["rows"] = matrix_json(*x);
  } else if (auto x = std::get_if<ConicForm>(&v)) {
    out["rows"] = matrix_json(x->matrix());
  } else if (auto x = std::get_if<bool>(&v)) {
    out["value"] = *x;
    return out;
  } else if (auto x = std::get_if<Label>(&v)) {
    out["value"] = x->text;
    return out;
  }
  out["text"] = to_text(v);
  return out;
}

}  // namespace detail

/// Schema-versioned JSON. Keys are sorted, so identical reports give
/// byte-identical output.
inline std::string emit_json(const Report& report) {
  nlohmann::json statements = nlohmann::json::array();
  for (const auto& r : report.statements) {
    nlohmann::json s{{"index", r.index},
                     {"kind", keyword(r.kind)},
                     {"line", r.span.line},
                     {"column", r.span.column},
                     {"source", r.source},
                     {"status", to_string(r.status)}};
    if (!r.name.empty()) s["name"] = r.name;
    if (r.value) s["value"] = detail::value_json(*r.value);
    if (r.diagnostic) s["diagnostic"] = {{"label", r.diagnostic_label}, {"value", detail::value_json(*r.diagnostic)}};
    if (r.error_kind) s["error"] = {{"kind", nsproj::to_string(*r.error_kind)}, {"message", r.error_message}};
    if (!r.notes.empty()) s["notes"] = r.notes;
    statements.push_back(std::move(s));
  }
  nlohmann::json doc{{"schema", 1}, {"statements", std::move(statements)}};
  return doc.dump();
}

/// One line per statement plus a summary line.
inline std::string emit_text(const Report& report) {
  std::ostringstream os;
  auto where = [](const StatementResult& r) {
    return std::to_string(r.span.line) + ":" + std::to_string(r.span.column);
  };
  auto diag = [](const StatementResult& r) {
    return r.diagnostic ? "  [" + r.diagnostic_label + " = " + to_text(*r.diagnostic) + "]" : std::string();
  };
  for (const auto& r : report.statements) {
    switch (r.status) {
      case StatementResult::Status::passed:
      case StatementResult::Status::failed:
        os << "ASSERT " << r.source << " ... " << (r.status == StatementResult::Status::passed ? "PASS" : "FAIL")
           << diag(r) << "\n";
        break;
      case StatementResult::Status::error:
      case StatementResult::Status::skipped: {
        std::string what = r.kind == Stmt::Kind::call ? r.source : std::string(keyword(r.kind)) + " " +
                                                                       (r.name.empty() ? r.source : r.name);
        os << (r.status == StatementResult::Status::error ? "ERROR " : "SKIP ") << where(r) << " " << what << ": "
           << nsproj::to_string(*r.error_kind) << ": " << r.error_message << "\n";
        break;
      }
      case StatementResult::Status::ok:
        if (r.kind == Stmt::Kind::print || r.kind == Stmt::Kind::call)
          os << r.source << " = " << to_text(*r.value) << diag(r) << "\n";
        else
          os << keyword(r.kind) << " " << r.name << " = " << to_text(*r.value) << diag(r) << "\n";
        break;
    }
    for (const auto& n : r.notes) os << "  note: " << n << "\n";
  }
  using S = StatementResult::Status;
  os << "-- " << report.statements.size() << " statements: " << report.count(S::passed) << " passed, "
     << report.count(S::failed) << " failed, " << report.count(S::error) << " errors, " << report.count(S::skipped)
     << " skipped\n";
  return os.str();
}

}  // namespace nsproj::dsl
