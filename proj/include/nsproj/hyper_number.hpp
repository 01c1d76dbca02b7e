#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nsproj/errors.hpp"
#include "nsproj/rational.hpp"

namespace nsproj {

/// Arithmetic context for HyperNumber operations.
///
/// `truncation_order` is the number of orders of ε kept above the leading
/// exponent of every result: a value with leading exponent v retains only the
/// terms with exponent < v + truncation_order. `real` selects the ordered
/// field (no imaginary unit, comparisons allowed).
struct FieldConfig {
  std::uint32_t truncation_order = 8;
  bool real = false;

  friend bool operator==(const FieldConfig&, const FieldConfig&) = default;
};

namespace detail {
inline FieldConfig& current_config() {
  thread_local FieldConfig config{};
  return config;
}
}  // namespace detail

/// The configuration in effect on the calling thread.
inline const FieldConfig& field_config() { return detail::current_config(); }

/// Installs a FieldConfig for the current thread until destruction.
class FieldScope {
 public:
  explicit FieldScope(FieldConfig config) : saved_(detail::current_config()) {
    if (config.truncation_order < 1) throw std::invalid_argument("truncation order must be >= 1");
    detail::current_config() = config;
  }
  FieldScope(const FieldScope&) = delete;
  FieldScope& operator=(const FieldScope&) = delete;
  ~FieldScope() { detail::current_config() = saved_; }

 private:
  FieldConfig saved_;
};

enum class NumberClass { zero, infinitesimal, appreciable, unlimited };

constexpr std::string_view to_string(NumberClass c) noexcept {
  switch (c) {
    case NumberClass::zero: return "zero";
    case NumberClass::infinitesimal: return "infinitesimal";
    case NumberClass::appreciable: return "appreciable";
    case NumberClass::unlimited: return "unlimited";
  }
  return "?";
}

struct Term {
  Rational exponent;
  ComplexRational coefficient;

  friend bool operator==(const Term& a, const Term& b) {
    return a.exponent == b.exponent && a.coefficient == b.coefficient;
  }
};

/// One element of the truncated Levi-Civita field: a finite sum
/// Σ cᵢ·ε^{qᵢ} with rational exponents qᵢ (strictly increasing) and nonzero
/// complex-rational coefficients cᵢ. The empty sum is 0.
class HyperNumber {
 public:
  HyperNumber() = default;
  HyperNumber(int value) : HyperNumber(ComplexRational(value)) {}           // NOLINT
  HyperNumber(const Rational& value) : HyperNumber(ComplexRational(value)) {}  // NOLINT
  HyperNumber(const ComplexRational& value) {                                 // NOLINT
    if (!value.is_zero()) terms_.push_back({Rational(0), value});
  }

  /// The distinguished positive infinitesimal.
  static HyperNumber eps() { return monomial(ComplexRational(1), Rational(1)); }

  static HyperNumber monomial(const ComplexRational& coefficient, const Rational& exponent) {
    HyperNumber h;
    if (!coefficient.is_zero()) h.terms_.push_back({exponent, coefficient});
    return h;
  }

  /// Builds a number from arbitrary terms: sorts, merges equal exponents,
  /// drops zero coefficients and applies the current truncation.
  static HyperNumber from_terms(std::vector<Term> terms) {
    std::map<Rational, ComplexRational> acc;
    for (auto& t : terms) acc[t.exponent] += t.coefficient;
    return from_map(acc);
  }

  /// Parses the canonical text form, e.g. `1 - 3/2*eps + eps^2`.
  static HyperNumber parse(std::string_view text);

  [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

  [[nodiscard]] const Rational& leading_exponent() const {
    require_nonzero("leading exponent");
    return terms_.front().exponent;
  }
  [[nodiscard]] const ComplexRational& leading_coefficient() const {
    require_nonzero("leading coefficient");
    return terms_.front().coefficient;
  }
  [[nodiscard]] HyperNumber leading_term() const {
    require_nonzero("leading term");
    return monomial(terms_.front().coefficient, terms_.front().exponent);
  }

  /// True for 0 and for numbers with a single ε⁰ term.
  [[nodiscard]] bool is_standard() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().exponent == 0);
  }
  [[nodiscard]] bool is_real() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coefficient.is_real(); });
  }

  /// Coefficient of ε^q (0 when absent).
  [[nodiscard]] ComplexRational coefficient_at(const Rational& q) const {
    for (const auto& t : terms_)
      if (t.exponent == q) return t.coefficient;
    return {};
  }

  [[nodiscard]] HyperNumber conj() const {
    HyperNumber h = *this;
    for (auto& t : h.terms_) t.coefficient = t.coefficient.conj();
    return h;
  }

  /// Exact multiplication by ε^shift; never truncates.
  [[nodiscard]] HyperNumber shifted(const Rational& shift) const {
    HyperNumber h = *this;
    for (auto& t : h.terms_) t.exponent += shift;
    return h;
  }

  /// Exact multiplication by a standard scalar; never truncates.
  [[nodiscard]] HyperNumber scaled(const ComplexRational& factor) const {
    if (factor.is_zero()) return {};
    HyperNumber h = *this;
    for (auto& t : h.terms_) t.coefficient *= factor;
    return h;
  }

  HyperNumber operator-() const { return scaled(ComplexRational(-1)); }

  friend HyperNumber operator+(const HyperNumber& a, const HyperNumber& b) { return combine(a, b, false); }
  friend HyperNumber operator-(const HyperNumber& a, const HyperNumber& b) { return combine(a, b, true); }
  friend HyperNumber operator*(const HyperNumber& a, const HyperNumber& b);
  friend HyperNumber operator/(const HyperNumber& a, const HyperNumber& b);

  HyperNumber& operator+=(const HyperNumber& o) { return *this = *this + o; }
  HyperNumber& operator-=(const HyperNumber& o) { return *this = *this - o; }
  HyperNumber& operator*=(const HyperNumber& o) { return *this = *this * o; }
  HyperNumber& operator/=(const HyperNumber& o) { return *this = *this / o; }

  friend bool operator==(const HyperNumber& a, const HyperNumber& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const HyperNumber& a, const HyperNumber& b) { return !(a == b); }

  /// Canonical text form; round-trips through parse().
  [[nodiscard]] std::string str() const;

  friend std::ostream& operator<<(std::ostream& os, const HyperNumber& h) { return os << h.str(); }

 private:
  void require_nonzero(const char* what) const {
    if (terms_.empty()) throw Error(ErrorKind::ZeroArgument, std::string(what) + " of zero");
  }

  static HyperNumber from_map(const std::map<Rational, ComplexRational>& acc) {
    HyperNumber h;
    const std::uint32_t order = field_config().truncation_order;
    for (const auto& [q, c] : acc) {
      if (c.is_zero()) continue;
      if (!h.terms_.empty() && q - h.terms_.front().exponent >= order) break;
      h.terms_.push_back({q, c});
    }
    return h;
  }

  static HyperNumber combine(const HyperNumber& a, const HyperNumber& b, bool subtract) {
    std::vector<Term> merged;
    merged.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    auto push_b = [&](const Term& t) {
      merged.push_back({t.exponent, subtract ? -t.coefficient : t.coefficient});
    };
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->exponent < ib->exponent)) {
        merged.push_back(*ia++);
      } else if (ia == a.terms_.end() || ib->exponent < ia->exponent) {
        push_b(*ib++);
      } else {
        ComplexRational c = subtract ? ia->coefficient - ib->coefficient : ia->coefficient + ib->coefficient;
        if (!c.is_zero()) merged.push_back({ia->exponent, std::move(c)});
        ++ia;
        ++ib;
      }
    }
    HyperNumber h;
    if (!merged.empty()) {
      const Rational limit = merged.front().exponent + Rational(field_config().truncation_order);
      auto cut = std::find_if(merged.begin(), merged.end(), [&](const Term& t) { return t.exponent >= limit; });
      merged.erase(cut, merged.end());
    }
    h.terms_ = std::move(merged);
    return h;
  }

  std::vector<Term> terms_;
};

inline HyperNumber operator*(const HyperNumber& a, const HyperNumber& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const Rational limit = a.terms_.front().exponent + b.terms_.front().exponent +
                         Rational(field_config().truncation_order);
  std::map<Rational, ComplexRational> acc;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      Rational q = ta.exponent + tb.exponent;
      if (q >= limit) break;
      acc[q] += ta.coefficient * tb.coefficient;
    }
  }
  return HyperNumber::from_map(acc);
}

inline NumberClass classify(const HyperNumber& a) {
  if (a.is_zero()) return NumberClass::zero;
  const Rational& v = a.leading_exponent();
  if (v > 0) return NumberClass::infinitesimal;
  if (v == 0) return NumberClass::appreciable;
  return NumberClass::unlimited;
}

/// Zero or infinitesimal, i.e. a member of 𝕀.
inline bool is_infinitesimal(const HyperNumber& a) {
  auto c = classify(a);
  return c == NumberClass::zero || c == NumberClass::infinitesimal;
}
inline bool is_appreciable(const HyperNumber& a) { return classify(a) == NumberClass::appreciable; }
inline bool is_unlimited(const HyperNumber& a) { return classify(a) == NumberClass::unlimited; }
inline bool is_limited(const HyperNumber& a) { return !is_unlimited(a); }

inline HyperNumber reciprocal(const HyperNumber& a) {
  if (a.is_zero()) throw Error(ErrorKind::DivisionByZero, "reciprocal of zero");
  const Rational v = a.leading_exponent();
  const ComplexRational c = a.leading_coefficient();
  const ComplexRational c_inv = ComplexRational(1) / c;
  // a = c·ε^v·(1 + u) with u purely infinitesimal. The coefficients of
  // r = 1/(1+u) satisfy r_e = −Σ_t u_t·r_{e−t}, with e ranging over the sums
  // of exponents of u below the window.
  std::vector<Term> u;
  for (std::size_t k = 1; k < a.terms().size(); ++k) {
    const auto& t = a.terms()[k];
    u.push_back({t.exponent - v, t.coefficient * c_inv});
  }
  const Rational order(field_config().truncation_order);
  std::set<Rational> exponents{Rational(0)};
  for (auto it = exponents.begin(); it != exponents.end(); ++it)
    for (const auto& t : u) {
      Rational e = *it + t.exponent;
      if (e >= order) break;
      exponents.insert(std::move(e));
    }
  std::map<Rational, ComplexRational> r;
  for (const auto& e : exponents) {
    if (e == 0) {
      r.emplace(e, ComplexRational(1));
      continue;
    }
    ComplexRational acc;
    for (const auto& t : u) {
      if (t.exponent > e) break;
      auto prev = r.find(e - t.exponent);
      if (prev != r.end()) acc -= t.coefficient * prev->second;
    }
    r.emplace(e, std::move(acc));
  }
  std::vector<Term> terms;
  for (auto& [e, coeff] : r)
    if (!coeff.is_zero()) terms.push_back({e - v, coeff * c_inv});
  return HyperNumber::from_terms(std::move(terms));
}

inline HyperNumber operator/(const HyperNumber& a, const HyperNumber& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  return a * reciprocal(b);
}

inline HyperNumber pow(const HyperNumber& base, std::int64_t n) {
  if (n < 0) return reciprocal(pow(base, -n));
  HyperNumber result(1);
  HyperNumber b = base;
  auto k = static_cast<std::uint64_t>(n);
  while (k > 0) {
    if (k & 1U) result = result * b;
    k >>= 1U;
    if (k > 0) b = b * b;
  }
  return result;
}

/// Real n-th root of a real number with positive leading coefficient. The
/// leading coefficient must have a rational n-th root.
inline HyperNumber nth_root(const HyperNumber& a, std::uint32_t n) {
  if (n == 0) throw Error(ErrorKind::NotRealPositive, "root index must be positive");
  if (a.is_zero() || !a.is_real() || a.leading_coefficient().real() <= 0)
    throw Error(ErrorKind::NotRealPositive, "nth_root needs a real number with positive leading coefficient, got " + a.str());
  if (n == 1) return a;
  const Rational v = a.leading_exponent();
  const Rational c = a.leading_coefficient().real();
  auto root_c = exact_root(c, n);
  if (!root_c)
    throw Error(ErrorKind::IrrationalRoot, "leading coefficient " + to_string(c) + " has no rational root of index " +
                                               std::to_string(n));
  std::vector<Term> u_terms;
  for (std::size_t k = 1; k < a.terms().size(); ++k) {
    const auto& t = a.terms()[k];
    u_terms.push_back({t.exponent - v, t.coefficient / ComplexRational(c)});
  }
  HyperNumber u = HyperNumber::from_terms(std::move(u_terms));
  // (1+u)^(1/n) = Σ binom(1/n, k)·u^k
  const Rational alpha(1, n);
  HyperNumber sum(1);
  HyperNumber power(1);
  Rational binom(1);
  for (std::int64_t k = 1; !u.is_zero(); ++k) {
    power = power * u;
    if (power.is_zero() || power.leading_exponent() >= field_config().truncation_order) break;
    binom = binom * (alpha - Rational(k - 1)) / Rational(k);
    sum = sum + power.scaled(ComplexRational(binom));
  }
  return sum.scaled(ComplexRational(*root_c)).shifted(v / Rational(n));
}

/// The standard part: the ε⁰ coefficient of a limited number.
inline ComplexRational shadow(const HyperNumber& a) {
  if (is_unlimited(a)) throw Error(ErrorKind::UnlimitedNumber, "shadow of unlimited number " + a.str());
  return a.coefficient_at(Rational(0));
}

inline bool infinitely_close(const HyperNumber& a, const HyperNumber& b) { return is_infinitesimal(a - b); }
inline bool limited_distance(const HyperNumber& a, const HyperNumber& b) { return is_limited(a - b); }

/// r ∈ magn(s): the quotient r/s is appreciable.
inline bool in_magnitude(const HyperNumber& s, const HyperNumber& r) {
  if (s.is_zero() || r.is_zero()) throw Error(ErrorKind::ZeroArgument, "magnitude of zero");
  return s.leading_exponent() == r.leading_exponent();
}

/// Sign of a real number: the sign of its leading coefficient.
inline int sign(const HyperNumber& a) {
  if (!a.is_real()) throw Error(ErrorKind::ComplexModeUnsupported, "ordering of non-real number " + a.str());
  if (a.is_zero()) return 0;
  return a.leading_coefficient().real() > 0 ? 1 : -1;
}

/// Three-way comparison in the ordered (real) field.
inline int compare(const HyperNumber& a, const HyperNumber& b) {
  if (!a.is_real() || !b.is_real())
    throw Error(ErrorKind::ComplexModeUnsupported, "ordering of non-real numbers");
  return sign(a - b);
}

inline HyperNumber abs(const HyperNumber& a) { return sign(a) < 0 ? -a : a; }

// ---------------------------------------------------------------------------
// Canonical text form

namespace detail {

inline std::string monomial_text(const Rational& q) {
  if (q == 0) return {};
  if (q == 1) return "eps";
  if (q > 0 && is_integer(q)) return "eps^" + to_string(q);
  return "eps^(" + to_string(q) + ")";
}

}  // namespace detail

inline std::string HyperNumber::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [q, c] : terms_) {
    bool negative = false;
    std::string magnitude;
    bool unit = false;
    if (c.is_real()) {
      negative = c.real() < 0;
      Rational m = negative ? Rational(-c.real()) : c.real();
      unit = m == 1;
      magnitude = to_string(m);
    } else if (c.real() == 0) {
      negative = c.imag() < 0;
      Rational m = negative ? Rational(-c.imag()) : c.imag();
      magnitude = m == 1 ? "i" : to_string(m) + "*i";
    } else {
      magnitude = "(" + c.str() + ")";
    }
    std::string mono = detail::monomial_text(q);
    std::string body;
    if (mono.empty())
      body = magnitude;
    else if (unit)
      body = mono;
    else
      body = magnitude + "*" + mono;
    if (first)
      out += (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

namespace detail {

class CanonicalReader {
 public:
  explicit CanonicalReader(std::string_view text) : s_(text) {}

  HyperNumber read() {
    std::vector<Term> terms;
    skip_ws();
    bool negative = accept('-');
    skip_ws();
    if (s_.substr(pos_) == "0" && !negative) return {};
    terms.push_back(read_term(negative));
    while (true) {
      skip_ws();
      if (pos_ == s_.size()) break;
      if (accept('+'))
        negative = false;
      else if (accept('-'))
        negative = true;
      else
        fail("expected '+' or '-'");
      skip_ws();
      terms.push_back(read_term(negative));
    }
    for (std::size_t k = 1; k < terms.size(); ++k)
      if (!(terms[k - 1].exponent < terms[k].exponent)) fail("exponents must be strictly increasing");
    return HyperNumber::from_terms(std::move(terms));
  }

 private:
  Term read_term(bool negative) {
    ComplexRational coeff(1);
    bool has_coeff = false;
    if (accept('(')) {
      coeff = read_complex_body();
      expect(')');
      has_coeff = true;
    } else if (peek() == 'i') {
      ++pos_;
      coeff = ComplexRational::i();
      has_coeff = true;
    } else if (is_digit(peek())) {
      Rational r = read_unsigned_rational();
      if (accept_str("*i")) {
        coeff = ComplexRational(0, r);
      } else {
        coeff = ComplexRational(r);
      }
      has_coeff = true;
    }
    Rational exponent(0);
    if (has_coeff) {
      if (accept_str("*eps")) exponent = read_exponent();
    } else {
      if (!accept_str("eps")) fail("expected a term");
      exponent = read_exponent();
    }
    if (coeff.is_zero()) fail("zero coefficient");
    return {exponent, negative ? -coeff : coeff};
  }

  Rational read_exponent() {
    if (!accept('^')) return Rational(1);
    if (accept('(')) {
      bool neg = accept('-');
      Rational q = read_unsigned_rational();
      expect(')');
      return neg ? Rational(-q) : q;
    }
    return read_unsigned_rational();
  }

  // a, a+b*i, a-i, ... inside parentheses
  ComplexRational read_complex_body() {
    bool neg_re = accept('-');
    Rational re = read_unsigned_rational();
    bool neg_im = false;
    if (accept('-'))
      neg_im = true;
    else
      expect('+');
    Rational im(1);
    if (is_digit(peek())) {
      im = read_unsigned_rational();
      expect('*');
    }
    expect('i');
    return {neg_re ? Rational(-re) : re, neg_im ? Rational(-im) : im};
  }

  Rational read_unsigned_rational() {
    std::size_t start = pos_;
    while (is_digit(peek())) ++pos_;
    if (peek() == '/') {
      ++pos_;
      std::size_t den_start = pos_;
      while (is_digit(peek())) ++pos_;
      if (pos_ == den_start) fail("expected denominator");
    }
    if (pos_ == start) fail("expected a rational");
    return parse_rational(s_.substr(start, pos_ - start));
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool accept_str(std::string_view w) {
    if (s_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::MalformedNumber,
                what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline HyperNumber HyperNumber::parse(std::string_view text) { return detail::CanonicalReader(text).read(); }

}  // namespace nsproj
