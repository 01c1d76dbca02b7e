#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "nsproj/errors.hpp"

namespace nsproj {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

inline std::string to_string(const Rational& q) { return q.str(); }

/// Base-10 digit string to Integer. cpp_int would read a leading 0 as octal.
inline Integer decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer{std::string(digits)};
}

/// Parses `p`, `-p` or `p/q` with decimal digits only.
inline Rational parse_rational(std::string_view text) {
  auto digits_ok = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!digits_ok(num) || !digits_ok(den))
    throw Error(ErrorKind::MalformedNumber, "not a rational literal: '" + std::string(text) + "'");
  Integer n = decimal_integer(num);
  Integer d = decimal_integer(den);
  if (d == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  return negative ? Rational(-q) : q;
}

namespace detail {

// floor(x^(1/n)) for x >= 0 by bisection on bit length.
inline Integer integer_root_floor(const Integer& x, unsigned n) {
  if (x < 2) return x;
  std::size_t bits = boost::multiprecision::msb(x) + 1;
  Integer lo = 0;
  Integer hi = Integer(1) << (bits / n + 1);
  while (lo < hi) {
    Integer mid = (lo + hi + 1) >> 1;
    if (boost::multiprecision::pow(mid, n) <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace detail

/// Exact positive n-th root of a positive rational, if it is rational.
inline std::optional<Rational> exact_root(const Rational& q, unsigned n) {
  if (q <= 0 || n == 0) return std::nullopt;
  const Integer num = numerator_of(q);
  const Integer den = denominator_of(q);
  Integer rn = detail::integer_root_floor(num, n);
  Integer rd = detail::integer_root_floor(den, n);
  if (boost::multiprecision::pow(rn, n) != num || boost::multiprecision::pow(rd, n) != den)
    return std::nullopt;
  return Rational(rn, rd);
}

/// Exact complex number with rational real and imaginary parts.
class ComplexRational {
 public:
  ComplexRational() = default;
  ComplexRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}
  ComplexRational(int re) : re_(re) {}  // NOLINT(google-explicit-constructor)

  static ComplexRational i() { return {0, 1}; }

  [[nodiscard]] const Rational& real() const noexcept { return re_; }
  [[nodiscard]] const Rational& imag() const noexcept { return im_; }

  [[nodiscard]] bool is_zero() const { return re_ == 0 && im_ == 0; }
  [[nodiscard]] bool is_real() const { return im_ == 0; }

  [[nodiscard]] ComplexRational conj() const { return {re_, -im_}; }
  [[nodiscard]] Rational norm_squared() const { return re_ * re_ + im_ * im_; }

  ComplexRational operator-() const { return {-re_, -im_}; }

  ComplexRational& operator+=(const ComplexRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& o) {
    if (im_ == 0 && o.im_ == 0) {
      re_ *= o.re_;
      return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  ComplexRational& operator/=(const ComplexRational& o) {
    if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "complex division by zero");
    if (o.im_ == 0) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    Rational d = o.norm_squared();
    Rational re = (re_ * o.re_ + im_ * o.im_) / d;
    Rational im = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }

  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }

  /// `3/2`, `-i`, `2*i`, `2+i`, `1/2-3/4*i`.
  [[nodiscard]] std::string str() const {
    auto imag_part = [](const Rational& v) {
      Rational mag = v < 0 ? Rational(-v) : v;
      return mag == 1 ? std::string("i") : to_string(mag) + "*i";
    };
    if (im_ == 0) return to_string(re_);
    if (re_ == 0) return (im_ < 0 ? "-" : "") + imag_part(im_);
    return to_string(re_) + (im_ < 0 ? "-" : "+") + imag_part(im_);
  }

  friend std::ostream& operator<<(std::ostream& os, const ComplexRational& z) { return os << z.str(); }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline ComplexRational pow(ComplexRational base, std::uint64_t n) {
  ComplexRational result(1);
  while (n > 0) {
    if (n & 1U) result *= base;
    base *= base;
    n >>= 1U;
  }
  return result;
}

}  // namespace nsproj
