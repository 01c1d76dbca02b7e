#pragma once

#include <optional>
#include <utility>

#include "nsproj/hyper_number.hpp"

namespace nsproj {

/// Outcome of probing a function on both sides of a suspected singularity.
struct SqueezeResult {
  HyperNumber right;  // f(c + ε)
  HyperNumber left;   // f(c − ε)
  std::optional<ComplexRational> limit;

  [[nodiscard]] bool removable() const noexcept { return limit.has_value(); }
};

/// Resolves a removable singularity of `f` at the standard point `c`:
/// evaluates f(c ± ε); when both values are limited and share a shadow L,
/// f extends continuously with f(c) = L. Otherwise no limit is reported.
///
/// `f` is any callable HyperNumber -> HyperNumber. Arithmetic failures at
/// the perturbed points surface as EvaluationError.
template <class F>
SqueezeResult squeeze_extend(F&& f, const HyperNumber& c) {
  if (!c.is_standard()) throw Error(ErrorKind::NotStandard, "squeeze point must be standard, got " + c.str());
  if (!c.is_real()) throw Error(ErrorKind::NotStandard, "squeeze point must be real, got " + c.str());
  auto probe = [&](const HyperNumber& x) -> HyperNumber {
    try {
      return std::forward<F>(f)(x);
    } catch (const Error& e) {
      throw Error(ErrorKind::EvaluationError, "f(" + x.str() + ") failed: " + e.what());
    }
  };
  SqueezeResult result{probe(c + HyperNumber::eps()), probe(c - HyperNumber::eps()), std::nullopt};
  if (is_limited(result.right) && is_limited(result.left)) {
    ComplexRational l_right = shadow(result.right);
    if (l_right == shadow(result.left)) result.limit = std::move(l_right);
  }
  return result;
}

}  // namespace nsproj
