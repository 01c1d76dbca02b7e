#pragma once

#include <algorithm>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nsproj/hyper_number.hpp"

namespace nsproj {

enum class Role { plain, point, line };

constexpr std::string_view to_string(Role r) noexcept {
  switch (r) {
    case Role::plain: return "plain";
    case Role::point: return "point";
    case Role::line: return "line";
  }
  return "?";
}

/// Homogeneous coordinates over the hyper field. The role tag is cosmetic:
/// points and lines share one algebra, and equality ignores the tag.
class HyperVector {
 public:
  HyperVector() = default;
  HyperVector(std::initializer_list<HyperNumber> entries, Role role = Role::plain)
      : entries_(entries), role_(role) {}
  explicit HyperVector(std::vector<HyperNumber> entries, Role role = Role::plain)
      : entries_(std::move(entries)), role_(role) {}

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] const HyperNumber& operator[](std::size_t i) const { return entries_[i]; }
  HyperNumber& operator[](std::size_t i) { return entries_[i]; }
  [[nodiscard]] const std::vector<HyperNumber>& entries() const noexcept { return entries_; }
  [[nodiscard]] auto begin() const noexcept { return entries_.begin(); }
  [[nodiscard]] auto end() const noexcept { return entries_.end(); }

  [[nodiscard]] Role role() const noexcept { return role_; }
  [[nodiscard]] HyperVector with_role(Role r) const {
    HyperVector v = *this;
    v.role_ = r;
    return v;
  }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const HyperNumber& x) { return x.is_zero(); });
  }

  [[nodiscard]] HyperVector scaled(const HyperNumber& s) const {
    HyperVector v = *this;
    for (auto& x : v.entries_) x = x * s;
    return v;
  }
  [[nodiscard]] HyperVector shifted(const Rational& shift) const {
    HyperVector v = *this;
    for (auto& x : v.entries_) x = x.shifted(shift);
    return v;
  }
  [[nodiscard]] HyperVector conj() const {
    HyperVector v = *this;
    for (auto& x : v.entries_) x = x.conj();
    return v;
  }

  friend bool operator==(const HyperVector& a, const HyperVector& b) { return a.entries_ == b.entries_; }

  /// `[t1, t2, t3]` with canonical entries.
  [[nodiscard]] std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += ", ";
      out += entries_[i].str();
    }
    return out + "]";
  }

 private:
  std::vector<HyperNumber> entries_;
  Role role_ = Role::plain;
};

inline HyperVector operator+(const HyperVector& a, const HyperVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector sum of different sizes");
  std::vector<HyperNumber> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return HyperVector(std::move(out), a.role());
}

inline HyperVector operator-(const HyperVector& a, const HyperVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector difference of different sizes");
  std::vector<HyperNumber> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
  return HyperVector(std::move(out), a.role());
}

/// A homogeneous tuple of standard numbers, e.g. a projective shadow.
using StandardVector = std::vector<ComplexRational>;

/// Same point of standard projective space: both nonzero and all 2×2
/// minors vanish.
inline bool projectively_equal(const StandardVector& a, const StandardVector& b) {
  if (a.size() != b.size()) return false;
  auto nonzero = [](const StandardVector& v) {
    return std::any_of(v.begin(), v.end(), [](const ComplexRational& z) { return !z.is_zero(); });
  };
  if (!nonzero(a) || !nonzero(b)) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

inline std::string to_string(const StandardVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].str();
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// Classification and normalization

/// `limited` is the umbrella class (infinitesimal or appreciable); the
/// classifier always reports the finer class.
enum class VectorClass { limited, infinitesimal, appreciable, unlimited };

constexpr std::string_view to_string(VectorClass c) noexcept {
  switch (c) {
    case VectorClass::limited: return "limited";
    case VectorClass::infinitesimal: return "infinitesimal";
    case VectorClass::appreciable: return "appreciable";
    case VectorClass::unlimited: return "unlimited";
  }
  return "?";
}

namespace detail {

inline void require_nonzero(const HyperVector& v, const char* what) {
  if (v.size() == 0) throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": empty vector");
  if (v.is_zero()) throw Error(ErrorKind::ZeroVector, std::string(what) + ": zero vector");
}

inline void require_dim(const HyperVector& v, std::size_t n, const char* what) {
  if (v.size() != n)
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": expected dimension " + std::to_string(n) + ", got " + std::to_string(v.size()));
}

/// Index of the first entry with minimal leading exponent.
inline std::size_t min_valuation_index(const HyperVector& v) {
  std::size_t best = v.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (best == v.size() || v[i].leading_exponent() < v[best].leading_exponent()) best = i;
  }
  return best;
}

}  // namespace detail

/// Minimal leading exponent over the nonzero entries (the valuation of the
/// vector, and of its Euclidean norm).
inline Rational valuation(const HyperVector& v) {
  detail::require_nonzero(v, "valuation");
  return v[detail::min_valuation_index(v)].leading_exponent();
}

inline VectorClass classify_vector(const HyperVector& v) {
  if (v.size() == 0) throw Error(ErrorKind::DimensionMismatch, "classify_vector: empty vector");
  if (v.is_zero()) return VectorClass::infinitesimal;
  Rational val = valuation(v);
  if (val < 0) return VectorClass::unlimited;
  if (val == 0) return VectorClass::appreciable;
  return VectorClass::infinitesimal;
}

/// Every entry in 𝕀 (the zero vector included).
inline bool is_infinitesimal_vector(const HyperVector& v) {
  return classify_vector(v) == VectorClass::infinitesimal;
}

/// The normalizing scalar λ = ε^val(v). It lies in magn(‖v‖) because the
/// max-norm and Euclidean norm share a magnitude.
inline HyperNumber normalizer(const HyperVector& v) { return HyperNumber::monomial(ComplexRational(1), valuation(v)); }

/// λ⁻¹·v: all entries limited, at least one appreciable. Exact (pure
/// exponent shift) and idempotent on appreciable vectors.
inline HyperVector appreciable_representative(const HyperVector& v) {
  detail::require_nonzero(v, "appreciable_representative");
  return v.shifted(-valuation(v));
}

/// Σ |vᵢ|², exact.
inline HyperNumber euclidean_norm_squared(const HyperVector& v) {
  HyperNumber sum;
  for (const auto& x : v) sum = sum + x.conj() * x;
  return sum;
}

/// ‖v‖ via nth_root; requires the leading coefficient of ‖v‖² to be a
/// rational square (throws IrrationalRoot otherwise). Used for cross-checks.
inline HyperNumber euclidean_norm(const HyperVector& v) {
  detail::require_nonzero(v, "euclidean_norm");
  return nth_root(euclidean_norm_squared(v), 2);
}

/// psh(v): entry-wise shadow of the appreciable representative.
inline StandardVector projective_shadow(const HyperVector& v) {
  HyperVector a = appreciable_representative(v);
  StandardVector out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(shadow(x));
  return out;
}

// ---------------------------------------------------------------------------
// Products

/// Σ conj(xᵢ)·yᵢ in complex mode, Σ xᵢ·yᵢ in real mode, on raw entries.
inline HyperNumber scalar_product(const HyperVector& x, const HyperVector& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "scalar product of different sizes");
  const bool hermitian = !field_config().real;
  HyperNumber sum;
  for (std::size_t i = 0; i < x.size(); ++i) sum = sum + (hermitian ? x[i].conj() : x[i]) * y[i];
  return sum;
}

/// ⟨x, y⟩_* := ⟨x_𝔸, y_𝔸⟩. Only membership of the result in 𝕀 is
/// independent of the chosen representatives.
inline HyperNumber appreciable_scalar_product(const HyperVector& x, const HyperVector& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "scalar product of different sizes");
  return scalar_product(appreciable_representative(x), appreciable_representative(y));
}

inline HyperVector cross_product(const HyperVector& x, const HyperVector& y) {
  detail::require_dim(x, 3, "cross product");
  detail::require_dim(y, 3, "cross product");
  return HyperVector{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

/// x ×_* y := x_𝔸 × y_𝔸. Not renormalized: the result may be infinitesimal,
/// and is exactly zero for dependent inputs.
inline HyperVector appreciable_cross_product(const HyperVector& x, const HyperVector& y) {
  detail::require_dim(x, 3, "appreciable cross product");
  detail::require_dim(y, 3, "appreciable cross product");
  return cross_product(appreciable_representative(x), appreciable_representative(y));
}

inline HyperVector join(const HyperVector& p, const HyperVector& q) {
  return appreciable_cross_product(p, q).with_role(Role::line);
}

inline HyperVector meet(const HyperVector& l, const HyperVector& m) {
  return appreciable_cross_product(l, m).with_role(Role::point);
}

/// sh(x_𝔸 × y_𝔸); all-zero signals that the shadows coincide.
inline StandardVector shadow_cross_product(const HyperVector& x, const HyperVector& y) {
  HyperVector c = appreciable_cross_product(x, y);
  StandardVector out;
  for (const auto& e : c) out.push_back(shadow(e));
  return out;
}

// ---------------------------------------------------------------------------
// Almost relations

/// ⟨p, l⟩_* ∈ 𝕀.
inline bool almost_incident(const HyperVector& p, const HyperVector& l) {
  return is_infinitesimal(appreciable_scalar_product(p, l));
}

inline bool almost_orthogonal(const HyperVector& x, const HyperVector& y) { return almost_incident(x, y); }

inline HyperNumber bracket2(const HyperNumber& a1, const HyperNumber& a2, const HyperNumber& b1,
                            const HyperNumber& b2) {
  return a1 * b2 - a2 * b1;
}

/// x ≃ y, decided by the appreciable cross product being infinitesimal (for
/// planar pairs, the 2×2 bracket of the appreciable representatives).
inline bool almost_equivalent(const HyperVector& x, const HyperVector& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "almost_equivalent of different sizes");
  if (x.size() == 2) {
    HyperVector a = appreciable_representative(x);
    HyperVector b = appreciable_representative(y);
    return is_infinitesimal(bracket2(a[0], a[1], b[0], b[1]));
  }
  return is_infinitesimal_vector(appreciable_cross_product(x, y));
}

/// Membership of y in the projective halo of x.
inline bool projective_halo_member(const HyperVector& x, const HyperVector& y) { return almost_equivalent(x, y); }

/// The last coordinate of the appreciable representative is in 𝕀.
inline bool is_almost_far_point(const HyperVector& p) {
  detail::require_dim(p, 3, "is_almost_far_point");
  return is_infinitesimal(appreciable_representative(p)[2]);
}

inline bool almost_parallel(const HyperVector& l, const HyperVector& m) {
  HyperVector x = meet(l, m);
  if (x.is_zero()) throw Error(ErrorKind::DegeneratePair, "almost_parallel: lines coincide exactly");
  return is_almost_far_point(x);
}

/// Standard (bilinear) 3×3 determinant with columns x, y, z.
inline HyperNumber determinant(const HyperVector& x, const HyperVector& y, const HyperVector& z) {
  detail::require_dim(x, 3, "determinant");
  HyperVector c = cross_product(y, z);
  return x[0] * c[0] + x[1] * c[1] + x[2] * c[2];
}

/// det[x_𝔸, y_𝔸, z_𝔸].
inline HyperNumber appreciable_determinant(const HyperVector& x, const HyperVector& y, const HyperVector& z) {
  return determinant(appreciable_representative(x), appreciable_representative(y), appreciable_representative(z));
}

/// The λ ∈ magn(‖y_𝔸 × z_𝔸‖) used by the normalized determinant: the
/// leading term of the first entry of minimal valuation.
inline HyperNumber determinant_normalizer(const HyperVector& y, const HyperVector& z) {
  HyperVector c = appreciable_cross_product(y, z);
  if (c.is_zero()) throw Error(ErrorKind::DegeneratePair, "y and z are linearly dependent");
  return c[detail::min_valuation_index(c)].leading_term();
}

/// det_*[x,y,z] / λ; infinitesimal exactly when x, y, z are almost collinear.
inline HyperNumber normalized_determinant(const HyperVector& x, const HyperVector& y, const HyperVector& z) {
  HyperNumber lambda = determinant_normalizer(y, z);
  return appreciable_determinant(x, y, z) / lambda;
}

inline bool almost_collinear(const HyperVector& x, const HyperVector& y, const HyperVector& z) {
  return is_infinitesimal(normalized_determinant(x, y, z));
}

/// Pairs reduce to almost equivalence, triples to almost collinearity.
inline bool almost_linearly_dependent(std::span<const HyperVector> vs) {
  if (vs.size() == 2) return almost_equivalent(vs[0], vs[1]);
  if (vs.size() == 3) return almost_collinear(vs[0], vs[1], vs[2]);
  throw Error(ErrorKind::UnsupportedArity,
              "almost_linearly_dependent supports 2 or 3 vectors, got " + std::to_string(vs.size()));
}

}  // namespace nsproj
