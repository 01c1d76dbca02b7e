#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "nsproj/projective.hpp"

namespace nsproj {

/// 3×3 matrix over the hyper field, row-major.
class HyperMatrix {
 public:
  using Rows = std::array<std::array<HyperNumber, 3>, 3>;

  HyperMatrix() = default;
  explicit HyperMatrix(Rows rows) : m_(std::move(rows)) {}
  HyperMatrix(std::initializer_list<std::initializer_list<HyperNumber>> rows) {
    if (rows.size() != 3) throw Error(ErrorKind::DimensionMismatch, "matrix needs 3 rows");
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != 3) throw Error(ErrorKind::DimensionMismatch, "matrix rows need 3 entries");
      std::size_t j = 0;
      for (const auto& x : row) m_[i][j++] = x;
      ++i;
    }
  }

  static HyperMatrix identity() { return diagonal(1, 1, 1); }
  static HyperMatrix diagonal(const HyperNumber& a, const HyperNumber& b, const HyperNumber& c) {
    HyperMatrix m;
    m.m_[0][0] = a;
    m.m_[1][1] = b;
    m.m_[2][2] = c;
    return m;
  }

  const HyperNumber& operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }
  HyperNumber& operator()(std::size_t i, std::size_t j) { return m_[i][j]; }
  [[nodiscard]] const Rows& rows() const noexcept { return m_; }

  [[nodiscard]] bool is_zero() const {
    for (const auto& row : m_)
      for (const auto& x : row)
        if (!x.is_zero()) return false;
    return true;
  }
  [[nodiscard]] bool is_real() const {
    for (const auto& row : m_)
      for (const auto& x : row)
        if (!x.is_real()) return false;
    return true;
  }
  [[nodiscard]] bool is_symmetric() const {
    return m_[0][1] == m_[1][0] && m_[0][2] == m_[2][0] && m_[1][2] == m_[2][1];
  }

  [[nodiscard]] HyperMatrix transpose() const {
    HyperMatrix t;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) t.m_[i][j] = m_[j][i];
    return t;
  }
  [[nodiscard]] HyperMatrix conj_transpose() const {
    HyperMatrix t;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) t.m_[i][j] = m_[j][i].conj();
    return t;
  }
  [[nodiscard]] HyperMatrix scaled(const HyperNumber& s) const {
    HyperMatrix r = *this;
    for (auto& row : r.m_)
      for (auto& x : row) x = x * s;
    return r;
  }
  [[nodiscard]] HyperMatrix shifted(const Rational& shift) const {
    HyperMatrix r = *this;
    for (auto& row : r.m_)
      for (auto& x : row) x = x.shifted(shift);
    return r;
  }

  /// Minimal leading exponent over nonzero entries.
  [[nodiscard]] Rational valuation() const {
    if (is_zero()) throw Error(ErrorKind::ZeroMatrix, "valuation of zero matrix");
    bool found = false;
    Rational v;
    for (const auto& row : m_)
      for (const auto& x : row)
        if (!x.is_zero() && (!found || x.leading_exponent() < v)) {
          v = x.leading_exponent();
          found = true;
        }
    return v;
  }

  [[nodiscard]] HyperNumber determinant() const {
    const auto& a = m_;
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  }

  friend HyperMatrix operator*(const HyperMatrix& a, const HyperMatrix& b) {
    HyperMatrix r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        r.m_[i][j] = a.m_[i][0] * b.m_[0][j] + a.m_[i][1] * b.m_[1][j] + a.m_[i][2] * b.m_[2][j];
    return r;
  }
  friend HyperMatrix operator+(const HyperMatrix& a, const HyperMatrix& b) {
    HyperMatrix r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) r.m_[i][j] = a.m_[i][j] + b.m_[i][j];
    return r;
  }
  friend HyperMatrix operator-(const HyperMatrix& a, const HyperMatrix& b) {
    HyperMatrix r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) r.m_[i][j] = a.m_[i][j] - b.m_[i][j];
    return r;
  }
  friend HyperVector operator*(const HyperMatrix& a, const HyperVector& v) {
    detail::require_dim(v, 3, "matrix-vector product");
    std::vector<HyperNumber> out;
    for (std::size_t i = 0; i < 3; ++i) out.push_back(a.m_[i][0] * v[0] + a.m_[i][1] * v[1] + a.m_[i][2] * v[2]);
    return HyperVector(std::move(out), v.role());
  }

  friend bool operator==(const HyperMatrix& a, const HyperMatrix& b) { return a.m_ == b.m_; }

  /// `[[..], [..], [..]]`, row-major.
  [[nodiscard]] std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < 3; ++i) {
      if (i) out += ", ";
      out += "[";
      for (std::size_t j = 0; j < 3; ++j) {
        if (j) out += ", ";
        out += m_[i][j].str();
      }
      out += "]";
    }
    return out + "]";
  }

 private:
  Rows m_{};
};

enum class MatrixClass { singular, almost_singular, non_singular };

constexpr std::string_view to_string(MatrixClass c) noexcept {
  switch (c) {
    case MatrixClass::singular: return "singular";
    case MatrixClass::almost_singular: return "almost_singular";
    case MatrixClass::non_singular: return "non_singular";
  }
  return "?";
}

/// M/λ with λ = ε^val(M), which lies in the magnitude of the Frobenius norm.
inline HyperMatrix appreciable_matrix(const HyperMatrix& m) {
  if (m.is_zero()) throw Error(ErrorKind::ZeroMatrix, "appreciable_matrix of zero matrix");
  return m.shifted(-m.valuation());
}

/// det(M_𝔸).
inline HyperNumber appreciable_matrix_determinant(const HyperMatrix& m) {
  return appreciable_matrix(m).determinant();
}

inline MatrixClass classify_matrix(const HyperMatrix& m) {
  HyperNumber d = appreciable_matrix_determinant(m);
  if (d.is_zero()) return MatrixClass::singular;
  if (is_infinitesimal(d)) return MatrixClass::almost_singular;
  return MatrixClass::non_singular;
}

/// Transposed cofactor matrix of M itself: M·adj(M) = det(M)·Id.
inline HyperMatrix adjugate(const HyperMatrix& m) {
  if (m.is_zero()) throw Error(ErrorKind::ZeroMatrix, "adjugate of zero matrix");
  const auto& a = m.rows();
  auto minor = [&](std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    return a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
  };
  HyperMatrix adj;
  adj(0, 0) = minor(1, 2, 1, 2);
  adj(0, 1) = -minor(0, 2, 1, 2);
  adj(0, 2) = minor(0, 1, 1, 2);
  adj(1, 0) = -minor(1, 2, 0, 2);
  adj(1, 1) = minor(0, 2, 0, 2);
  adj(1, 2) = -minor(0, 1, 0, 2);
  adj(2, 0) = minor(1, 2, 0, 1);
  adj(2, 1) = -minor(0, 2, 0, 1);
  adj(2, 2) = minor(0, 1, 0, 1);
  return adj;
}

/// (M_𝔸)⁻¹ = adj(M_𝔸)/det(M_𝔸).
inline HyperMatrix inverse(const HyperMatrix& m) {
  HyperMatrix a = appreciable_matrix(m);
  HyperNumber d = a.determinant();
  if (d.is_zero()) throw Error(ErrorKind::SingularMatrix, "matrix is singular");
  return adjugate(a).scaled(reciprocal(d));
}

/// p ↦ M_𝔸·p_𝔸.
inline HyperVector apply_to_point(const HyperMatrix& m, const HyperVector& p) {
  detail::require_dim(p, 3, "apply_to_point");
  return (appreciable_matrix(m) * appreciable_representative(p)).with_role(Role::point);
}

/// l ↦ (M_𝔸)^{-H}·l_𝔸.
inline HyperVector apply_to_line(const HyperMatrix& m, const HyperVector& l) {
  detail::require_dim(l, 3, "apply_to_line");
  HyperMatrix inv = inverse(m);
  return (inv.conj_transpose() * appreciable_representative(l)).with_role(Role::line);
}

/// v ∈ ε(M): M_𝔸·v_𝔸 is an infinitesimal vector.
inline bool eps_kernel_member(const HyperMatrix& m, const HyperVector& v) {
  detail::require_nonzero(v, "eps_kernel_member");
  return is_infinitesimal_vector(apply_to_point(m, v));
}

/// Result of the almost-affine decision procedure, with the representative
/// it inspected.
struct AffineCheck {
  bool almost_affine = false;
  /// M_𝔸 rescaled so the (3,3) entry is 1; absent when that entry is not
  /// appreciable in M_𝔸.
  std::optional<HyperMatrix> representative;
};

/// Decides whether some appreciable representative has the block form
///   ((c, s, a), (−s, c, b), (δ₁, δ₂, 1)),  δ₁, δ₂ ∈ 𝕀,  c² + s² ∉ 𝕀.
/// Rescales M_𝔸 by its (3,3) entry, which any such representative forces to
/// be appreciable. Entry-wise infinitesimal deviations from c/−s symmetry in
/// the upper block are absorbed.
inline AffineCheck check_almost_affine(const HyperMatrix& m) {
  if (m.is_zero()) throw Error(ErrorKind::ZeroMatrix, "almost_affine of zero matrix");
  if (!m.is_real()) throw Error(ErrorKind::ComplexModeUnsupported, "almost_affine needs a real matrix");
  HyperMatrix a = appreciable_matrix(m);
  if (!is_appreciable(a(2, 2))) return {};
  HyperMatrix n = a.scaled(reciprocal(a(2, 2)));
  const HyperNumber& c = n(0, 0);
  const HyperNumber& s = n(0, 1);
  bool ok = is_infinitesimal(n(2, 0)) && is_infinitesimal(n(2, 1)) && is_infinitesimal(n(1, 1) - c) &&
            is_infinitesimal(n(1, 0) + s) && is_appreciable(c * c + s * s);
  return {ok, std::move(n)};
}

inline bool is_almost_affine(const HyperMatrix& m) { return check_almost_affine(m).almost_affine; }

}  // namespace nsproj
