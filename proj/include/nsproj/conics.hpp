#pragma once

#include <array>
#include <utility>
#include <vector>

#include "nsproj/transform.hpp"

namespace nsproj {

/// An element of K*², the homogeneous coordinates of a point on a line.
struct PlanarPair {
  HyperNumber first;
  HyperNumber second;

  [[nodiscard]] bool is_zero() const { return first.is_zero() && second.is_zero(); }
  [[nodiscard]] PlanarPair scaled(const HyperNumber& s) const { return {first * s, second * s}; }
  [[nodiscard]] HyperVector as_vector() const { return HyperVector{first, second}; }

  friend bool operator==(const PlanarPair&, const PlanarPair&) = default;
};

/// [A, B] = A₁B₂ − A₂B₁.
inline HyperNumber bracket2(const PlanarPair& a, const PlanarPair& b) {
  return bracket2(a.first, a.second, b.first, b.second);
}

/// (A,B;C,D) = [A,C][B,D] / ([A,D][B,C]) on the raw coordinates. The value
/// is exactly invariant under any nonzero rescaling of each argument.
inline HyperNumber cross_ratio(const PlanarPair& a, const PlanarPair& b, const PlanarPair& c, const PlanarPair& d) {
  HyperNumber den = bracket2(a, d) * bracket2(b, c);
  if (den.is_zero()) throw Error(ErrorKind::DegenerateCrossRatio, "[A,D]·[B,C] = 0");
  return bracket2(a, c) * bracket2(b, d) / den;
}

/// sh((A,B;C,D)). The denominator brackets, taken on appreciable
/// representatives, must be appreciable: an exactly vanishing one is a
/// DegenerateCrossRatio, an infinitesimal one makes the value unlimited.
inline ComplexRational cross_ratio_shadow(const PlanarPair& a, const PlanarPair& b, const PlanarPair& c,
                                          const PlanarPair& d) {
  auto rep = [](const PlanarPair& p) {
    HyperVector v = appreciable_representative(p.as_vector());
    return PlanarPair{v[0], v[1]};
  };
  const PlanarPair ra = rep(a), rb = rep(b), rc = rep(c), rd = rep(d);
  HyperNumber ad = bracket2(ra, rd);
  HyperNumber bc = bracket2(rb, rc);
  if (ad.is_zero() || bc.is_zero()) throw Error(ErrorKind::DegenerateCrossRatio, "[A,D]·[B,C] = 0");
  if (is_infinitesimal(ad) || is_infinitesimal(bc))
    throw Error(ErrorKind::UnlimitedNumber, "cross-ratio is unlimited: a denominator bracket is infinitesimal");
  return shadow(bracket2(ra, rc) * bracket2(rb, rd) / (ad * bc));
}

/// Symmetric quadratic form of a (non-standard) conic.
class ConicForm {
 public:
  explicit ConicForm(HyperMatrix m) : m_(std::move(m)) {
    if (m_.is_zero()) throw Error(ErrorKind::ZeroMatrix, "conic matrix is zero");
    if (!m_.is_symmetric()) throw Error(ErrorKind::TypeError, "conic matrix must be symmetric");
  }

  [[nodiscard]] const HyperMatrix& matrix() const noexcept { return m_; }
  [[nodiscard]] std::string str() const { return m_.str(); }

  friend bool operator==(const ConicForm&, const ConicForm&) = default;

 private:
  HyperMatrix m_;
};

/// p_𝔸ᵀ·C_𝔸·p_𝔸 (bilinear, no conjugation).
inline HyperNumber conic_value(const ConicForm& c, const HyperVector& p) {
  detail::require_dim(p, 3, "conic_value");
  HyperVector a = appreciable_representative(p);
  HyperVector image = appreciable_matrix(c.matrix()) * a;
  return a[0] * image[0] + a[1] * image[1] + a[2] * image[2];
}

inline bool conic_contains(const ConicForm& c, const HyperVector& p) { return is_infinitesimal(conic_value(c, p)); }

namespace detail {

using Square = std::vector<std::vector<HyperNumber>>;

// Laplace expansion along the first row; division-free, so exact up to
// truncation of the products.
inline HyperNumber laplace_determinant(const Square& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  HyperNumber sum;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    Square sub;
    sub.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<HyperNumber> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      sub.push_back(std::move(row));
    }
    HyperNumber term = m[0][col] * laplace_determinant(sub);
    sum = (col % 2 == 0) ? sum + term : sum - term;
  }
  return sum;
}

}  // namespace detail

/// The conic through five points: the kernel of the 5×6 system in
/// (x², y², z², xy, xz, yz), read off from signed 5×5 minors.
inline ConicForm conic_through_five(std::span<const HyperVector, 5> points) {
  detail::Square system;
  for (const auto& p : points) {
    detail::require_dim(p, 3, "conic_through_five");
    HyperVector a = appreciable_representative(p);
    system.push_back({a[0] * a[0], a[1] * a[1], a[2] * a[2], a[0] * a[1], a[0] * a[2], a[1] * a[2]});
  }
  std::array<HyperNumber, 6> k;
  bool any = false;
  for (std::size_t j = 0; j < 6; ++j) {
    detail::Square minor;
    for (const auto& row : system) {
      std::vector<HyperNumber> r;
      for (std::size_t c = 0; c < 6; ++c)
        if (c != j) r.push_back(row[c]);
      minor.push_back(std::move(r));
    }
    HyperNumber d = detail::laplace_determinant(minor);
    k[j] = (j % 2 == 0) ? d : -d;
    any = any || !k[j].is_zero();
  }
  if (!any) throw Error(ErrorKind::DegenerateFivePoints, "the five points do not determine a unique conic");
  const HyperNumber half(Rational(1, 2));
  HyperMatrix m{{k[0], k[3] * half, k[4] * half}, {k[3] * half, k[1], k[5] * half}, {k[4] * half, k[5] * half, k[2]}};
  return ConicForm(std::move(m));
}

inline ConicForm conic_through_five(const HyperVector& p1, const HyperVector& p2, const HyperVector& p3,
                                    const HyperVector& p4, const HyperVector& p5) {
  std::array<HyperVector, 5> pts{p1, p2, p3, p4, p5};
  return conic_through_five(std::span<const HyperVector, 5>(pts));
}

/// I = (−i, 1, 0) and J = (i, 1, 0); complex mode only.
inline std::pair<HyperVector, HyperVector> points_I_J() {
  if (field_config().real) throw Error(ErrorKind::RealModeUnsupported, "points I and J need the complex field");
  const HyperNumber i(ComplexRational::i());
  return {HyperVector({-i, HyperNumber(1), HyperNumber()}, Role::point),
          HyperVector({i, HyperNumber(1), HyperNumber()}, Role::point)};
}

/// [CAI][DBI][DAJ][CBJ] − [CAJ][DBJ][DAI][CBI], with every bracket the
/// determinant of appreciable representatives.
inline HyperNumber cocircularity_bracket(const HyperVector& a, const HyperVector& b, const HyperVector& c,
                                         const HyperVector& d) {
  auto [pi, pj] = points_I_J();
  auto br = [](const HyperVector& x, const HyperVector& y, const HyperVector& z) {
    return appreciable_determinant(x, y, z);
  };
  return br(c, a, pi) * br(d, b, pi) * br(d, a, pj) * br(c, b, pj) -
         br(c, a, pj) * br(d, b, pj) * br(d, a, pi) * br(c, b, pi);
}

inline bool is_almost_cocircular(const HyperVector& a, const HyperVector& b, const HyperVector& c,
                                 const HyperVector& d) {
  return is_infinitesimal(cocircularity_bracket(a, b, c, d));
}

}  // namespace nsproj
