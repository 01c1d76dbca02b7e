#include <gtest/gtest.h>

#include "nsproj/nsproj.hpp"
#include "support/generators.hpp"

using namespace nsproj;

namespace {

const HyperNumber eps = HyperNumber::eps();
const HyperNumber H = reciprocal(eps);

template <class F>
ErrorKind error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an nsproj::Error";
  return ErrorKind::TypeError;
}

PlanarPair P(const HyperNumber& a, const HyperNumber& b) { return {a, b}; }

const PlanarPair hA = P(0, 1), hB = P(1, 0), hC = P(1, 1), hD = P(-1, 1);

ConicForm unit_circle() { return ConicForm(HyperMatrix::diagonal(1, 1, -1)); }

// Rational point of the unit circle, ((1−t²), 2t, 1+t²).
HyperVector circle_point(const Rational& t) {
  return {HyperNumber(Rational(1 - t * t)), HyperNumber(Rational(2 * t)), HyperNumber(Rational(1 + t * t))};
}

// Rational point of the circle with center (a, b) and radius r.
HyperVector circle_point(const Rational& t, const Rational& a, const Rational& b, const Rational& r) {
  Rational d = 1 + t * t;
  return {HyperNumber(Rational(a * d + r * (1 - t * t))), HyperNumber(Rational(b * d + r * 2 * t)), HyperNumber(d)};
}

bool proportional(const HyperMatrix& a, const HyperMatrix& b) {
  // Entry-wise a(i,j)·b(k,l) = a(k,l)·b(i,j).
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l)
          if (a(i, j) * b(k, l) != a(k, l) * b(i, j)) return false;
  return true;
}

HyperNumber random_scale(gen::Gen& g) {
  switch (g.integer(0, 2)) {
    case 0: return HyperNumber(g.rational());
    case 1: return HyperNumber::monomial(ComplexRational(g.rational()), 1);
    default: return HyperNumber::monomial(ComplexRational(g.rational()), -1);
  }
}

}  // namespace

TEST(Bracket, Examples) {
  EXPECT_EQ(bracket2(P(1, 0), P(0, 1)), HyperNumber(1));
  EXPECT_EQ(bracket2(P(1, 1), P(1, 1)), HyperNumber());
  EXPECT_EQ(bracket2(P(0, 1), P(1, 1)), HyperNumber(-1));
}

TEST(CrossRatio, Examples) {
  EXPECT_EQ(cross_ratio(hA, hB, hC, hD), HyperNumber(-1));
  EXPECT_EQ(cross_ratio(P(2, 3), P(-1, 5), P(4, 1), P(4, 1)), HyperNumber(1));
  EXPECT_EQ(cross_ratio(hA.scaled(eps), hB, hC, hD), HyperNumber(-1));
  EXPECT_EQ(error_of([] { cross_ratio(hA, hB, hC, hA); }), ErrorKind::DegenerateCrossRatio);
}

TEST(CrossRatioShadow, Examples) {
  EXPECT_EQ(cross_ratio_shadow(hA, hB, hC, hD), ComplexRational(-1));
  PlanarPair a2 = P(eps, 1), b2 = P(1, eps * eps), c2 = P(1 + eps, 1), d2 = P(-1, 1 - 3 * eps);
  EXPECT_EQ(cross_ratio_shadow(a2, b2, c2, d2), ComplexRational(-1));
  EXPECT_EQ(error_of([] { cross_ratio_shadow(hA, hB, hC, P(eps, 1)); }), ErrorKind::UnlimitedNumber);
  EXPECT_EQ(error_of([] { cross_ratio_shadow(hA, hB, hC, hA); }), ErrorKind::DegenerateCrossRatio);
}

TEST(ConicContains, Examples) {
  EXPECT_TRUE(conic_contains(unit_circle(), {1, 0, 1}));
  EXPECT_EQ(conic_value(unit_circle(), {1 + eps, eps, 1}), 2 * eps + 2 * eps * eps);
  EXPECT_TRUE(conic_contains(unit_circle(), {1 + eps, eps, 1}));
  EXPECT_FALSE(conic_contains(unit_circle(), {2, 0, 1}));
  EXPECT_EQ(error_of([] { conic_contains(unit_circle(), {0, 0, 0}); }), ErrorKind::ZeroVector);
  EXPECT_EQ(error_of([] { ConicForm(HyperMatrix{{1, 2, 0}, {0, 1, 0}, {0, 0, 1}}); }), ErrorKind::TypeError);
  EXPECT_EQ(error_of([] { ConicForm(HyperMatrix{}); }), ErrorKind::ZeroMatrix);
}

TEST(ConicThroughFive, UnitCircle) {
  ConicForm c = conic_through_five({1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1},
                                   {HyperNumber(Rational(3, 5)), HyperNumber(Rational(4, 5)), 1});
  EXPECT_TRUE(proportional(c.matrix(), HyperMatrix::diagonal(1, 1, -1))) << c.str();
}

TEST(ConicThroughFive, ThreeCollinearGivesLinePair) {
  std::array<HyperVector, 5> pts{HyperVector{0, 0, 1}, HyperVector{1, 0, 1}, HyperVector{2, 0, 1},
                                 HyperVector{0, 1, 1}, HyperVector{1, 2, 1}};
  ConicForm c = conic_through_five(pts);
  for (const auto& p : pts) EXPECT_EQ(conic_value(c, p), HyperNumber());
  EXPECT_EQ(c.matrix().determinant(), HyperNumber());
  // Line pair y·(x − y + 1) = 0 up to scale.
  HyperMatrix expected{{0, 1, 0}, {1, -2, 1}, {0, 1, 0}};
  EXPECT_TRUE(proportional(c.matrix(), expected)) << c.str();
}

TEST(ConicThroughFive, DuplicateIsDegenerate) {
  EXPECT_EQ(error_of([] { conic_through_five({1, 0, 1}, {1, 0, 1}, {-1, 0, 1}, {0, -1, 1}, {0, 1, 1}); }),
            ErrorKind::DegenerateFivePoints);
}

TEST(PointsIJ, Examples) {
  auto [pi, pj] = points_I_J();
  HyperNumber i(ComplexRational::i());
  EXPECT_EQ(pi, (HyperVector{-i, 1, 0}));
  EXPECT_EQ(pi.conj(), pj);
  EXPECT_TRUE(conic_contains(unit_circle(), pi));
  FieldScope real({.truncation_order = 8, .real = true});
  EXPECT_EQ(error_of([] { points_I_J(); }), ErrorKind::RealModeUnsupported);
}

TEST(Cocircular, Examples) {
  EXPECT_EQ(cocircularity_bracket({1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}), HyperNumber());
  EXPECT_TRUE(is_almost_cocircular({1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1 + eps}));
  EXPECT_FALSE(cocircularity_bracket({1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1 + eps}).is_zero());
  EXPECT_FALSE(is_almost_cocircular({1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {2, 2, 1}));
  EXPECT_EQ(error_of([] { is_almost_cocircular({0, 0, 0}, {0, 1, 1}, {-1, 0, 1}, {2, 2, 1}); }),
            ErrorKind::ZeroVector);
}

// ---------------------------------------------------------------------------
// Properties

TEST(ConicProperties, CrossRatioScaleInvariance) {
  gen::Gen g(41);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    PlanarPair a = P(g.limited(), g.limited()), b = P(g.limited(), g.limited()), c = P(g.limited(), g.limited()),
               d = P(g.limited(), g.limited());
    if (bracket2(a, d).is_zero() || bracket2(b, c).is_zero()) continue;
    HyperNumber r = cross_ratio(a, b, c, d);
    ASSERT_EQ(cross_ratio(a.scaled(random_scale(g)), b.scaled(random_scale(g)), c.scaled(random_scale(g)),
                          d.scaled(random_scale(g))),
              r);
    ++checked;
  }
  EXPECT_GT(checked, 300);
}

TEST(ConicProperties, CrossRatioTransformationInvariance) {
  // Two-term inputs keep every bracket product inside the window, so both
  // sides are the same exactly-known series before the final division.
  FieldScope wide({.truncation_order = 32, .real = false});
  gen::Gen g(42);
  auto num = [&] { return g.with_lead(g.integer(-2, 2), g.coin(), 1); };
  for (int trial = 0; trial < 400; ++trial) {
    HyperNumber m00 = num(), m01 = num(), m10 = num(), m11 = num();
    if ((m00 * m11 - m01 * m10).is_zero()) continue;
    auto map = [&](const PlanarPair& p) { return P(m00 * p.first + m01 * p.second, m10 * p.first + m11 * p.second); };
    PlanarPair a = P(num(), num()), b = P(num(), num()), c = P(num(), num()), d = P(num(), num());
    if (bracket2(a, d).is_zero() || bracket2(b, c).is_zero()) continue;
    ASSERT_EQ(cross_ratio(map(a), map(b), map(c), map(d)), cross_ratio(a, b, c, d));
  }
}

TEST(ConicProperties, CrossRatioShadowStability) {
  gen::Gen g(43);
  for (int trial = 0; trial < 400; ++trial) {
    std::array<PlanarPair, 4> q;
    for (auto& p : q) p = P(g.rational_or_zero(), g.rational_or_zero());
    bool ok = true;
    for (std::size_t i = 0; i < 4 && ok; ++i)
      for (std::size_t j = i + 1; j < 4 && ok; ++j) ok = !bracket2(q[i], q[j]).is_zero();
    if (!ok) continue;
    std::array<PlanarPair, 4> r;
    for (std::size_t k = 0; k < 4; ++k) {
      HyperNumber s = g.appreciable_scale();
      r[k] = P(q[k].first * s + (g.coin() ? g.infinitesimal() : HyperNumber()),
               q[k].second * s + (g.coin() ? g.infinitesimal() : HyperNumber()));
    }
    ASSERT_EQ(cross_ratio_shadow(q[0], q[1], q[2], q[3]), cross_ratio_shadow(r[0], r[1], r[2], r[3]));
  }
}

TEST(ConicProperties, ConicWellDefinedUnderRescaling) {
  gen::Gen g(44);
  for (int trial = 0; trial < 300; ++trial) {
    HyperMatrix m = g.matrix();
    m = m + m.transpose();
    if (m.is_zero()) continue;
    ConicForm c(m);
    ConicForm c2(m.scaled(HyperNumber::monomial(ComplexRational(g.rational()), g.integer(-2, 2)) * g.appreciable()));
    HyperVector p = g.vector3();
    HyperVector p2 = p.scaled(HyperNumber::monomial(ComplexRational(g.rational()), g.integer(-2, 2)) * g.appreciable());
    ASSERT_EQ(conic_contains(c, p), conic_contains(c2, p2));
  }
}

TEST(ConicProperties, HaloIncidence) {
  gen::Gen g(45);
  for (int trial = 0; trial < 300; ++trial) {
    Rational t = g.rational_or_zero(), a = g.rational_or_zero(), b = g.rational_or_zero();
    Rational r = g.rational();
    HyperVector p = circle_point(t, a, b, r);
    HyperMatrix m{{1, 0, HyperNumber(Rational(-a))},
                  {0, 1, HyperNumber(Rational(-b))},
                  {HyperNumber(Rational(-a)), HyperNumber(Rational(-b)), HyperNumber(Rational(a * a + b * b - r * r))}};
    ConicForm c(m.scaled(HyperNumber::monomial(1, g.integer(-2, 2))));
    ASSERT_EQ(conic_value(c, p), HyperNumber());
    HyperVector q = p.scaled(g.appreciable_scale()) + g.tiny3();
    if (!almost_equivalent(p, q)) continue;
    ASSERT_TRUE(conic_contains(c, q));
  }
}

TEST(ConicProperties, CocircularityMatchesFivePointConic) {
  gen::Gen g(46);
  auto [pi, pj] = points_I_J();
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::array<HyperVector, 4> q;
    int kind = trial % 3;
    Rational a = g.rational_or_zero(), b = g.rational_or_zero(), r = g.rational();
    for (auto& p : q) {
      p = kind == 2 ? g.standard_point() : circle_point(g.rational_or_zero(), a, b, r);
      if (kind == 1) p = p + g.tiny3();
    }
    ConicForm c = [&] {
      try {
        return std::optional<ConicForm>(conic_through_five(q[0], q[1], q[2], q[3], pi));
      } catch (const Error&) {
        return std::optional<ConicForm>();
      }
    }().value_or(unit_circle());
    if (classify_matrix(c.matrix()) != MatrixClass::non_singular) continue;
    bool distinct = true;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) distinct = distinct && !almost_equivalent(q[i], q[j]);
    if (!distinct) continue;
    ASSERT_EQ(is_almost_cocircular(q[0], q[1], q[2], q[3]), conic_contains(c, pj));
    if (kind == 0) {
      ASSERT_EQ(cocircularity_bracket(q[0], q[1], q[2], q[3]), HyperNumber());
    }
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(ConicProperties, AlmostAffinePreservesCocircularity) {
  gen::Gen g(47);
  for (int trial = 0; trial < 200; ++trial) {
    HyperNumber cs(g.rational()), sn(g.rational_or_zero());
    HyperMatrix m{{cs + (g.coin() ? g.infinitesimal() : HyperNumber()), sn, HyperNumber(g.rational_or_zero())},
                  {-sn, cs, HyperNumber(g.rational_or_zero())},
                  {g.coin() ? g.infinitesimal() : HyperNumber(), g.coin() ? g.infinitesimal() : HyperNumber(), 1}};
    m = m.scaled(HyperNumber::monomial(1, g.integer(-2, 2)));
    ASSERT_TRUE(is_almost_affine(m));
    std::array<HyperVector, 4> q;
    for (auto& p : q) p = circle_point(g.rational_or_zero()) + g.tiny3();
    ASSERT_TRUE(is_almost_cocircular(q[0], q[1], q[2], q[3]));
    ASSERT_TRUE(is_almost_cocircular(apply_to_point(m, q[0]), apply_to_point(m, q[1]), apply_to_point(m, q[2]),
                                     apply_to_point(m, q[3])));
  }
}

TEST(ConicProperties, FixingIAndJCharacterizesAlmostAffine) {
  gen::Gen g(48);
  auto [pi, pj] = points_I_J();
  int affine = 0;
  for (int trial = 0; trial < 400; ++trial) {
    HyperMatrix m;
    if (g.coin()) {
      HyperNumber cs(g.rational()), sn(g.rational_or_zero());
      m = HyperMatrix{{cs, sn, HyperNumber(g.rational_or_zero())},
                      {-sn, cs, HyperNumber(g.rational_or_zero())},
                      {0, 0, 1}};
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          if (g.integer(0, 3) == 0) m(i, j) = m(i, j) + g.infinitesimal();
      if (classify_matrix(m) != MatrixClass::non_singular) continue;
    } else {
      m = g.non_singular_matrix();
    }
    HyperVector pi2 = pi + g.tiny3(), pj2 = pj + g.tiny3();
    bool fixes = almost_equivalent(apply_to_point(m, pi2), pi) && almost_equivalent(apply_to_point(m, pj2), pj);
    ASSERT_EQ(is_almost_affine(m), fixes) << m.str();
    affine += fixes ? 1 : 0;
  }
  EXPECT_GT(affine, 100);
}
