#include "slemma/image_analysis.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "slemma/errors.h"

namespace slemma {
namespace {

using Vec = Eigen::VectorXd;
constexpr double kPi = M_PI;

GeneralizedPolynomial Poly2(std::vector<std::tuple<double, int, int>> terms) {
  std::vector<SignedMonomial> m;
  for (const auto& [c, a, b] : terms) m.push_back(MakeMonomial(c, {Exponent(a), Exponent(b)}));
  return GeneralizedPolynomial(2, m);
}

Vec V2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

GeneralizedPolynomial QuadraticForm(const Eigen::MatrixXd& Q) {
  const int n = static_cast<int>(Q.rows());
  std::vector<SignedMonomial> terms;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      std::vector<Exponent> p(n, Exponent(0));
      p[i] = p[i] + Exponent(1);
      p[j] = p[j] + Exponent(1);
      terms.push_back(MakeMonomial(i == j ? Q(i, i) : 2 * Q(i, j), p));
    }
  }
  return GeneralizedPolynomial(n, terms);
}

struct Pair {
  GeneralizedPolynomial f, g;
};

// Example 2.3 (even cases), Example 2.7 V' pair, Remark 2.2 pair.
Pair SectorPi() { return {Poly2({{1, 4, 0}, {-1, 0, 4}, {-1, 2, 2}}), Poly2({{-1, 4, 0}, {1, 0, 4}})}; }
Pair SectorWide() {
  return {Poly2({{-1, 4, 0}, {1, 0, 4}, {-1, 1, 3}}), Poly2({{1, 4, 0}, {-1, 0, 4}, {1, 3, 1}})};
}
Pair SectorWider() {
  return {Poly2({{1, 6, 0}, {-1, 0, 6}, {20, 5, 1}, {-20, 3, 3}}),
          Poly2({{-1, 6, 0}, {1, 0, 6}, {-10, 1, 5}})};
}
Pair SectorFull() { return {Poly2({{1, 6, 0}, {-1, 0, 6}}), Poly2({{-1, 6, 0}, {1, 0, 6}, {-1, 3, 3}})}; }
Pair Example27() {
  return {Poly2({{-7, 6, 0}, {-2, 3, 3}, {5, 0, 6}, {-2, 4, 2}}),
          Poly2({{-5, 6, 0}, {-1, 3, 3}, {1, 0, 6}, {-1, 4, 2}})};
}
Pair Remark22() {
  return {Poly2({{-1, 3, 0}, {1, 0, 3}}), Poly2({{1, 0, 3}, {-0.5, 3, 0}, {-0.5, 1, 2}})};
}

const Dilation kE2 = Dilation::Trivial(2);

TEST(SampleImageTest, Example23SectorAngles) {
  const ImageSummary a = SampleImage(SectorPi().f, SectorPi().g, kE2);
  EXPECT_EQ(a.classification, ImageClass::kAngularSector);
  EXPECT_NEAR(a.phi, kPi, 0.05);
  const ImageSummary b = SampleImage(SectorWide().f, SectorWide().g, kE2);
  EXPECT_EQ(b.classification, ImageClass::kAngularSector);
  EXPECT_GT(b.phi, kPi);
  EXPECT_LT(b.phi, 1.5 * kPi);
  const ImageSummary c = SampleImage(SectorWider().f, SectorWider().g, kE2);
  EXPECT_GT(c.phi, 1.5 * kPi);
  EXPECT_LT(c.phi, 2 * kPi);
  const ImageSummary d = SampleImage(SectorFull().f, SectorFull().g, kE2);
  EXPECT_EQ(d.classification, ImageClass::kFullPlane);
  EXPECT_EQ(d.phi, 2 * kPi);
}

TEST(SampleImageTest, Example23PointsLieInImage) {
  // Image points quoted for the wider sector: their directions must be covered.
  const Pair p = SectorWider();
  const ImageSummary s = SampleImage(p.f, p.g, kE2);
  DirectionCover c;
  for (const auto& a : s.arcs) c.AddArc(a.start, a.length);
  c.Finalize(1e-12);
  const std::vector<std::tuple<double, double, double, double>> quoted = {
      {0, 1, -1, 1}, {2, 3, -3065, -4195}, {2, 1, 543, -83}};
  for (const auto& [x, y, fu, gu] : quoted) {
    EXPECT_EQ(p.f(V2(x, y)), fu);
    EXPECT_EQ(p.g(V2(x, y)), gu);
    EXPECT_TRUE(c.Contains(std::atan2(gu, fu), s.resolution)) << x << "," << y;
  }
  // The quoted pair (133969, 419831) is a direction of the image.
  EXPECT_TRUE(c.Contains(std::atan2(419831.0, 133969.0), s.resolution));
}

TEST(SampleImageTest, OddCases) {
  const auto x3 = Poly2({{1, 3, 0}});
  const auto y3 = Poly2({{1, 0, 3}});
  EXPECT_EQ(SampleImage(x3, y3, kE2).classification, ImageClass::kFullPlane);
  GeneralizedPolynomial c1(1, {MakeMonomial(1.0, {Exponent(3)})});
  const ImageSummary line = SampleImage(c1, c1, Dilation::Trivial(1));
  EXPECT_EQ(line.classification, ImageClass::kLineThroughOrigin);
  EXPECT_EQ(SampleImage(x3, x3, kE2).classification, ImageClass::kLineThroughOrigin);
}

TEST(SampleImageTest, Example27SectorBelowPi) {
  const ImageSummary s = SampleImage(Example27().f, Example27().g, kE2);
  EXPECT_EQ(s.classification, ImageClass::kAngularSector);
  EXPECT_LT(s.phi, kPi);
}

TEST(SampleImageTest, ConstantPairIsSingleton) {
  const auto c = GeneralizedPolynomial::Constant(2, 1.0);
  EXPECT_EQ(SampleImage(c, c * 2.0, kE2).classification, ImageClass::kSingleton);
  EXPECT_THROW(SampleImage(GeneralizedPolynomial(2), GeneralizedPolynomial(2), kE2),
               DegenerateError);
}

TEST(SampleImageTest, Remark22BoundarySlopes) {
  const ImageSummary s = SampleImage(Remark22().f, Remark22().g, kE2);
  EXPECT_EQ(s.classification, ImageClass::kIrregular);
  std::vector<double> ends;
  for (const auto& a : s.arcs) {
    ends.push_back(WrapAngle(a.start));
    ends.push_back(WrapAngle(a.end()));
  }
  for (double slope : {0.5, 7.0 / 6.0}) {
    const double ang = std::atan(slope);
    for (double target : {ang, ang - kPi}) {
      double best = 10.0;
      for (double e : ends) best = std::min(best, std::abs(WrapAngle(e - target)));
      EXPECT_LT(best, 0.02) << "slope " << slope;
    }
  }
}

TEST(SampleImageProperty, PhiPlusGapIsFullTurn) {
  for (const Pair& p : {SectorPi(), SectorWide(), SectorWider(), SectorFull(), Example27()}) {
    const ImageSummary s = SampleImage(p.f, p.g, kE2);
    EXPECT_NEAR(s.phi + s.largest_gap, 2 * kPi, 3 * s.resolution);
  }
}

TEST(SampleImageProperty, PhiInvariantUnderPositiveScaling) {
  for (const Pair& p : {SectorPi(), SectorWide(), SectorWider(), Example27()}) {
    const ImageSummary s = SampleImage(p.f, p.g, kE2);
    for (double c : {1e-3, 0.5, 7.0, 1e4}) {
      const ImageSummary t = SampleImage(c * p.f, c * p.g, kE2);
      EXPECT_NEAR(t.phi, s.phi, 2 * s.resolution);
    }
  }
}

TEST(SampleImageProperty, RayClosure) {
  const Pair p = SectorWide();
  const ImageSummary s = SampleImage(p.f, p.g, kE2);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ut(0.01, 100.0);
  for (std::size_t i = 0; i < s.samples.size(); i += 37) {
    const auto& sm = s.samples[i];
    if (std::hypot(sm.f, sm.g) < 1e-12) continue;
    const double t = ut(rng);
    // t u is attained at the dilated point eps^r x with eps^k = t.
    const Vec x = kE2.Scale(std::pow(t, 1.0 / s.degree), sm.point.coords);
    EXPECT_NEAR(std::atan2(p.g(x), p.f(x)), std::atan2(sm.g, sm.f), 1e-9);
    EXPECT_NEAR(p.f(x), t * sm.f, 1e-9 * (1 + std::abs(t * sm.f)));
  }
}

TEST(SampleImageProperty, ParityTaxonomy) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int even_checked = 0, odd_checked = 0;
  for (int t = 0; t < 40; ++t) {
    const bool odd = t % 2;
    const int k = odd ? 3 : 4;
    std::vector<std::tuple<double, int, int>> tf, tg;
    for (int a = 0; a <= k; ++a) {
      tf.emplace_back(u(rng), a, k - a);
      tg.emplace_back(u(rng), a, k - a);
    }
    const auto f = Poly2(tf), g = Poly2(tg);
    const ZeroMargin z = ComputeZeroMargin(f, g, kE2, 1e-6);
    if (!z.refined) continue;
    const ImageClass c = SampleImage(f, g, kE2).classification;
    if (odd) {
      ++odd_checked;
      EXPECT_TRUE(c == ImageClass::kLineThroughOrigin || c == ImageClass::kFullPlane);
    } else {
      ++even_checked;
      EXPECT_TRUE(c == ImageClass::kAngularSector || c == ImageClass::kFullPlane);
    }
  }
  EXPECT_GE(even_checked, 5);
  EXPECT_GE(odd_checked, 5);
}

// Dense brute-force minimum of max(|f|, |g|) on the unit circle.
double BruteMargin(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g, int n) {
  double m = 1e300;
  for (int i = 0; i < n; ++i) {
    const double t = 2 * kPi * i / n;
    const Vec x = V2(std::cos(t), std::sin(t));
    m = std::min(m, std::max(std::abs(f(x)), std::abs(g(x))));
  }
  return m;
}

TEST(ZeroMarginTest, Remark22HasCommonZero) {
  const ZeroMargin z = ComputeZeroMargin(Remark22().f, Remark22().g, kE2, 1e-8);
  EXPECT_LT(z.margin, 1e-6);
  EXPECT_FALSE(z.refined);
  const Vec w = z.witness.coords;
  const Vec d = V2(1, 1) / std::sqrt(2.0);
  EXPECT_LT(std::min((w - d).norm(), (w + d).norm()), 1e-3);
}

TEST(ZeroMarginTest, OneDimensional) {
  GeneralizedPolynomial x2(1, {MakeMonomial(1.0, {Exponent(2)})});
  const ZeroMargin z = ComputeZeroMargin(x2, x2, Dilation::Trivial(1), 1e-8);
  EXPECT_EQ(z.margin, 1.0);
  EXPECT_TRUE(z.refined);
}

TEST(ZeroMarginTest, Example27RefinedAgainstBruteForce) {
  const Pair p = Example27();
  const ZeroMargin z = ComputeZeroMargin(p.f, p.g, kE2, 1e-8);
  EXPECT_TRUE(z.refined);
  EXPECT_NEAR(z.margin, BruteMargin(p.f, p.g, 4096), 1e-12);
  // The dense minimum sits at a kink of max(|f|, |g|), so the grid value can
  // only overshoot it, by at most a Lipschitz constant times half a step.
  const double brute = BruteMargin(p.f, p.g, 400000);
  EXPECT_GT(brute, 0.25);
  EXPECT_GE(z.margin, brute);
  EXPECT_LE(z.margin - brute, 60.0 * M_PI / 4096);
  EXPECT_GT(z.lower_bound, 0.0);
  EXPECT_LE(z.lower_bound, brute + 1e-12);
}

TEST(ZeroMarginTest, FractionalPairUnderDilation) {
  const Dilation d({3.0, 1.0});
  std::vector<SignedMonomial> a = {MakeMonomial(16, {Exponent(4, 3), Exponent(0)}),
                                   MakeMonomial(-8, {Exponent(2, 3), Exponent(2)}),
                                   MakeMonomial(-8, {Exponent(0), Exponent(4)})};
  std::vector<SignedMonomial> b = {MakeMonomial(8, {Exponent(4, 3), Exponent(0)}),
                                   MakeMonomial(4, {Exponent(2, 3), Exponent(2)}),
                                   MakeMonomial(-16, {Exponent(0), Exponent(4)})};
  const ZeroMargin z = ComputeZeroMargin(GeneralizedPolynomial(2, a), GeneralizedPolynomial(2, b), d, 1e-8);
  EXPECT_TRUE(z.refined);
  EXPECT_GT(z.margin, 0.0);
}

TEST(MixingCurveTest, OddCentralSymmetry) {
  const auto f = Poly2({{1, 3, 0}, {-2, 1, 2}});
  const auto g = Poly2({{1, 0, 3}, {0.5, 2, 1}});
  const int steps = 64;
  const auto c = MixingCurve(f, g, kE2, V2(0.3, -1.2), V2(0.9, 0.4), steps);
  ASSERT_EQ(static_cast<int>(c.size()), steps + 1);
  for (int j = 0; j < steps / 2; ++j) {
    EXPECT_NEAR(c[j + steps / 2].f, -c[j].f, 1e-9);
    EXPECT_NEAR(c[j + steps / 2].g, -c[j].g, 1e-9);
  }
  EXPECT_NEAR(c.front().f, c.back().f, 1e-12);
  EXPECT_NEAR(c.front().g, c.back().g, 1e-12);
}

TEST(MixingCurveTest, EqualEndpointsStayOnOneLine) {
  const Pair p = SectorWide();
  const Vec z = V2(0.7, -0.2);
  const double ang = std::atan2(p.g(z), p.f(z));
  for (const auto& c : MixingCurve(p.f, p.g, kE2, z, z, 64)) {
    if (std::hypot(c.f, c.g) < 1e-12) continue;
    EXPECT_NEAR(std::abs(std::sin(std::atan2(c.g, c.f) - ang)), 0.0, 1e-9);
  }
}

TEST(MixingCurveTest, CubesReachAllQuadrants) {
  const auto c = MixingCurve(Poly2({{1, 3, 0}}), Poly2({{1, 0, 3}}), kE2, V2(1, 0), V2(0, 1), 64);
  bool q[4] = {false, false, false, false};
  for (const auto& p : c) {
    if (p.f > 0 && p.g > 0) q[0] = true;
    if (p.f < 0 && p.g > 0) q[1] = true;
    if (p.f < 0 && p.g < 0) q[2] = true;
    if (p.f > 0 && p.g < 0) q[3] = true;
    EXPECT_NEAR(p.f, std::pow(std::cos(p.theta), 3), 1e-12);
  }
  EXPECT_TRUE(q[0] && q[1] && q[2] && q[3]);
}

TEST(ConvexityProbeTest, Remark22Midpoint) {
  const Pair p = Remark22();
  ConvexityProbeOptions o;
  o.candidate_pairs.push_back({Eigen::Vector2d(1, 1), Eigen::Vector2d(-1, -0.5)});
  // (1, 1) and (-1, -1/2) are attained.
  EXPECT_EQ(p.f(V2(0, 1)), 1.0);
  EXPECT_EQ(p.g(V2(0, 1)), 1.0);
  EXPECT_EQ(p.f(V2(1, 0)), -1.0);
  EXPECT_EQ(p.g(V2(1, 0)), -0.5);
  const auto v = ConvexityProbe(p.f, p.g, kE2, 0, o);
  bool found = false;
  for (const auto& x : v) {
    if ((x.midpoint - Eigen::Vector2d(0, 0.25)).norm() < 1e-12) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(ConvexityProbeTest, EqualFunctionsHaveNoViolation) {
  const Pair p = SectorWide();
  EXPECT_TRUE(ConvexityProbe(p.f, p.f, kE2, 300).empty());
}

// Dines: the joint image of two quadratic forms is convex.
TEST(ConvexityProbeProperty, RandomQuadraticFormsAreConvex) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> N(0.0, 1.0);
  int tested = 0;
  for (int t = 0; tested < 50 && t < 400; ++t) {
    const int n = 2 + t % 3;
    Eigen::MatrixXd A(n, n), B(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        A(i, j) = N(rng);
        B(i, j) = N(rng);
      }
    }
    const auto f = QuadraticForm((A + A.transpose()) / 2);
    const auto g = QuadraticForm((B + B.transpose()) / 2);
    const Dilation d = Dilation::Trivial(n);
    SamplingOptions s;
    s.count = n == 2 ? 0 : 4096;
    const ZeroMargin z = ComputeZeroMargin(f, g, d, 1e-8, s);
    if (z.margin < 1e-2) continue;
    ConvexityProbeOptions o;
    o.sampling = s;
    EXPECT_TRUE(ConvexityProbe(f, g, d, 200, o).empty()) << "n = " << n;
    ++tested;
  }
  EXPECT_EQ(tested, 50);
}

TEST(AffineCoverTest, ShiftedSquaresCoverExpectedDirections) {
  // (x^2 + 1, x^2): the image is the ray {(1 + s, s) : s >= 0}.
  GeneralizedPolynomial x2(1, {MakeMonomial(1.0, {Exponent(2)})});
  const auto one = GeneralizedPolynomial::Constant(1, 1.0);
  const DirectionCover c = AffineImageCover(x2 + one, x2);
  EXPECT_TRUE(c.Contains(0.0, 1e-9));
  EXPECT_TRUE(c.Contains(kPi / 4 - 1e-3, 1e-6));
  EXPECT_FALSE(c.Contains(kPi / 4 + 0.05, 1e-6));
  EXPECT_FALSE(c.Contains(-0.05, 1e-6));
}

}  // namespace
}  // namespace slemma
