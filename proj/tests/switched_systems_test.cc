#include "slemma/switched_systems.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "slemma/errors.h"

namespace slemma {
namespace {

using Vec = Eigen::VectorXd;

GeneralizedPolynomial Poly2(std::vector<std::tuple<double, int, int>> terms) {
  std::vector<SignedMonomial> m;
  for (const auto& [c, a, b] : terms) m.push_back(MakeMonomial(c, {Exponent(a), Exponent(b)}));
  return GeneralizedPolynomial(2, m);
}

GeneralizedPolynomial Mono2(double c, Exponent a, Exponent b) {
  return GeneralizedPolynomial(2, {MakeMonomial(c, {a, b})});
}

Vec V2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

const Dilation kE2 = Dilation::Trivial(2);
const Dilation kE31({3.0, 1.0});

SwitchedSystem System27() {
  return SwitchedSystem(2, {{Poly2({{7, 3, 0}, {-3, 0, 3}, {2, 1, 2}}), Poly2({{5, 3, 0}, {-5, 0, 3}})},
                            {Poly2({{-5, 3, 0}, {-1, 1, 2}}), Poly2({{-1, 3, 0}, {1, 0, 3}})}});
}
GeneralizedPolynomial V27() { return Poly2({{0.25, 4, 0}, {0.25, 0, 4}}); }

SwitchedSystem System29() {
  const Exponent z(0), one(1);
  return SwitchedSystem(
      2, {{Mono2(-4, one, z), Mono2(4, Exponent(2, 3), one) + Mono2(4, z, Exponent(3))},
          {Mono2(2, one, z) + Mono2(1, Exponent(1, 3), Exponent(2)), Mono2(-8, z, Exponent(3))}});
}
GeneralizedPolynomial V29() {
  return Mono2(3, Exponent(4, 3), Exponent(0)) + Mono2(1, Exponent(0), Exponent(2));
}

SwitchedSystem System212() {
  const double s = std::sqrt(3.0);
  return SwitchedSystem(2, {{Poly2({{1, 1, 0}}), Poly2({{-1, 0, 1}})},
                            {Poly2({{-s, 1, 0}, {-1, 0, 1}}), Poly2({{-1, 1, 0}, {s, 0, 1}})},
                            {Poly2({{-s, 1, 0}, {1, 0, 1}}), Poly2({{1, 1, 0}, {s, 0, 1}})}});
}
GeneralizedPolynomial HalfNorm2() { return Poly2({{0.5, 2, 0}, {0.5, 0, 2}}); }

GeneralizedPolynomial X1(double c, int p) {
  return GeneralizedPolynomial(1, {MakeMonomial(c, {Exponent(p)})});
}

void ExpectSamePoly(const GeneralizedPolynomial& a, const GeneralizedPolynomial& b, int seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    Vec x(a.dim());
    for (int j = 0; j < a.dim(); ++j) x[j] = u(rng);
    EXPECT_NEAR(a(x), b(x), 1e-10 * (1 + std::abs(b(x))));
  }
}

TEST(DerivativeAlongTest, Examples) {
  ExpectSamePoly(DerivativeAlong(V27(), System27().field(0)),
                 Poly2({{7, 6, 0}, {2, 3, 3}, {-5, 0, 6}, {2, 4, 2}}), 1);
  const GeneralizedPolynomial d29 = DerivativeAlong(V29(), System29().field(0));
  const GeneralizedPolynomial e29 = Mono2(-16, Exponent(4, 3), Exponent(0)) +
                                    Mono2(8, Exponent(2, 3), Exponent(2)) +
                                    Mono2(8, Exponent(0), Exponent(4));
  ExpectSamePoly(d29, e29, 2);
  EXPECT_NEAR(d29(V2(1, 1)), 0.0, 1e-12);
  ExpectSamePoly(DerivativeAlong(X1(0.5, 2), {X1(-1, 1)}), X1(-1, 2), 3);
}

TEST(DerivativeAlongTest, RejectsNonSmoothTerms) {
  const GeneralizedPolynomial cube_root(1, {MakeMonomial(1.0, {Exponent(1, 3)})});
  EXPECT_THROW(DerivativeAlong(cube_root, {X1(1, 1)}), DifferentiationError);
}

TEST(SwitchedSystemTest, Validation) {
  EXPECT_THROW(SwitchedSystem(2, {{Poly2({{1, 1, 0}}), Poly2({{1, 0, 1}})}}), ArgumentError);
  EXPECT_THROW(SwitchedSystem(2, {{Poly2({{1, 1, 0}})}, {Poly2({{1, 1, 0}})}}), ArgumentError);
  EXPECT_THROW(ConvexCombination({0.5, 0.6}), ArgumentError);
  EXPECT_THROW(ConvexCombination({1.5, -0.5}), ArgumentError);
  EXPECT_NO_THROW(ConvexCombination({0.25, 0.75}));
}

TEST(LfhdCandidateTest, RejectsMismatchedDegrees) {
  const SwitchedSystem sys(2, {{Poly2({{-1, 1, 0}}), Poly2({{-1, 0, 1}})},
                               {Poly2({{-1, 3, 0}}), Poly2({{-1, 0, 3}})}});
  EXPECT_THROW(LfhdCandidate::Create(sys, HalfNorm2(), kE2), ArgumentError);
}

TEST(CheckLfhdTest, Examples) {
  const LfhdReport a = CheckLfhd(System27(), LfhdCandidate::Create(System27(), V27(), kE2));
  EXPECT_TRUE(a.positive_definite);
  EXPECT_TRUE(a.covered);
  EXPECT_TRUE(a.uncovered.empty());
  // Neither subsystem is stable on its own.
  EXPECT_TRUE(a.positive_direction[0].has_value());
  EXPECT_TRUE(a.positive_direction[1].has_value());

  const LfhdReport b = CheckLfhd(System29(), LfhdCandidate::Create(System29(), V29(), kE31));
  EXPECT_TRUE(b.covered);

  const LfhdReport c =
      CheckLfhd(System212(), LfhdCandidate::Create(System212(), HalfNorm2(), kE2));
  EXPECT_TRUE(c.covered);

  const SwitchedSystem up(1, {{X1(1, 1)}, {X1(1, 1)}});
  const LfhdReport d = CheckLfhd(up, LfhdCandidate::Create(up, X1(0.5, 2), Dilation::Trivial(1)));
  EXPECT_FALSE(d.covered);
  EXPECT_EQ(d.uncovered.size(), static_cast<std::size_t>(d.sample_count));
}

TEST(CheckLfhdProperty, RegionsMatchDirectMinimum) {
  const SwitchedSystem sys = System27();
  const LfhdCandidate cand = LfhdCandidate::Create(sys, V27(), kE2);
  const LfhdReport r = CheckLfhd(sys, cand);
  ASSERT_EQ(static_cast<int>(r.regions.size()), r.sample_count);
  double f0 = 0.0, f1 = 0.0;
  for (const RegionSample& s : r.regions) {
    const double d0 = cand.derivative(0)(s.point.coords);
    const double d1 = cand.derivative(1)(s.point.coords);
    EXPECT_DOUBLE_EQ(s.min_derivative, std::min(d0, d1));
    EXPECT_EQ(s.argmin, d1 < d0 ? 1 : 0);
    f0 += d0 < -r.threshold;
    f1 += d1 < -r.threshold;
  }
  EXPECT_NEAR(r.stable_fraction[0], f0 / r.sample_count, 1e-12);
  EXPECT_NEAR(r.stable_fraction[1], f1 / r.sample_count, 1e-12);
}

TEST(SynthesizeTest, Example29InsidePaperRange) {
  const SynthesisOutcome o =
      SynthesizeCombinationN2(System29(), LfhdCandidate::Create(System29(), V29(), kE31));
  ASSERT_TRUE(std::holds_alternative<CombinationSynthesis>(o));
  const double l1 = std::get<CombinationSynthesis>(o).combination[0];
  EXPECT_GT(l1, 5.0 / 11.0);
  EXPECT_LT(l1, 7.0 / 13.0);
}

TEST(SynthesizeTest, Example27) {
  const SwitchedSystem sys = System27();
  const LfhdCandidate cand = LfhdCandidate::Create(sys, V27(), kE2);
  const SynthesisOutcome o = SynthesizeCombinationN2(sys, cand);
  ASSERT_TRUE(std::holds_alternative<CombinationSynthesis>(o));
  const auto& s = std::get<CombinationSynthesis>(o);
  EXPECT_GT(s.combination[0], 0.2);
  EXPECT_LT(s.combination[0], 37.0 / 93.0);
  EXPECT_LT(s.verified_max_derivative, -s.threshold);
  // xi = 2 gives lambda = (1/3, 2/3) and V' = -(x^6 + y^6).
  const VectorField f = CombinedField(sys, ConvexCombination({1.0 / 3, 2.0 / 3}));
  ExpectSamePoly(DerivativeAlong(V27(), f), Poly2({{-1, 6, 0}, {-1, 0, 6}}), 4);
}

TEST(SynthesizeTest, IdenticalStableSubsystems) {
  const SwitchedSystem sys(2, {{Poly2({{-1, 1, 0}}), Poly2({{-1, 0, 1}})},
                               {Poly2({{-1, 1, 0}}), Poly2({{-1, 0, 1}})}});
  const SynthesisOutcome o = SynthesizeCombinationN2(sys, LfhdCandidate::Create(sys, HalfNorm2(), kE2));
  ASSERT_TRUE(std::holds_alternative<CombinationSynthesis>(o));
  const auto& s = std::get<CombinationSynthesis>(o);
  EXPECT_NEAR(s.combination[0], 1.0 / (1.0 + s.certificate.xi), 1e-15);
}

TEST(SynthesizeTest, ThreeSubsystemsRejected) {
  EXPECT_THROW(
      SynthesizeCombinationN2(System212(), LfhdCandidate::Create(System212(), HalfNorm2(), kE2)),
      ArgumentError);
}

TEST(ScanTest, Example27Interval) {
  const SwitchedSystem sys = System27();
  const ScanResult r = ScanCombinations(sys, LfhdCandidate::Create(sys, V27(), kE2), 0.01);
  ASSERT_TRUE(r.interval.has_value());
  EXPECT_LE(r.interval->first, 0.21 + 1e-12);
  EXPECT_GE(r.interval->second, 0.39 - 1e-12);
  EXPECT_EQ(r.grid.size(), 101u);
}

TEST(ScanTest, Example29Interval) {
  const SwitchedSystem sys = System29();
  const ScanResult r = ScanCombinations(sys, LfhdCandidate::Create(sys, V29(), kE31), 0.01);
  ASSERT_TRUE(r.interval.has_value());
  EXPECT_LE(r.interval->first, 0.46 + 1e-12);
  EXPECT_GE(r.interval->second, 0.53 - 1e-12);
}

TEST(ScanTest, Example212Empty) {
  const SwitchedSystem sys = System212();
  const ScanResult r = ScanCombinations(sys, LfhdCandidate::Create(sys, HalfNorm2(), kE2), 0.01);
  EXPECT_EQ(r.grid.size(), 5151u);
  EXPECT_TRUE(r.feasible.empty());
  EXPECT_FALSE(r.interval.has_value());
}

TEST(EigencheckTest, Examples) {
  const std::vector<Eigen::MatrixXd> A = LinearMatrices(System212());
  ASSERT_EQ(A.size(), 3u);
  EXPECT_EQ(A[0], Eigen::Vector2d(1, -1).asDiagonal().toDenseMatrix());
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2, 2);
  const double s = std::sqrt(3.0);
  const ConvexCombination star({2 * s / (2 * s + 2), 1 / (2 * s + 2), 1 / (2 * s + 2)});
  EXPECT_NEAR(LinearCombinationEigencheck(A, star, I), 0.0, 1e-9);
  EXPECT_NEAR(LinearCombinationEigencheck(A, ConvexCombination({1, 0, 0}), I), 1.0, 1e-12);
  const std::vector<Eigen::MatrixXd> neg = {-I, -I};
  EXPECT_NEAR(LinearCombinationEigencheck(neg, ConvexCombination({0.3, 0.7}), I), -1.0, 1e-12);
  EXPECT_THROW(LinearCombinationEigencheck({I, Eigen::MatrixXd::Identity(3, 3)},
                                           ConvexCombination({0.5, 0.5}), I),
               ArgumentError);
  EXPECT_TRUE(QuadraticFormMatrix(HalfNorm2()).isApprox(I));
  EXPECT_THROW(LinearMatrices(System27()), ArgumentError);
}

// Every convex combination of the three matrices has max eigenvalue >= 0.
TEST(EigencheckProperty, NoStableCombinationOnSimplex) {
  const std::vector<Eigen::MatrixXd> A = LinearMatrices(System212());
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2, 2);
  std::mt19937_64 rng(8);
  std::gamma_distribution<double> G(1.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    const double a = G(rng), b = G(rng), c = G(rng);
    EXPECT_GE(LinearCombinationEigencheck(A, ConvexCombination({a / (a + b + c), b / (a + b + c),
                                                                 c / (a + b + c)}),
                                          I),
              -1e-12);
  }
}

TEST(SimulateTest, Example27Descends) {
  const SwitchedSystem sys = System27();
  const LfhdCandidate cand = LfhdCandidate::Create(sys, V27(), kE2);
  SimulationOptions o;
  o.dt = 1e-3;
  o.t_end = 10.0;
  o.dwell = 1e-2;
  const Trajectory tr = SimulateMinSwitching(sys, cand, V2(1, 1), o);
  EXPECT_LT(tr.points.back().V, tr.points.front().V);
  EXPECT_NEAR(tr.points.back().t, 10.0, 1e-9);
  EXPECT_GT(tr.switches, 0);
}

TEST(SimulateTest, OriginIsEquilibrium) {
  const SwitchedSystem sys = System27();
  const Trajectory tr = SimulateMinSwitching(sys, LfhdCandidate::Create(sys, V27(), kE2), V2(0, 0));
  for (const auto& p : tr.points) EXPECT_EQ(p.x.norm(), 0.0);
}

TEST(SimulateTest, ExponentialDecay) {
  const SwitchedSystem sys(1, {{X1(-1, 1)}, {X1(-1, 1)}});
  const LfhdCandidate cand = LfhdCandidate::Create(sys, X1(0.5, 2), Dilation::Trivial(1));
  SimulationOptions o;
  o.t_end = 3.0;
  Vec x0(1);
  x0 << 1.0;
  const Trajectory tr = SimulateMinSwitching(sys, cand, x0, o);
  for (const auto& p : tr.points) {
    EXPECT_NEAR(p.x[0], std::exp(-p.t), 1e-6);
    EXPECT_EQ(p.sigma, 0);
  }
  EXPECT_EQ(tr.switches, 0);
}

TEST(SimulateTest, DivergenceThrows) {
  const SwitchedSystem sys(1, {{X1(1, 1)}, {X1(2, 1)}});
  const LfhdCandidate cand = LfhdCandidate::Create(sys, X1(0.5, 2), Dilation::Trivial(1));
  SimulationOptions o;
  o.t_end = 50.0;
  Vec x0(1);
  x0 << 1.0;
  EXPECT_THROW(SimulateMinSwitching(sys, cand, x0, o), DivergenceError);
}

TEST(SimulateProperty, DescentFromRandomStates) {
  const SwitchedSystem sys = System27();
  const LfhdCandidate cand = LfhdCandidate::Create(sys, V27(), kE2);
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  SimulationOptions o;
  o.t_end = 2.0;
  for (int t = 0; t < 20; ++t) {
    const Vec x0 = V2(u(rng), u(rng));
    o.dwell = 1e-2;
    const Trajectory held = SimulateMinSwitching(sys, cand, x0, o);
    EXPECT_LT(held.points.back().V, held.points.front().V);
    // Re-selecting every step, V rises by at most O(dt^2) per step.
    o.dwell = o.dt;
    const Trajectory tr = SimulateMinSwitching(sys, cand, x0, o);
    EXPECT_LT(tr.points.back().V, tr.points.front().V);
    for (std::size_t i = 1; i < tr.points.size(); ++i) {
      EXPECT_LE(tr.points[i].V, tr.points[i - 1].V + 10 * o.dt * o.dt * (1 + tr.points[0].V));
    }
  }
}

TEST(SwitchedProperty, DerivativeLinearInLambda) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0), ux(-2.0, 2.0);
  struct Case {
    SwitchedSystem sys;
    GeneralizedPolynomial V;
  };
  for (const Case& c : {Case{System27(), V27()}, Case{System29(), V29()}}) {
    for (int t = 0; t < 10; ++t) {
      const double l = u(rng);
      const ConvexCombination lam({l, 1 - l});
      const GeneralizedPolynomial lhs = DerivativeAlong(c.V, CombinedField(c.sys, lam));
      const GeneralizedPolynomial d0 = DerivativeAlong(c.V, c.sys.field(0));
      const GeneralizedPolynomial d1 = DerivativeAlong(c.V, c.sys.field(1));
      for (int i = 0; i < 50; ++i) {
        const Vec x = V2(ux(rng), ux(rng));
        const double rhs = l * d0(x) + (1 - l) * d1(x);
        EXPECT_NEAR(lhs(x), rhs, 1e-10 * (1 + std::abs(rhs)));
      }
    }
  }
}

TEST(SwitchedProperty, SynthesisSoundAndInsideScan) {
  struct Case {
    SwitchedSystem sys;
    GeneralizedPolynomial V;
    Dilation d;
  };
  for (const Case& c : {Case{System27(), V27(), kE2}, Case{System29(), V29(), kE31}}) {
    const LfhdCandidate cand = LfhdCandidate::Create(c.sys, c.V, c.d);
    const SynthesisOutcome o = SynthesizeCombinationN2(c.sys, cand);
    ASSERT_TRUE(std::holds_alternative<CombinationSynthesis>(o));
    const ConvexCombination lam = std::get<CombinationSynthesis>(o).combination;
    LfhdOptions fresh;
    fresh.sampling.scheme = SamplingScheme::kHalton;
    fresh.sampling.count = 20000;
    fresh.sampling.seed = 4242;
    EXPECT_TRUE(CombinationFeasible(c.sys, cand, lam, fresh));
    const ScanResult r = ScanCombinations(c.sys, cand, 0.01);
    ASSERT_TRUE(r.interval.has_value());
    EXPECT_GE(lam[0], r.interval->first - 0.01);
    EXPECT_LE(lam[0], r.interval->second + 0.01);
  }
}

}  // namespace
}  // namespace slemma
