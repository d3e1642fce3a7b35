#include "slemma/stp_poly.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "slemma/errors.h"

namespace slemma {
namespace {

using Vec = Eigen::VectorXd;

Vec V(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

GeneralizedPolynomial Poly2(std::vector<std::tuple<double, int, int>> terms) {
  std::vector<SignedMonomial> m;
  for (const auto& [c, a, b] : terms) m.push_back(MakeMonomial(c, {Exponent(a), Exponent(b)}));
  return GeneralizedPolynomial(2, m);
}

// Kronecker product written as nested loops, independent of Stp.
Vec Kron(const Vec& u, const Vec& v) {
  Vec out(u.size() * v.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    for (Eigen::Index j = 0; j < v.size(); ++j) out[i * v.size() + j] = u[i] * v[j];
  }
  return out;
}

TEST(StpTest, Examples) {
  EXPECT_EQ(Stp(V({1, 2}), V({3, 4})), V({3, 4, 6, 8}));
  EXPECT_EQ(Stp(V({1, 0}), V({1, 0})), V({1, 0, 0, 0}));
  EXPECT_EQ(Stp(Stp(V({1, 2}), V({3, 4})), V({5, 6})), Stp(V({1, 2}), Stp(V({3, 4}), V({5, 6}))));
}

TEST(StpTest, PowerExamples) {
  const double x1 = 1.5, x2 = -0.5;
  EXPECT_EQ(StpPower(V({x1, x2}), 2), V({x1 * x1, x1 * x2, x2 * x1, x2 * x2}));
  EXPECT_EQ(StpPower(V({3.0, 4.0}), 0), V({1.0}));
  EXPECT_EQ(StpPower(V({2.0}), 3), V({8.0}));
  EXPECT_THROW(StpPower(V({1.0}), -1), ArgumentError);
}

TEST(StpProperty, AssociativeOnRandomTriples) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> len(1, 4);
  for (int t = 0; t < 100; ++t) {
    Vec a(len(rng)), b(len(rng)), c(len(rng));
    for (auto* v : {&a, &b, &c}) {
      for (Eigen::Index i = 0; i < v->size(); ++i) (*v)[i] = u(rng);
    }
    const Vec l = Stp(Stp(a, b), c);
    const Vec r = Stp(a, Stp(b, c));
    ASSERT_EQ(l.size(), r.size());
    EXPECT_LE((l - r).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((Stp(a, b) - Kron(a, b)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(StpTest, IndexRoundTrip) {
  EXPECT_EQ(StpIndex({0, 1}, 2), 1);
  EXPECT_EQ(StpIndex({1, 0}, 2), 2);
  for (int64_t k = 0; k < 27; ++k) EXPECT_EQ(StpIndex(StpMultiIndex(k, 3, 3), 3), k);
  // The entry of x^m at StpIndex(multi) is the product of the indexed coordinates.
  const Vec x = V({2.0, 3.0, 5.0});
  const Vec x3 = StpPower(x, 3);
  EXPECT_EQ(x3[StpIndex({0, 2, 1}, 3)], 2.0 * 5.0 * 3.0);
}

TEST(CoeffVecTest, SecondSlotIsCrossTerm) {
  CoeffVecPolynomial p(2, 2);
  p.SetCoefficient(2, 1, 1.0);
  const GeneralizedPolynomial g = ToGeneralized(p);
  ASSERT_EQ(g.terms().size(), 1u);
  EXPECT_EQ(g.terms()[0].powers[0], Exponent(1));
  EXPECT_EQ(g.terms()[0].powers[1], Exponent(1));
  EXPECT_EQ(g.terms()[0].coeff, 1.0);
}

TEST(CoeffVecTest, ZeroIsZero) {
  EXPECT_TRUE(ToGeneralized(CoeffVecPolynomial(3, 4)).is_zero());
}

TEST(CoeffVecTest, SlotValidation) {
  CoeffVecPolynomial p(2, 2);
  EXPECT_THROW(p.SetCoefficient(3, 0, 1.0), ArgumentError);
  EXPECT_THROW(p.SetCoefficient(2, 4, 1.0), ArgumentError);
  EXPECT_THROW(p.SetCoefficient(0, 1, 1.0), ArgumentError);
}

CoeffVecPolynomial Example215F() {
  // Sorted multi-indices: x1^6 -> 0, x1^4 x2^2 -> 0b000011, x1^3 x2^3 -> 0b000111,
  // x2^6 -> 0b111111.
  CoeffVecPolynomial p(2, 6);
  p.SetCoefficient(0, 0, -2.0);
  p.SetCoefficient(6, 0, -7.0);
  p.SetCoefficient(6, 3, -2.0);
  p.SetCoefficient(6, 7, -2.0);
  p.SetCoefficient(6, 63, 5.0);
  return p;
}

double Example215FDirect(double x1, double x2) {
  return -7 * std::pow(x1, 6) - 2 * std::pow(x1, 3) * std::pow(x2, 3) + 5 * std::pow(x2, 6) -
         2 * std::pow(x1, 4) * x2 * x2 - 2;
}

TEST(CoeffVecTest, Example215AgreesWithDirectFormula) {
  const CoeffVecPolynomial p = Example215F();
  const GeneralizedPolynomial g = ToGeneralized(p);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng), b = u(rng);
    const double e = Example215FDirect(a, b);
    EXPECT_NEAR(p.Evaluate(V({a, b})), e, 1e-10 * (1 + std::abs(e)));
    EXPECT_NEAR(g(V({a, b})), e, 1e-10 * (1 + std::abs(e)));
  }
}

TEST(CoeffVecProperty, GeneralizedRoundTrip) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uc(-3.0, 3.0), ux(-1.5, 1.5);
  std::uniform_int_distribution<int> pw(0, 3);
  for (int t = 0; t < 30; ++t) {
    std::vector<SignedMonomial> terms;
    for (int k = 0; k < 4; ++k) {
      terms.push_back(MakeMonomial(uc(rng), {Exponent(pw(rng)), Exponent(pw(rng)), Exponent(pw(rng))}));
    }
    const GeneralizedPolynomial g(3, terms);
    const CoeffVecPolynomial c = CoeffVecPolynomial::FromGeneralized(g);
    const GeneralizedPolynomial back = ToGeneralized(c);
    for (int i = 0; i < 100; ++i) {
      const Vec x = V({ux(rng), ux(rng), ux(rng)});
      EXPECT_NEAR(c.Evaluate(x), g(x), 1e-10 * (1 + std::abs(g(x))));
      EXPECT_NEAR(back(x), g(x), 1e-10 * (1 + std::abs(g(x))));
    }
  }
}

TEST(CoeffVecTest, RejectsSignedPowers) {
  SignedMonomial m = MakeMonomial(1.0, {Exponent(3), Exponent(0)});
  m.sign_flags[0] = false;
  EXPECT_THROW(CoeffVecPolynomial::FromGeneralized(GeneralizedPolynomial(2, {m})), ArgumentError);
  EXPECT_THROW(
      CoeffVecPolynomial::FromGeneralized(GeneralizedPolynomial(2, {MakeMonomial(1.0, {Exponent(1, 3), Exponent(0)})})),
      ArgumentError);
}

TEST(HomogenizeTest, Examples) {
  GeneralizedPolynomial x2m1(1, {MakeMonomial(1.0, {Exponent(2)}), MakeMonomial(-1.0, {Exponent(0)})});
  const GeneralizedPolynomial h = Homogenize(x2m1, 2);
  ASSERT_EQ(h.dim(), 2);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng), t = u(rng);
    EXPECT_NEAR(h(V({x, t})), x * x - t * t, 1e-12);
  }
  const GeneralizedPolynomial c = Homogenize(GeneralizedPolynomial::Constant(1, 4.0), 0);
  EXPECT_EQ(c(V({0.3, 0.7})), 4.0);
  EXPECT_THROW(Homogenize(x2m1, 1), ArgumentError);

  const GeneralizedPolynomial f = Homogenize(Example215F(), 6);
  for (int i = 0; i < 50; ++i) {
    const double a = u(rng), b = u(rng), t = u(rng);
    const double e = Example215FDirect(a, b) + 2 - 2 * std::pow(t, 6);
    EXPECT_NEAR(f(V({a, b, t})), e, 1e-10 * (1 + std::abs(e)));
  }
}

TEST(HomogenizeProperty, RestrictionAndDegree) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> uc(-2.0, 2.0), ux(-1.5, 1.5);
  std::uniform_int_distribution<int> pw(0, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::tuple<double, int, int>> terms;
    for (int k = 0; k < 5; ++k) terms.emplace_back(uc(rng), pw(rng), pw(rng));
    const GeneralizedPolynomial p = Poly2(terms);
    if (p.is_zero()) continue;
    const int k = static_cast<int>(p.TotalDegree()) + trial % 2;
    const GeneralizedPolynomial h = Homogenize(p, k);
    const auto deg = HomogeneityDegree(h, Dilation::Trivial(3));
    ASSERT_TRUE(deg.has_value());
    EXPECT_NEAR(*deg, k, 1e-12);
    for (int i = 0; i < 200; ++i) {
      const double a = ux(rng), b = ux(rng);
      EXPECT_NEAR(h(V({a, b, 1.0})), p(V({a, b})), 1e-10 * (1 + std::abs(p(V({a, b})))));
    }
    const CoeffVecPolynomial c = CoeffVecPolynomial::FromGeneralized(p);
    const GeneralizedPolynomial hc = Homogenize(c, k);
    for (int i = 0; i < 50; ++i) {
      const Vec x = V({ux(rng), ux(rng), ux(rng)});
      EXPECT_NEAR(hc(x), h(x), 1e-10 * (1 + std::abs(h(x))));
    }
  }
}

}  // namespace
}  // namespace slemma
