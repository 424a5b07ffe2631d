#include <gtest/gtest.h>

#include <chyp/complex_field.hpp>
#include <chyp/verify.hpp>

using namespace chyp;

namespace {
const cplx I(0, 1);

double rel(cplx x, cplx y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); }
}  // namespace

TEST(Bidegree, RejectsNonIntegerDifference) {
  EXPECT_THROW(Bidegree(0.5, 0.2), std::invalid_argument);
  EXPECT_NO_THROW(Bidegree(cplx(0.5, 1), cplx(-1.5, 1)));
  EXPECT_EQ(Bidegree(cplx(0.5, 1), cplx(-1.5, 1)).index(), 2);
}

TEST(GeneralizedPower, CharacterValues) {
  EXPECT_NEAR(std::abs(generalized_power(5.0, Bidegree(1, 1)) - 25.0), 0, 1e-13);
  EXPECT_LT(std::abs(generalized_power(I, Bidegree(1, 0)) - I), 1e-15);
  EXPECT_LT(std::abs(generalized_power(-2.0, Bidegree(0.5, 0.5)) - 2.0), 1e-15);
  // the negative real axis is taken with arg = pi
  EXPECT_LT(std::abs(generalized_power(-1.0, Bidegree(1, 0)) + 1.0), 1e-15);
}

TEST(Bracket, Values) {
  EXPECT_DOUBLE_EQ(bracket(Bidegree(1, 0)), 0.5);
  EXPECT_DOUBLE_EQ(bracket(Bidegree(0.3, 0.3)), 0.3);
  LambdaPoint l{3, cplx(0, 1.7)};
  EXPECT_NEAR(bracket(l.as_bidegree()), 0, 1e-15);
  // unitary characters have modulus one
  EXPECT_NEAR(std::abs(generalized_power(cplx(2.3, -0.7), l.as_bidegree())), 1, 1e-14);
}

TEST(GammaC, IntegerPairsAndPoles) {
  auto g = gamma_c(Bidegree(1, 0));
  EXPECT_FALSE(g.is_pole());
  EXPECT_EQ(g.num(), I);
  EXPECT_LT(std::abs(gamma_c(Bidegree(0.5, 0.5)).num() - 1.0), 1e-15);
  EXPECT_TRUE(gamma_c(Bidegree(-1, -1)).is_pole());
  EXPECT_TRUE(gamma_c(Bidegree(0, 0)).is_pole());
  EXPECT_TRUE(gamma_c(Bidegree(1, 1)).is_zero());
  // a pole of one factor with the other entry positive is cancelled
  EXPECT_TRUE(gamma_c(Bidegree(0, 1)).finite());
  EXPECT_TRUE(gamma_c(Bidegree(-2, 3)).finite());
  // (k1|k2), k1 >= 1, k2 <= 0: i^{k1-k2} (k1-1)!/(-k2)!
  EXPECT_LT(rel(gamma_c(Bidegree(3, -1)).num(), std::pow(I, 4) * 2.0 / 1.0), 1e-14);
}

TEST(GammaC, IntegerBranchMatchesLimit) {
  // approach (2|-1) along the diagonal direction
  for (double e : {1e-7, -1e-7}) {
    cplx near = gamma_c(Bidegree(2 + e, -1 + e)).num();
    EXPECT_LT(rel(near, gamma_c(Bidegree(2, -1)).num()), 1e-6);
  }
}

TEST(GammaC, SineFormAgrees) {
  Draws d(7, 0);
  for (int t = 0; t < 50; ++t) {
    Bidegree p = d.bideg(-2.5, 2.5, 1.5, 3);
    EXPECT_LT(rel(gamma_c(p).num(), gamma_c_sine_form(p)), 1e-11) << str(p);
  }
}

TEST(GammaC, FunctionalEquations) {
  for (const auto& c : check_gamma(RunConfig{}, 100)) EXPECT_TRUE(c.pass) << c.id << " " << c.residual;
}

TEST(BetaC, ClosedFormsAgree) {
  Bidegree p(0.3, 0.3);
  cplx ref = std::tgamma(0.3) * std::tgamma(0.3) * std::tgamma(0.4) /
             (std::tgamma(0.6) * std::tgamma(0.7) * std::tgamma(0.7));
  EXPECT_LT(rel(beta_c(p, p).num(), ref), 1e-12);
  EXPECT_LT(rel(beta_c_gamma_form(p, p), ref), 1e-12);
  Draws d(8, 0);
  for (int t = 0; t < 30; ++t) {
    Bidegree a = d.bideg(-1.5, 1.5, 1, 2), b = d.bideg(-1.5, 1.5, 1, 2);
    EXPECT_LT(rel(beta_c(a, b).num(), beta_c(b, a).num()), 1e-13);
    EXPECT_LT(rel(beta_c(a, b).num(), beta_c_gamma_form(a, b)), 1e-10) << str(a) << str(b);
  }
}

TEST(BetaC, PoleFromVanishingDenominator) {
  // Gamma^C(1|1) = 0 in the denominator
  EXPECT_TRUE(beta_c(Bidegree(1, 0), Bidegree(0, 1)).is_pole());
}
