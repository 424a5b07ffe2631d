#include <gtest/gtest.h>

#include <set>

#include <chyp/transform.hpp>
#include <chyp/verify.hpp>

using namespace chyp;

TEST(Weight, Values) {
  EXPECT_NEAR(mu_weight(cplx(0.3, 2), {0.5, 0.5}), 1, 1e-15);
  EXPECT_NEAR(mu_weight(2.0, {0.6, 0.3}), std::pow(2.0, -0.2), 1e-15);
  ParamsAB p{0.4, 0.7};
  cplx z = std::polar(1e3, 0.7);
  EXPECT_NEAR(mu_weight(z, p) / std::pow(1e3, 4 * p.a - 2), 1, 2e-3);
  EXPECT_THROW(mu_weight(1.0, p), std::domain_error);
}

TEST(Kernel, SymmetriesOnLambda) {
  for (auto& c : check_kernel_symmetry(RunConfig{}, 100)) EXPECT_TRUE(c.pass) << c.id << " " << c.inputs;
  ParamsAB p{0.4, 0.7};
  cplx z(0.3, 0.8);
  cplx K = kernel_K(z, {3, cplx(0, 1.7)}, p);
  EXPECT_LT(std::abs(K.imag()), 1e-12 * std::abs(K));
}

TEST(Kernel, IntegerArgumentSymmetry) {
  ParamsAB p{0.4, 0.7};
  for (cplx z : {cplx(0.3, 0.8), cplx(2.5, -1), cplx(-1.5, 0.4)}) {
    cplx x = kernel_K(z, {2, cplx(5, 0)}, p), y = kernel_K(z, {5, cplx(2, 0)}, p);
    // sigma = 5 is a degenerate point, reached through the eps limit
    EXPECT_LT(rel_residual(x, y), 1e-7) << z;
  }
}

TEST(Kernel, EigenRelations) {
  for (auto& c : check_kernel_eigen(RunConfig{}, 20)) EXPECT_TRUE(c.pass) << c.id << " " << c.inputs;
  for (auto& c : check_kernel_difference(RunConfig{}, 50)) EXPECT_TRUE(c.pass) << c.id << " " << c.inputs;
}

TEST(Kernel, ZeroLambdaIsFiniteAndReal) {
  cplx K = kernel_K(cplx(2, 1), {0, 0.0}, {0.4, 0.7});
  EXPECT_TRUE(std::isfinite(K.real()));
  EXPECT_LT(std::abs(K.imag()), 1e-12 * std::abs(K));
}

TEST(Density, Basics) {
  ParamsAB p{0.4, 0.7};
  EXPECT_EQ(plancherel_density({0, 0.0}, p), 0.0);
  EXPECT_THROW(plancherel_density({0, cplx(0.2, 1)}, p), std::domain_error);
  LambdaPoint l{3, cplx(0, 2.2)};
  EXPECT_NEAR(plancherel_density(l, p), plancherel_density(l.negated(), p), 1e-15);
  // 4 pi^2 kappa ~ |lam|^{4(a+b)-2}
  double prev = 1;
  for (double s : {10.0, 40.0, 160.0}) {
    LambdaPoint m{0, cplx(0, s)};
    double r = 4 * pi * pi * plancherel_density(m, p) / std::pow(std::abs(m.lambda()), 4 * (p.a + p.b) - 2);
    EXPECT_LT(std::abs(r - 1), prev);
    prev = std::abs(r - 1);
  }
  EXPECT_LT(prev, 1e-5);
}

TEST(Discrete, PointAndMass) {
  EXPECT_FALSE(discrete_point({0.4, 0.7}));
  auto dp = discrete_point({-0.2, 0.7});
  ASSERT_TRUE(dp);
  EXPECT_EQ(dp->location.a, cplx(-0.2));
  EXPECT_GT(dp->mass, 0);
  EXPECT_NEAR(dp->mass, -2 * 0.04 / pi * dp->mass_verbatim, 1e-15);
}

TEST(DOperator, ConstantAndSymmetry) {
  ParamsAB p{0.4, 0.7};
  auto one = [](cplx) { return cplx(1); };
  // finite differences at h ~ 2e-3: rounding ~ 1e-16/h^2
  EXPECT_LT(std::abs(apply_D(one, cplx(0.3, 2), p, Variant::holomorphic) + p.a * p.a), 1e-9);
  EXPECT_THROW(apply_D(one, cplx(1e-4, 0), p, Variant::holomorphic), std::domain_error);
  // <D f, g>_mu = <f, Dbar g>_mu for overlapping bumps
  auto bs = standard_bumps();
  auto f = bs[0].as_function(), g = bs[2].as_function();
  PlanarFunction Df = f;
  Df.eval = [&](cplx z) { return apply_D(f.eval, z, p, Variant::holomorphic); };
  cplx lhs = inner_mu(Df, g.eval, p, 64);
  cplx rhs = inner_mu(f, [&](cplx z) { return apply_D(g.eval, z, p, Variant::antiholomorphic); }, p, 64);
  EXPECT_LT(std::abs(lhs - rhs) / std::abs(lhs), 1e-4);
}

TEST(LOperator, EvenInputGivesEvenSum) {
  ParamsAB p{0.4, 0.7};
  SpectralFn F = [](long k, cplx s) { return std::exp(-0.1 * double(k * k) + 0.05 * s * s); };
  for (auto l : {LambdaPoint{2, cplx(0, 1.3)}, LambdaPoint{-1, cplx(0.2, 0.5)}}) {
    auto m = l.negated();
    cplx x = apply_Lfrak(F, l.k, l.sigma, p, Variant::holomorphic) + apply_Lfrak(F, l.k, l.sigma, p, Variant::antiholomorphic);
    cplx y = apply_Lfrak(F, m.k, m.sigma, p, Variant::holomorphic) + apply_Lfrak(F, m.k, m.sigma, p, Variant::antiholomorphic);
    EXPECT_LT(std::abs(x - y), 1e-12 * std::abs(x));
  }
}

TEST(Homographic, GroupStructure) {
  ParamsAB p{0.3, 0.8};
  EXPECT_EQ(homographic_map(1, p).mapped.a, 0.3);
  EXPECT_EQ(homographic_map(2, p).mapped.a, 0.8);
  EXPECT_EQ(homographic_map(2, p).mapped.b, 0.3);
  // orbit of (a,b) under all compositions
  std::set<std::pair<double, double>> seen{{p.a, p.b}};
  std::vector<ParamsAB> todo{p};
  while (!todo.empty()) {
    auto q = todo.back();
    todo.pop_back();
    for (int v = 1; v <= 8; ++v) {
      auto r = homographic_map(v, q).mapped;
      std::pair<double, double> key{std::round(r.a * 1e12) / 1e12, std::round(r.b * 1e12) / 1e12};
      if (seen.insert(key).second) todo.push_back(r);
    }
  }
  EXPECT_EQ(8 % seen.size(), 0u);
  for (auto [a, b] : seen) EXPECT_TRUE((ParamsAB{a, b}.in_Pi_cont()));
}

TEST(Asymptotics, RatesAndGammaRatio) {
  for (auto& c : check_asymptotics(RunConfig{})) EXPECT_TRUE(c.pass) << c.id << " " << c.inputs;
  // the ratio tends to (-1)^k; for even k it tends to 1
  ParamsAB p{0.4, 0.7};
  double e1 = std::abs(beta_as_ratio({20, cplx(0, 10)}, p) - 1.0), e2 = std::abs(beta_as_ratio({40, cplx(0, 20)}, p) - 1.0);
  EXPECT_LT(e2, e1);
  EXPECT_NEAR(e1 / e2, 2, 0.1);
  EXPECT_LT(std::abs(zeta_of(zeta_inverse(cplx(2, 1))) - cplx(2, 1)), 1e-13);
}
