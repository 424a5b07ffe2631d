#include <gtest/gtest.h>

#include <chyp/hyp2f1_c.hpp>
#include <chyp/verify.hpp>

using namespace chyp;

namespace {
HypParamsC generic() {
  return {Bidegree(cplx(0.3, 0.2), cplx(-0.7, 0.2)), Bidegree(cplx(0.55, -0.1), cplx(0.55, -0.1)),
          Bidegree(cplx(1.45, 0.3), cplx(2.45, 0.3))};
}
}  // namespace

TEST(F21C, TrivialUpperIndex) {
  HypParamsC p{Bidegree(0, 0), Bidegree(0.4, 0.4), Bidegree(1.3, 1.3)};
  for (cplx z : {cplx(0.3, 0.1), cplx(2, -1), cplx(-4, 0.5)}) EXPECT_LT(std::abs(f21c(p, z) - 1.0), 1e-13);
  EXPECT_LT(std::abs(f21c_regularized(p, cplx(0.3, 0.4)) * gamma_c(p.c).num() - 1.0), 1e-13);
  EXPECT_EQ(f21c_dz(p, cplx(0.3, 0.4)), cplx(0));
  EXPECT_EQ(f21c_dzbar(p, cplx(0.3, 0.4)), cplx(0));
}

TEST(F21C, ExpansionsAgreeOnOverlaps) {
  for (auto& c : check_expansions(RunConfig{}, 100)) EXPECT_TRUE(c.pass) << c.inputs << " " << c.residual;
  auto p = generic();
  cplx z(0.9, 0.9);
  EXPECT_LT(rel_residual(f21c_expansion(p, z, Expansion::at_one).value, f21c_expansion(p, z, Expansion::at_infinity).value), 1e-8);
}

TEST(F21C, Kummer) {
  auto p = generic();
  cplx z(3, 2);
  EXPECT_LT(rel_residual(*kummer_u(3, p, z), *kummer_u(4, p, z)), 1e-9);
  EXPECT_LT(rel_residual(*kummer_u(2, p, 0.8), f21c(p, 0.8)), 1e-9);
  EXPECT_EQ(*kummer_u(1, p, cplx(0.2, 0.1)), f21c(p, cplx(0.2, 0.1)));
  for (auto& c : check_kummer(RunConfig{}, 50)) EXPECT_TRUE(c.pass) << c.inputs << " " << c.residual;
}

TEST(F21C, Symmetries) {
  auto p = generic();
  for (cplx z : {cplx(0.3, 0.4), cplx(2, -1.5), cplx(-0.7, 0.2), cplx(0.8, -0.9)}) {
    EXPECT_LT(rel_residual(f21c(p, z), f21c(p.swapped_ab(), z)), 1e-10) << z;
    // F[a|a', b|b'; c|c'](conj z) = F[a'|a, b'|b; c'|c](z)
    EXPECT_LT(rel_residual(f21c(p, std::conj(z)), f21c(p.conj_swapped(), z)), 1e-10) << z;
    // conj F[...](z) = F[conj a'|conj a, ...](z); conj Gamma^C(c) = (-1)^{c-c'} Gamma^C(conj c)
    HypParamsC q{p.a.conj().swapped(), p.b.conj().swapped(), p.c.conj().swapped()};
    EXPECT_LT(rel_residual(std::conj(f21c(p, z)), f21c(q, z)), 1e-10) << z;
    cplx sign = neg1pow(p.c.index());
    EXPECT_LT(rel_residual(std::conj(f21c_regularized(p, z)), sign * f21c_regularized(q, z)), 1e-10) << z;
  }
}

TEST(F21C, AdditionalSymmetry) {
  HypParamsC p{Bidegree(cplx(0.3, 0.2), cplx(-0.7, 0.2)), Bidegree(cplx(1.3, 0.2), cplx(2.3, 0.2)), Bidegree(1.6, 0.6)};
  for (cplx z : {cplx(0.3, 0.4), cplx(2, -1.5), cplx(-3, 1)}) EXPECT_LT(additional_symmetry_check(p, z), 1e-9);
  HypParamsC same{p.a, p.a, p.c};
  EXPECT_EQ(additional_symmetry_check(same, cplx(0.3, 0.2)), 0.0);
}

TEST(F21C, GaussIdentityLimit) {
  // with a large gap [c]-[a]-[b] and small |ab| the limit is approached closely
  HypParamsC p{Bidegree(0.01, 0.01), Bidegree(0.02, 0.02), Bidegree(2.5, 2.5)};
  cplx g = (gamma_c(p.c) * gamma_c(p.c - p.a - p.b) / (gamma_c(p.c - p.a) * gamma_c(p.c - p.b))).num();
  EXPECT_LT(rel_residual(f21c_expansion(p, cplx(1 - 1e-6, 0), Expansion::at_one).value, g), 1e-8);
  // generic gap: the distance to the limit shrinks like |1-z|^min(1, 2 delta)
  auto q = generic();
  double delta = bracket(q.c) - bracket(q.a) - bracket(q.b);
  ASSERT_GT(delta, 0.3);
  cplx gq = (gamma_c(q.c) * gamma_c(q.c - q.a - q.b) / (gamma_c(q.c - q.a) * gamma_c(q.c - q.b))).num();
  double e1 = rel_residual(f21c(q, cplx(1 - 1e-4, 0)), gq), e2 = rel_residual(f21c(q, cplx(1 - 1e-6, 0)), gq);
  double slope = std::log(e2 / e1) / std::log(1e-2);
  EXPECT_NEAR(slope, std::min(1.0, 2 * delta), 0.1);
}

TEST(F21C, ZerosAndRegularization) {
  // c = (1|1): Gamma^C(c) = 0, F vanishes identically while the regularized value does not
  HypParamsC p{Bidegree(cplx(0.3, 0.2), cplx(0.3, 0.2)), Bidegree(0.45, 0.45), Bidegree(1, 1)};
  cplx z(0.4, 0.3);
  EXPECT_LT(std::abs(f21c(p, z)), 1e-12);
  EXPECT_GT(std::abs(f21c_regularized(p, z)), 1e-3);
  EXPECT_TRUE(p.zero_surface() || gamma_c(p.c).is_zero());
}

TEST(F21C, DerivativesMatchFiniteDifferences) {
  auto p = generic();
  cplx z(0.4, 0.7);
  double h = 1e-5;
  cplx fx = (f21c(p, z + h) - f21c(p, z - h)) / (2 * h);
  cplx fy = (f21c(p, z + cplx(0, h)) - f21c(p, z - cplx(0, h))) / (2 * h);
  EXPECT_LT(rel_residual(f21c_dz(p, z), 0.5 * (fx - cplx(0, 1) * fy)), 1e-6);
  EXPECT_LT(rel_residual(f21c_dzbar(p, z), 0.5 * (fx + cplx(0, 1) * fy)), 1e-6);
  // mixed derivatives commute
  cplx a = p.a.a, b = p.b.a, c = p.c.a, ap = p.a.a_prime, bp = p.b.a_prime, cp = p.c.a_prime;
  cplx zzb = a * b / c * f21c_dzbar({p.a.shift(1, 0), p.b.shift(1, 0), p.c.shift(1, 0)}, z);
  cplx zbz = ap * bp / cp * f21c_dz({p.a.shift(0, 1), p.b.shift(0, 1), p.c.shift(0, 1)}, z);
  EXPECT_LT(rel_residual(zzb, zbz), 1e-8);
}

TEST(F21C, PfaffEuler) {
  auto p = generic();
  EXPECT_LT(pfaff_euler_check(3, p, 0.4), 1e-10);
  EXPECT_LT(pfaff_euler_check(1, p, -1.0), 1e-10);
}

TEST(F21C, PdeAndDifference) {
  for (auto& c : check_pde(RunConfig{}, 50)) EXPECT_TRUE(c.pass) << c.inputs << " " << c.residual;
  for (auto& c : check_difference_system(RunConfig{}, 20)) EXPECT_TRUE(c.pass) << c.inputs << " " << c.residual;
  auto [r1, r2] = pde_residual({Bidegree(0, 0), Bidegree(0.3, 0.3), Bidegree(1.2, 1.2)}, cplx(0.3, 0.2));
  EXPECT_EQ(r1, cplx(0));
  EXPECT_EQ(r2, cplx(0));
  // real z: the two residuals are conjugate for conjugation-symmetric parameters
  HypParamsC q{Bidegree(0.3, 0.3), Bidegree(0.7, 0.7), Bidegree(1.6, 1.6)};
  auto [d1, d2] = difference_residual(q, cplx(0.3, 0));
  EXPECT_LT(std::abs(d1 - std::conj(d2)), 1e-12);
}

TEST(F21C, DegenerateParametersAreContinuous) {
  // c - a - b integer: the eps-route against a nearby generic point
  HypParamsC p{Bidegree(0.25, 0.25), Bidegree(0.25, 0.25), Bidegree(1.5, 1.5)};
  auto near = [&](double e) { return HypParamsC{Bidegree(0.25 + e, 0.25 + e), p.b, p.c}; };
  for (cplx z : {cplx(0.9, 0.3), cplx(2.5, -1), cplx(-0.5, 0.2)}) {
    cplx F = f21c(p, z);
    double g1 = std::abs(f21c(near(1e-6), z) - F), g2 = std::abs(f21c(near(1e-7), z) - F);
    EXPECT_LT(g2, 1e-5) << z;
    EXPECT_NEAR(g1 / g2, 10, 0.5) << z;  // Lipschitz in the offset
  }
  EXPECT_THROW(f21c(p, 1.0), std::domain_error);
}
