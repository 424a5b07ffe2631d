#include <gtest/gtest.h>

#include <chyp/transform.hpp>
#include <chyp/verify.hpp>

using namespace chyp;

namespace {
SpectralGrid small_grid() {
  SpectralGrid g;
  g.k_max = 4;
  g.s_max = 4;
  return g;
}
}  // namespace

TEST(Transform, ZeroInputGivesZero) {
  LogPolarBump b;
  b.amplitude = 0;
  auto F = transform_grid(b.as_function(), {0.4, 0.7}, small_grid());
  for (auto v : F.values) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(adjoint_transform(F, cplx(2, 1)), 0.0);
}

TEST(Transform, EvenAndMatchesAdaptive) {
  ParamsAB p{0.4, 0.7};
  auto f = standard_bumps()[0].as_function();
  auto F = transform_grid(f, p, small_grid());
  EXPECT_TRUE(F.even(0));
  QuadSpec q;
  q.target_rel_error = 1e-9;
  for (long k : {0L, 3L}) {
    std::size_t j = 5;
    auto r = forward_transform(f, F.grid.point(k, j), p, q);
    EXPECT_LT(std::abs(r.value - F.at(k, j)), 1e-7 * std::abs(r.value) + 1e-12) << k;
  }
}

TEST(Transform, RejectsBadInput) {
  LogPolarBump b;
  b.center = 1.0;
  EXPECT_THROW(transform_grid(b.as_function(), {0.4, 0.7}, small_grid()), std::invalid_argument);
  EXPECT_THROW(transform_grid(standard_bumps()[0].as_function(), {1.5, 0.9}, small_grid()), std::invalid_argument);
  auto F = transform_grid(standard_bumps()[0].as_function(), {0.4, 0.7}, small_grid());
  EXPECT_THROW(adjoint_transform(F, cplx(1)), std::domain_error);
}

TEST(Transform, DiscretePartPresentOnlyWhenExpected) {
  auto f = standard_bumps()[2].as_function();
  EXPECT_FALSE(transform_grid(f, {0.4, 0.7}, small_grid()).discrete_value);
  EXPECT_TRUE(transform_grid(f, {-0.2, 0.7}, small_grid()).discrete_value);
}

TEST(Transform, InnerProductIsHermitian) {
  ParamsAB p{0.5, 0.5};
  auto bs = standard_bumps();
  auto F = transform_grid(bs[0].as_function(), p, small_grid());
  auto G = transform_grid(bs[1].as_function(), p, small_grid());
  EXPECT_LT(std::abs(F.inner(G) - std::conj(G.inner(F))), 1e-14 * std::sqrt(F.norm2() * G.norm2()));
  EXPECT_GT(F.norm2(), 0);
}
