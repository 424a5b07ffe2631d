// Transform a bump, check the norm identity and reconstruct one value.
#include <cstdio>

#include <chyp/transform.hpp>

using namespace chyp;

int main() {
  ParamsAB p{0.5, 0.5};
  LogPolarBump bump{cplx(4, 0) * std::polar(1.0, 2.0), 1.05, 1.2, 1};
  auto f = bump.as_function();
  SpectralGrid grid;
  grid.k_max = 24;
  grid.s_max = 30;
  auto F = transform_grid(f, p, grid);
  double lhs = inner_mu(f, f.eval, p).real();
  std::printf("||f||^2 = %.10g   ||Jf||^2 = %.10g   ratio %.8f\n", lhs, F.norm2(), F.norm2() / lhs);
  cplx z = bump.center;
  cplx back = adjoint_transform(F, z);
  std::printf("f(z) = %.8g   J*Jf(z) = %.8g %+.2gi\n", f(z).real(), back.real(), back.imag());
}
