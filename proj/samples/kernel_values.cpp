// Gamma values, a complex-field 2F1 and the kernel at a few points.
#include <cstdio>

#include <chyp/spectral.hpp>

using namespace chyp;

int main() {
  auto g = gamma_c(Bidegree(cplx(0.3, 1), cplx(-0.7, 1)));
  std::printf("Gamma(0.3+i | -0.7+i) = %.12g %+.12gi\n", g.num().real(), g.num().imag());

  HypParamsC h{Bidegree::diag(0.3), Bidegree::diag(0.4), Bidegree::diag(1.2)};
  for (cplx z : {cplx(0.5, 0), cplx(2, 1), cplx(-3, 0.5)}) {
    cplx F = f21c_regularized(h, z);
    std::printf("F(%g%+gi) = %.12g %+.12gi\n", z.real(), z.imag(), F.real(), F.imag());
  }

  ParamsAB p{0.4, 0.7};
  for (long k : {0L, 1L, 4L}) {
    LambdaPoint l{k, cplx(0, 2.5)};
    cplx K = kernel_K(cplx(2, 1), l, p);
    std::printf("K(2+i; k=%ld, s=2.5) = %.12g %+.3gi   density %.6g\n", k, K.real(), K.imag(),
                plancherel_density(l, p));
  }
}
