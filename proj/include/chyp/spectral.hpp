#pragma once
// Kernel K_{a,b}, weight, Plancherel density, the operators D, Dbar and the
// difference operators L, Lbar on the spectral side.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "complex_field.hpp"
#include "hyp2f1_c.hpp"

namespace chyp {

struct ParamsAB {
  double a = 0.5, b = 0.5;

  bool in_Pi() const { return 0 < a + b && a + b < 2 && -1 < a - b && a - b < 1; }
  bool in_Pi_cont() const {
    if (a < 0 || a > 1 || b < 0 || b > 1) return false;
    bool corner = (a == 0 || a == 1) && (b == 0 || b == 1);
    return !corner;
  }
  bool discrete_point_present() const { return in_Pi() && !in_Pi_cont(); }
};

inline double mu_weight(cplx z, const ParamsAB& p) {
  if (z == 0.0 || z == 1.0) throw std::domain_error("mu_weight: z must avoid {0, 1}");
  return std::pow(std::abs(z), 2 * p.a + 2 * p.b - 2) * std::pow(std::abs(1.0 - z), 2 * p.a - 2 * p.b);
}

/// F^C[a+lam|a+lam', a-lam|a-lam'; a+b|a+b]
inline HypParamsC kernel_params(const LambdaPoint& l, const ParamsAB& p) {
  cplx lam = l.lambda(), lamp = l.lambda_prime();
  return {Bidegree(p.a + lam, p.a + lamp), Bidegree(p.a - lam, p.a - lamp), Bidegree::diag(p.a + p.b)};
}

struct KernelValue {
  cplx value;
  double cond = 1;
  bool reduced_accuracy = false;
  Expansion region = Expansion::at_infinity;
};

/// K(z; k, sigma) = F^C[...]/Gamma^C(a+b|a+b), via the regularized coefficients.
inline KernelValue kernel_detail(cplx z, const LambdaPoint& lam, const ParamsAB& p) {
  auto r = f21c_detail(kernel_params(lam, p), z, true);
  return {r.value, r.cond, r.reduced_accuracy || r.pole, r.region};
}

inline cplx kernel_K(cplx z, const LambdaPoint& lam, const ParamsAB& p) {
  return kernel_detail(z, lam, p).value;
}

/// J is isometric for the measure 2 kappa ds dk on Lambda, with kappa as below: the
/// displayed 1/4pi^2 normalization gives |Jf|^2 = |f|^2/2 for every test function.
inline constexpr double plancherel_measure_factor = 2;

/// (1/4pi^2) |lam Gamma^C(a-lam|a+conj lam) Gamma^C(b+lam|b-conj lam)|^2 on Lambda.
inline double plancherel_density(const LambdaPoint& l, const ParamsAB& p) {
  if (!l.is_unitary()) throw std::domain_error("plancherel_density: point off Lambda, use plancherel_density_c");
  cplx lam = l.lambda(), lb = std::conj(lam);
  if (lam == 0.0) return 0.0;
  auto g = gamma_c(Bidegree(p.a - lam, p.a + lb)) * gamma_c(Bidegree(p.b + lam, p.b - lb));
  if (g.is_pole()) return std::numeric_limits<double>::infinity();
  double v = std::abs(lam * g.num());
  return v * v / (4 * pi * pi);
}

/// Continuation off Lambda: (1/4pi^2) lam (-lam') G(a+L)G(a-L)G(b+L)G(b-L), L = lam|lam'.
/// Equals plancherel_density on Lambda.
inline GammaValue plancherel_density_c(const LambdaPoint& l, const ParamsAB& p) {
  cplx lam = l.lambda(), lamp = l.lambda_prime();
  Bidegree L = l.as_bidegree();
  auto g = gamma_c(L + p.a) * gamma_c(p.a - L) * gamma_c(L + p.b) * gamma_c(p.b - L);
  return g * (-lam * lamp / (4 * pi * pi));
}

/// Point of the discrete spectrum for (a,b) in Pi \ Pi_cont, normalized to a < 0.
struct DiscreteSpectrumPoint {
  Bidegree location;          // (a|a); its mirror (-a|-a) carries the same mass
  double mass_verbatim;       // Gamma^C(a+b|a+b) Gamma^C(b-a|b-a) Gamma^C(2a|2a)
  double mass;                // (-2a^2/pi) times the above: the weight that makes the
                              // decomposition exact (checked against the defect)
  double eigenfunction_value; // v(z) = 1/Gamma^C(a+b|a+b)
  /// Contribution of both delta masses to |f|^2 given <f, v>_mu.
  double contribution(cplx f_dot_v) const { return 2 * mass * std::norm(f_dot_v); }
};

inline std::optional<DiscreteSpectrumPoint> discrete_point(const ParamsAB& p) {
  if (!p.discrete_point_present() || p.a >= 0) return std::nullopt;
  auto g = [](double x) { return gamma_c(Bidegree::diag(x)).num().real(); };
  double w = g(p.a + p.b) * g(p.b - p.a) * g(2 * p.a);
  return DiscreteSpectrumPoint{Bidegree::diag(p.a), w, -2 * p.a * p.a / pi * w, 1.0 / g(p.a + p.b)};
}

/// |1|^2_mu = pi B^C(a+b|a+b, a-b+1|a-b+1) when the constant is square integrable.
inline double constant_norm2(const ParamsAB& p) {
  auto B = beta_c(Bidegree::diag(p.a + p.b), Bidegree::diag(p.a - p.b + 1));
  return pi * B.num().real();
}

// ---- Wirtinger derivatives by finite differences -------------------------

struct Wirtinger {
  cplx f, dz, dzb, dzz, dzbzb, dzdzb;
};

namespace detail {
using PlaneFn = std::function<cplx(cplx)>;

inline Wirtinger wirtinger_at(const PlaneFn& f, cplx z, double h) {
  const double c1[] = {1.0 / 12, -8.0 / 12, 0, 8.0 / 12, -1.0 / 12};
  const double c2[] = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
  cplx fx = 0, fy = 0, fxx = 0, fyy = 0, fxy = 0;
  cplx f0 = f(z);
  for (int i = 0; i < 5; ++i) {
    double o = (i - 2) * h;
    cplx vx = i == 2 ? f0 : f(z + o), vy = i == 2 ? f0 : f(z + cplx(0, o));
    fx += c1[i] * vx;
    fy += c1[i] * vy;
    fxx += c2[i] * vx;
    fyy += c2[i] * vy;
  }
  for (int i = 0; i < 5; ++i) {
    if (i == 2) continue;
    for (int j = 0; j < 5; ++j) {
      if (j == 2) continue;
      fxy += c1[i] * c1[j] * f(z + cplx((i - 2) * h, (j - 2) * h));
    }
  }
  fx /= h, fy /= h, fxx /= h * h, fyy /= h * h, fxy /= h * h;
  cplx I(0, 1);
  return {f0,
          0.5 * (fx - I * fy),
          0.5 * (fx + I * fy),
          0.25 * (fxx - fyy - 2.0 * I * fxy),
          0.25 * (fxx - fyy + 2.0 * I * fxy),
          0.25 * (fxx + fyy)};
}
}  // namespace detail

/// Five-point stencils in x and y, step h = 1e-3 max(1,|z|), one Richardson level.
inline Wirtinger wirtinger(const std::function<cplx(cplx)>& f, cplx z, double h0 = 0) {
  double h = h0 > 0 ? h0 : 1e-3 * std::max(1.0, std::abs(z));
  auto A = detail::wirtinger_at(f, z, h), B = detail::wirtinger_at(f, z, h / 2);
  auto rich = [](cplx x, cplx y) { return (16.0 * y - x) / 15.0; };
  return {A.f, rich(A.dz, B.dz), rich(A.dzb, B.dzb), rich(A.dzz, B.dzz), rich(A.dzbzb, B.dzbzb),
          rich(A.dzdzb, B.dzdzb)};
}

enum class Variant { holomorphic, antiholomorphic };

/// D f = z(1-z) f_zz + (a+b-(2a+1)z) f_z - a^2 f, or its barred copy.
inline cplx apply_D_from(const Wirtinger& w, cplx z, const ParamsAB& p, Variant v) {
  double a = p.a, b = p.b;
  if (v == Variant::holomorphic) return z * (1.0 - z) * w.dzz + (a + b - (2 * a + 1) * z) * w.dz - a * a * w.f;
  cplx zb = std::conj(z);
  return zb * (1.0 - zb) * w.dzbzb + (a + b - (2 * a + 1) * zb) * w.dzb - a * a * w.f;
}

inline cplx apply_D(const std::function<cplx(cplx)>& f, cplx z, const ParamsAB& p, Variant v) {
  double h = 1e-3 * std::max(1.0, std::abs(z));
  if (std::abs(z) < 10 * h || std::abs(1.0 - z) < 10 * h)
    throw std::domain_error("apply_D: z too close to 0 or 1");
  return apply_D_from(wirtinger(f, z, h), z, p, v);
}

// ---- difference operators ---------------------------------------------------

using SpectralFn = std::function<cplx(long, cplx)>;

namespace detail {
inline cplx lfrak_raw(const SpectralFn& F, long k, cplx s, const ParamsAB& p, Variant v) {
  double a = p.a, b = p.b;
  cplx F0 = F(k, s);
  if (v == Variant::holomorphic) {
    cplx l = 0.5 * (double(k) + s);  // lambda
    cplx x = double(k) + s;
    return (a + l) * (b + l) / (x * (1.0 + x)) * (F(k + 1, s + 1.0) - F0) +
           (a - l) * (b - l) / (-x * (1.0 - x)) * (F(k - 1, s - 1.0) - F0);
  }
  cplx l = 0.5 * (-double(k) + s);  // lambda'
  cplx x = -double(k) + s;
  return (a + l) * (b + l) / (x * (1.0 + x)) * (F(k - 1, s + 1.0) - F0) +
         (a - l) * (b - l) / (-x * (1.0 - x)) * (F(k + 1, s - 1.0) - F0);
}
}  // namespace detail

/// The difference operators L (shifts (k+-1, sigma+-1)) and Lbar (shifts (k-+1, sigma+-1)).
/// Within eps/2 of lambda in {0, +-1/2} (resp. lambda') the removable singularity is
/// taken from symmetric averages at sigma +- h, +- 2h, h = 5e-4, with one Richardson
/// step; offsets of 1e-6 would amplify kernel rounding by 1e6.
inline cplx apply_Lfrak(const SpectralFn& F, long k, cplx sigma, const ParamsAB& p, Variant v) {
  cplx x = (v == Variant::holomorphic ? double(k) : -double(k)) + sigma;
  double eps = tolerances().eps_perturb;
  for (double r : {-1.0, 0.0, 1.0}) {
    if (std::abs(x - r) < 0.5 * eps) {
      const double h = 5e-4;
      auto avg = [&](double d) {
        return 0.5 * (detail::lfrak_raw(F, k, sigma + d, p, v) + detail::lfrak_raw(F, k, sigma - d, p, v));
      };
      return (4.0 * avg(h) - avg(2 * h)) / 3.0;
    }
  }
  return detail::lfrak_raw(F, k, sigma, p, v);
}

// ---- homographic maps --------------------------------------------------------

/// f -> gamma(z) f(z) or gamma(z) f(1-z) with gamma = |z|^{2 ez} |1-z|^{2 e1}.
struct HomographicMap {
  ParamsAB mapped;
  double exp_z = 0;    // exponent of |z|^2
  double exp_1mz = 0;  // exponent of |1-z|^2
  bool flip = false;   // argument z -> 1-z applied first
};

/// Variants 1..4: multipliers 1, |1-z|^{2(b-a)}, |z|^{2(1-a-b)}, both; 5..8: the same after z -> 1-z.
inline HomographicMap homographic_map(int variant, const ParamsAB& p) {
  if (variant < 1 || variant > 8) throw std::invalid_argument("homographic_map: variant in 1..8");
  HomographicMap m;
  m.flip = variant > 4;
  ParamsAB q = m.flip ? ParamsAB{p.a, 1 - p.b} : p;
  int j = (variant - 1) % 4;
  double a = q.a, b = q.b;
  switch (j) {
    case 0: m.mapped = q; break;
    case 1: m.mapped = {b, a}, m.exp_1mz = b - a; break;
    case 2: m.mapped = {1 - b, 1 - a}, m.exp_z = 1 - a - b; break;
    default: m.mapped = {1 - a, 1 - b}, m.exp_z = 1 - a - b, m.exp_1mz = b - a; break;
  }
  return m;
}

// ---- large-lambda behaviour ---------------------------------------------------

/// The displayed leading term of the kernel asymptotics (A_0 = 1), with t_+- = 1 +- sqrt(1-1/z).
inline cplx kernel_leading_term(cplx z, const LambdaPoint& l, const ParamsAB& p) {
  cplx lam = l.lambda(), lb = std::conj(lam);
  auto G = gamma_c(Bidegree(p.a - lam, p.a + lb)) * gamma_c(Bidegree(p.b + lam, p.b - lb));
  cplx r = std::sqrt(1.0 - 1.0 / z);
  cplx w = (1.0 - r) / (1.0 + r);
  double pref = std::pow(std::abs(1.0 - 1.0 / z), -0.5) * std::pow(std::abs(1.0 - z), p.b - p.a) *
                std::pow(std::abs(z), -p.a - p.b);
  Bidegree e(lam, -lb);
  return pref * (generalized_power(w, e) + generalized_power(w, -e)) / (G.num() * std::abs(lam));
}

/// Size of the leading term without its oscillating factor.
inline double kernel_envelope(cplx z, const LambdaPoint& l, const ParamsAB& p) {
  cplx lam = l.lambda(), lb = std::conj(lam);
  auto G = gamma_c(Bidegree(p.a - lam, p.a + lb)) * gamma_c(Bidegree(p.b + lam, p.b - lb));
  return std::pow(std::abs(1.0 - 1.0 / z), -0.5) * std::pow(std::abs(1.0 - z), p.b - p.a) *
         std::pow(std::abs(z), -p.a - p.b) / std::abs(G.num() * lam);
}

/// Gamma^C(a-lam|a+conj lam) Gamma^C(b+lam|b-conj lam) / lam^{a+b-1|a+b-1}. Both factors carry
/// the phase i^k, so this tends to (-1)^k, not 1.
inline cplx beta_as_ratio(const LambdaPoint& l, const ParamsAB& p) {
  cplx lam = l.lambda(), lb = std::conj(lam);
  auto G = gamma_c(Bidegree(p.a - lam, p.a + lb)) * gamma_c(Bidegree(p.b + lam, p.b - lb));
  return G.num() / generalized_power(lam, Bidegree::diag(p.a + p.b - 1));
}

}  // namespace chyp
