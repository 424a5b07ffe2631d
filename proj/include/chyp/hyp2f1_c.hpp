#pragma once
// The hypergeometric function of the complex field via its expansions at 0, 1, inf.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>

#include "complex_field.hpp"
#include "gauss_2f1.hpp"

namespace chyp {

struct HypParamsC {
  Bidegree a, b, c;

  HypParamsC swapped_ab() const { return {b, a, c}; }
  HypParamsC conj_swapped() const { return {a.swapped(), b.swapped(), c.swapped()}; }

  // pole/zero surfaces: F has zeros for a,b,c-a,c-b in NxN and poles for c in Z_-xZ_-
  bool zero_surface() const {
    auto nn = [](const Bidegree& p) { return gamma_c(p).is_zero(); };
    return nn(a) || nn(b) || nn(c - a) || nn(c - b);
  }
  bool pole_surface() const { return gamma_c(c).is_pole(); }
};

enum class Expansion { at_zero, at_one, at_infinity };

inline const char* expansion_name(Expansion e) {
  switch (e) {
    case Expansion::at_zero: return "A (z->0)";
    case Expansion::at_one: return "B (z->1)";
    default: return "C (z->inf)";
  }
}

struct F21CResult {
  cplx value{0};
  Expansion region = Expansion::at_zero;
  double cond = 1;           // (|t0| c0 + |t1| c1)/|t0+t1|
  bool pole = false;
  bool degenerate = false;   // eps-perturbed parameters were used
  bool reduced_accuracy = false;
  std::array<cplx, 2> terms{};
};

namespace detail {

// product of the holomorphic and antiholomorphic classical factors
struct Pair {
  cplx value;
  double cond;
};

inline Pair f21_pair(cplx a, cplx b, cplx c, cplx ap, cplx bp, cplx cp, cplx x) {
  auto h = f21_detail({a, b, c}, x);
  auto g = f21_detail({ap, bp, cp}, std::conj(x));
  double cond = std::max(h.cond, g.cond);
  if (!h.converged || !g.converged) cond = std::max(cond, 1e17);
  return {h.value * g.value, cond};
}

// The bidegree whose integrality makes expansion e degenerate.
inline Bidegree degeneracy_witness(const HypParamsC& p, Expansion e) {
  switch (e) {
    case Expansion::at_zero: return p.c;
    case Expansion::at_one: return p.c - p.a - p.b;
    default: return p.a - p.b;
  }
}

inline double integer_distance(const Bidegree& q) {
  return std::max(int_dist(q.a), int_dist(q.a_prime));
}

inline F21CResult expansion_raw(const HypParamsC& p, cplx z, Expansion e, bool regularized) {
  const Bidegree &A = p.a, &B = p.b, &C = p.c;
  const cplx a = A.a, ap = A.a_prime, b = B.a, bp = B.a_prime, c = C.a, cp = C.a_prime;
  GammaValue k0, k1;
  cplx f0 = 0, f1 = 0;
  double c0 = 1, c1 = 1;
  GammaValue gcv = regularized ? GammaValue{1.0, 0} : gamma_c(C);
  F21CResult r;
  r.region = e;

  auto need = [](const GammaValue& g) { return !g.is_zero(); };
  switch (e) {
    case Expansion::at_zero: {
      k0 = regularized ? GammaValue{1.0, 0} / gamma_c(C) : GammaValue{1.0, 0};
      k1 = gcv * gamma_c(C - 1.0) /
           (gamma_c(A) * gamma_c(B) * gamma_c(C - A) * gamma_c(C - B)) * sign_c(C - A - B);
      if (need(k0)) {
        auto q = f21_pair(a, b, c, ap, bp, cp, z);
        f0 = q.value, c0 = q.cond;
      }
      if (need(k1)) {
        auto q = f21_pair(a + 1.0 - c, b + 1.0 - c, 2.0 - c, ap + 1.0 - cp, bp + 1.0 - cp, 2.0 - cp, z);
        f1 = generalized_power(z, 1.0 - C) * q.value, c1 = q.cond;
      }
      break;
    }
    case Expansion::at_one: {
      k0 = gcv * gamma_c(C - A - B) / (gamma_c(C - A) * gamma_c(C - B));
      k1 = gcv * gamma_c(A + B - C) / (gamma_c(A) * gamma_c(B));
      if (need(k0)) {
        auto q = f21_pair(a, b, a + b + 1.0 - c, ap, bp, ap + bp + 1.0 - cp, 1.0 - z);
        f0 = q.value, c0 = q.cond;
      }
      if (need(k1)) {
        auto q = f21_pair(c - a, c - b, c + 1.0 - a - b, cp - ap, cp - bp, cp + 1.0 - ap - bp, 1.0 - z);
        f1 = generalized_power(1.0 - z, C - A - B) * q.value, c1 = q.cond;
      }
      break;
    }
    case Expansion::at_infinity: {
      k0 = gcv * gamma_c(B - A) / (gamma_c(C - A) * gamma_c(B));
      k1 = gcv * gamma_c(A - B) / (gamma_c(C - B) * gamma_c(A));
      cplx w = 1.0 / z;
      if (need(k0)) {
        auto q = f21_pair(a, a + 1.0 - c, a + 1.0 - b, ap, ap + 1.0 - cp, ap + 1.0 - bp, w);
        f0 = generalized_power(-z, -A) * q.value, c0 = q.cond;
      }
      if (need(k1)) {
        auto q = f21_pair(b, b + 1.0 - c, b + 1.0 - a, bp, bp + 1.0 - cp, bp + 1.0 - ap, w);
        f1 = generalized_power(-z, -B) * q.value, c1 = q.cond;
      }
      break;
    }
  }
  if (k0.is_pole() || k1.is_pole()) {
    r.pole = true;
    r.value = k0.num() + k1.num();
    return r;
  }
  cplx t0 = need(k0) ? k0.value * f0 : 0.0;
  cplx t1 = need(k1) ? k1.value * f1 : 0.0;
  r.terms = {t0, t1};
  r.value = t0 + t1;
  r.cond = (std::abs(t0) * c0 + std::abs(t1) * c1) / std::max(std::abs(r.value), 1e-300);
  return r;
}

// average over +-eps along the diagonal (eps|eps); real eps keeps every
// integer-pair witness at distance >= eps/2 once the trigger is d < eps/2
inline F21CResult perturbed(const HypParamsC& p, cplx z, Expansion e, bool regularized) {
  double eps = tolerances().eps_perturb;
  HypParamsC hi = p, lo = p;
  if (e == Expansion::at_infinity) {
    hi.a = p.a + eps;
    lo.a = p.a - eps;
  } else {
    hi.c = p.c + eps;
    lo.c = p.c - eps;
  }
  auto r1 = expansion_raw(hi, z, e, regularized);
  auto r2 = expansion_raw(lo, z, e, regularized);
  F21CResult r = r1;
  r.value = 0.5 * (r1.value + r2.value);
  r.terms = {0.5 * (r1.terms[0] + r2.terms[0]), 0.5 * (r1.terms[1] + r2.terms[1])};
  r.cond = std::max(r1.cond, r2.cond);
  r.pole = r1.pole || r2.pole;
  r.degenerate = true;
  r.reduced_accuracy = true;
  return r;
}

// converge ratio of the inner arguments for expansion e
inline double expansion_argument(cplx z, Expansion e) {
  switch (e) {
    case Expansion::at_zero: return std::abs(z);
    case Expansion::at_one: return std::abs(1.0 - z);
    default: return 1.0 / std::abs(z);
  }
}

}  // namespace detail

/// One expansion, with the degenerate-parameter eps route when needed.
inline F21CResult f21c_expansion(const HypParamsC& p, cplx z, Expansion e, bool regularized = false) {
  using namespace detail;
  const auto& tol = tolerances();
  double d = integer_distance(degeneracy_witness(p, e));
  if (d < 0.5 * tol.eps_perturb) return perturbed(p, z, e, regularized);
  auto r = expansion_raw(p, z, e, regularized);
  // near-degenerate cancellation between the two terms
  if (!r.pole && std::abs(r.terms[0]) > tol.cancel_ratio * std::abs(r.value) &&
      std::abs(r.terms[1]) > tol.cancel_ratio * std::abs(r.value) && d < 1e-3) {
    auto q = perturbed(p, z, e, regularized);
    if (q.cond < r.cond) return q;
  }
  return r;
}

inline Expansion default_region(cplx z) {
  double az = std::abs(z), a1 = std::abs(1.0 - z);
  if (az <= 0.6) return Expansion::at_zero;
  if (a1 <= 0.6) return Expansion::at_one;
  if (az >= 1.8) return Expansion::at_infinity;
  double m[3] = {az, a1, 1.0 / az};
  int i = int(std::min_element(m, m + 3) - m);
  return i == 0 ? Expansion::at_zero : (i == 1 ? Expansion::at_one : Expansion::at_infinity);
}

namespace detail {
// Each expansion is real analytic off one cut of the principal branches:
// A off [1, inf), B off (-inf, 0], C off [0, 1].
inline bool on_cut(cplx z, Expansion e) {
  if (std::abs(z.imag()) > 1e-12 * std::max(1.0, std::abs(z))) return false;
  double x = z.real();
  switch (e) {
    case Expansion::at_zero: return x >= 1;
    case Expansion::at_one: return x <= 0;
    default: return x >= 0 && x <= 1;
  }
}
// expected loss: digits lost to cancellation, and the eps-route costs ~6 more
inline double score(const F21CResult& r) { return r.cond * (r.degenerate ? 1e6 : 1.0); }
}  // namespace detail

/// Full evaluation: default region; when it cancels badly or needs the
/// eps-route, every other expansion valid at z is tried and the best kept.
inline F21CResult f21c_detail(const HypParamsC& p, cplx z, bool regularized = false) {
  if (z == 0.0 || z == 1.0) throw std::domain_error("f21c: z must avoid {0, 1}");
  const auto& tol = tolerances();
  Expansion first = default_region(z);
  auto r = f21c_expansion(p, z, first, regularized);
  if (r.pole || (!r.degenerate && r.cond < tol.route_cond)) return r;
  for (Expansion e : {Expansion::at_zero, Expansion::at_one, Expansion::at_infinity}) {
    if (e == first || detail::on_cut(z, e)) continue;
    auto q = f21c_expansion(p, z, e, regularized);
    if (!q.pole && detail::score(q) < detail::score(r)) r = q;
  }
  if (r.cond * 1e-16 > 1e-8 || r.degenerate) r.reduced_accuracy = true;
  return r;
}

inline cplx f21c(const HypParamsC& p, cplx z) { return f21c_detail(p, z).value; }
inline cplx f21c_regularized(const HypParamsC& p, cplx z) { return f21c_detail(p, z, true).value; }

/// d/dz F = (ab/c) F[a+1|a', b+1|b'; c+1|c']
inline cplx f21c_dz(const HypParamsC& p, cplx z) {
  if (p.a.a == 0.0 || p.b.a == 0.0) return 0.0;
  return p.a.a * p.b.a / p.c.a * f21c({p.a.shift(1, 0), p.b.shift(1, 0), p.c.shift(1, 0)}, z);
}
inline cplx f21c_dzbar(const HypParamsC& p, cplx z) {
  if (p.a.a_prime == 0.0 || p.b.a_prime == 0.0) return 0.0;
  return p.a.a_prime * p.b.a_prime / p.c.a_prime *
         f21c({p.a.shift(0, 1), p.b.shift(0, 1), p.c.shift(0, 1)}, z);
}

inline double rel_residual(cplx x, cplx y) {
  return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-300});
}

/// The six Kummer-type expressions. Domains: |z|<1 for u1,u5; |1-z|<1 for
/// u2,u6; |z|>1 for u3,u4. Returns nullopt on a coefficient pole.
inline std::optional<cplx> kummer_u(int j, const HypParamsC& p, cplx z) {
  const Bidegree &A = p.a, &B = p.b, &C = p.c;
  auto F = [](const Bidegree& a, const Bidegree& b, const Bidegree& c, cplx x) {
    return f21c({a, b, c}, x);
  };
  GammaValue k;
  cplx v;
  switch (j) {
    case 1: return F(A, B, C, z);
    case 2:
      k = gamma_c(C) * gamma_c(C - A - B) / (gamma_c(C - A) * gamma_c(C - B));
      v = F(A, B, A + B - C + 1.0, 1.0 - z);
      break;
    case 3:
      k = gamma_c(C) * gamma_c(B - A) / (gamma_c(B) * gamma_c(C - A));
      v = generalized_power(-z, -A) * F(A, A - C + 1.0, A - B + 1.0, 1.0 / z);
      break;
    case 4:
      k = gamma_c(C) * gamma_c(A - B) / (gamma_c(A) * gamma_c(C - B));
      v = generalized_power(-z, -B) * F(B, B - C + 1.0, B - A + 1.0, 1.0 / z);
      break;
    case 5:
      k = gamma_c(C) * gamma_c(C - 1.0) /
          (gamma_c(A) * gamma_c(B) * gamma_c(C - A) * gamma_c(C - B)) * sign_c(C - A - B);
      v = generalized_power(z, 1.0 - C) * F(B - C + 1.0, A - C + 1.0, 2.0 - C, z);
      break;
    case 6:
      k = gamma_c(C) * gamma_c(A + B - C) / (gamma_c(A) * gamma_c(B));
      v = generalized_power(1.0 - z, C - A - B) * F(C - A, C - B, C - A - B + 1.0, 1.0 - z);
      break;
    default: throw std::invalid_argument("kummer_u: j must be in 1..6");
  }
  if (!k.finite()) return std::nullopt;
  return k.num() * v;
}

/// Residual of the Pfaff (1, 2) and Euler (3) transformations.
inline double pfaff_euler_check(int variant, const HypParamsC& p, cplx z) {
  const Bidegree &A = p.a, &B = p.b, &C = p.c;
  cplx lhs = f21c(p, z), rhs;
  cplx w = z / (z - 1.0);
  switch (variant) {
    case 1: rhs = generalized_power(1.0 - z, -A) * f21c({A, C - B, C}, w); break;
    case 2: rhs = generalized_power(1.0 - z, -B) * f21c({C - A, B, C}, w); break;
    case 3: rhs = generalized_power(1.0 - z, C - A - B) * f21c({C - A, C - B, C}, z); break;
    default: throw std::invalid_argument("pfaff_euler_check: variant must be 1..3");
  }
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1.0);
}

/// F[a|a', b|b'; c] = F[a|b', b|a'; c] when a - b is an integer.
inline double additional_symmetry_check(const HypParamsC& p, cplx z) {
  Bidegree d = p.a - p.b;
  if (!near_integer(d.a, 1e-10)) throw std::invalid_argument("additional symmetry needs a-b integer");
  HypParamsC q{Bidegree(p.a.a, p.b.a_prime), Bidegree(p.b.a, p.a.a_prime), p.c};
  return rel_residual(f21c(p, z), f21c(q, z));
}

/// (D[a,b,c]F, D'[a',b',c']F) with exact contiguous derivatives.
inline std::pair<cplx, cplx> pde_residual(const HypParamsC& p, cplx z) {
  auto sh = [](const HypParamsC& q, long i, long j) {
    return HypParamsC{q.a.shift(i, j), q.b.shift(i, j), q.c.shift(i, j)};
  };
  cplx F = f21c(p, z);
  cplx a = p.a.a, b = p.b.a, c = p.c.a, ap = p.a.a_prime, bp = p.b.a_prime, cp = p.c.a_prime;
  cplx Fz = f21c_dz(p, z), Fzz = f21c_dz(p, z) == 0.0 ? 0.0 : a * b / c * f21c_dz(sh(p, 1, 0), z);
  cplx Fw = f21c_dzbar(p, z), Fww = Fw == 0.0 ? 0.0 : ap * bp / cp * f21c_dzbar(sh(p, 0, 1), z);
  cplx zb = std::conj(z);
  cplx r1 = z * (1.0 - z) * Fzz + (c - (a + b + 1.0) * z) * Fz - a * b * F;
  cplx r2 = zb * (1.0 - zb) * Fww + (cp - (ap + bp + 1.0) * zb) * Fw - ap * bp * F;
  return {r1, r2};
}

/// Residuals of the difference system in the upper parameters,
///   alpha (F[a-1, b+1] - F) + beta (F[a+1, b-1] - F) = -z F,
///   alpha = b(c-a)/((b-a)(1+b-a)),  beta = a(c-b)/((a-b)(1+a-b)),
/// and its copy in the primed entries with -conj(z).
inline std::pair<cplx, cplx> difference_residual(const HypParamsC& p, cplx z) {
  cplx F = f21c(p, z);
  auto at = [&](long da, long dap) {
    return f21c({p.a.shift(da, dap), p.b.shift(-da, -dap), p.c}, z);
  };
  auto coeffs = [](cplx a, cplx b, cplx c) {
    return std::pair<cplx, cplx>{b * (c - a) / ((b - a) * (1.0 + b - a)),
                                 a * (c - b) / ((a - b) * (1.0 + a - b))};
  };
  auto [al, be] = coeffs(p.a.a, p.b.a, p.c.a);
  auto [alp, bep] = coeffs(p.a.a_prime, p.b.a_prime, p.c.a_prime);
  cplx r1 = al * (at(-1, 0) - F) + be * (at(1, 0) - F) + z * F;
  cplx r2 = alp * (at(0, -1) - F) + bep * (at(0, 1) - F) + std::conj(z) * F;
  return {r1, r2};
}

}  // namespace chyp
