#pragma once
// Property checks over random draws, grouped into suites and numbered criteria.
// Everything here is deterministic given the seed and the truncation.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "hyp2f1_c.hpp"
#include "quadrature.hpp"
#include "spectral.hpp"
#include "transform.hpp"

namespace chyp {

struct CheckRecord {
  std::string id;
  std::string anchor;  // the identity being checked, in words
  std::string inputs;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<CheckRecord> checks;
  std::vector<std::pair<std::string, std::string>> environment;
  double wall_time = 0;  // not part of the reproducible payload

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
  }
};

struct RunConfig {
  std::uint64_t seed = 42;
  long k_max = 32;
  double s_max = 40;
  double tol_scale = 1;  // multiplies every tolerance
};

inline std::string strf(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
inline std::string strf(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

inline std::string str(cplx z) { return strf("%.6g%+.6gi", z.real(), z.imag()); }
inline std::string str(const Bidegree& p) { return "(" + str(p.a) + "|" + str(p.a_prime) + ")"; }
inline std::string str(const HypParamsC& p) { return str(p.a) + "," + str(p.b) + ";" + str(p.c); }
inline std::string str(const LambdaPoint& l) { return strf("k=%ld,sigma=", l.k) + str(l.sigma); }

/// Tracks the worst residual over draws; NaN counts as failure.
struct Worst {
  double value = 0;
  std::string where;
  void add(double r, const std::string& w) {
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    if (r > value || where.empty()) value = std::max(value, r), where = w;
  }
};

class Checks {
 public:
  explicit Checks(double tol_scale = 1) : scale_(tol_scale) {}
  CheckRecord& add(std::string id, std::string anchor, std::string inputs, double residual, double tol) {
    if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
    tol *= scale_;
    out.push_back({std::move(id), std::move(anchor), std::move(inputs), residual, tol, residual <= tol});
    return out.back();
  }
  /// reported value without a bound
  void info(std::string id, std::string anchor, std::string inputs, double value) {
    out.push_back({std::move(id), std::move(anchor), std::move(inputs), value, std::numeric_limits<double>::max(), true});
  }
  void add(std::string id, std::string anchor, int draws, const Worst& w, double tol) {
    add(std::move(id), std::move(anchor), strf("%d draws; worst at ", draws) + w.where, w.value, tol);
  }
  std::vector<CheckRecord> out;

 private:
  double scale_;
};

// ---- random parameters ----------------------------------------------------------------

class Draws {
 public:
  Draws(std::uint64_t seed, std::uint64_t stream) : g_(seed * 0x9E3779B97F4A7C15ull + stream) {}
  double u(double lo, double hi) { return lo + (hi - lo) * unit(); }
  long i(long lo, long hi) { return lo + long(std::floor(unit() * double(hi - lo + 1))); }
  cplx c(double re_lo, double re_hi, double im) { return {u(re_lo, re_hi), u(-im, im)}; }
  /// (x | x - n) with Re x in [lo, hi], |Im x| <= im, |n| <= nmax
  Bidegree bideg(double lo, double hi, double im, long nmax) {
    cplx x = c(lo, hi, im);
    return {x, x - double(i(-nmax, nmax))};
  }
  /// z with |z| in [r0, r1] and |1-z| >= d, off the real axis
  cplx point(double r0, double r1, double d) {
    for (;;) {
      cplx z = std::polar(u(r0, r1), u(-pi, pi));
      if (std::abs(1.0 - z) >= d && std::abs(z.imag()) > 0.05) return z;
    }
  }

 private:
  // the generator's raw output is portable; the std distributions are not
  double unit() { return double(g_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 g_;
};

/// Generic parameters: no expansion of F^C is degenerate and no Gamma^C argument
/// sits near a pole.
inline HypParamsC generic_params(Draws& d, double lo = -1.2, double hi = 1.2) {
  for (;;) {
    HypParamsC p{d.bideg(lo, hi, 0.8, 2), d.bideg(lo, hi, 0.8, 2), d.bideg(0.2, 2.2, 0.8, 2)};
    bool ok = true;
    for (Bidegree q : {p.c - p.a - p.b, p.a - p.b, p.c}) ok = ok && detail::integer_distance(q) > 0.1;
    for (Bidegree q : {p.a, p.b, p.c - p.a, p.c - p.b, p.c})
      ok = ok && dist_to_nonpos_int(q.a) > 0.1 && dist_to_nonpos_int(q.a_prime) > 0.1;
    if (ok) return p;
  }
}

inline ParamsAB draw_ab(Draws& d) { return {d.u(0.1, 0.9), d.u(0.1, 0.9)}; }

// ---- gamma ----------------------------------------------------------------------------

inline std::vector<CheckRecord> check_gamma(const RunConfig& cfg, int draws = 100) {
  Draws d(cfg.seed, 1);
  Worst sym, shift, refl, conj, dup, bconj;
  for (int t = 0; t < draws; ++t) {
    Bidegree p = d.bideg(-3.5, 3.5, 2, 4), q = d.bideg(-2, 2, 2, 3);
    std::string w = str(p);
    cplx g = gamma_c(p).num();
    sym.add(rel_residual(g, gamma_c(p.swapped()).num()), w);
    shift.add(rel_residual(gamma_c(p.shift(1, 0)).num(), cplx(0, 1) * p.a * g), w);
    refl.add(std::abs(g * gamma_c(1.0 - p).num() - sign_c(p)), w);
    conj.add(rel_residual(std::conj(g), sign_c(p) * gamma_c(p.conj()).num()), w);
    cplx lhs = g * gamma_c(p + 0.5).num() * std::exp((2.0 * (p.a + p.a_prime) - 1.0) * std::log(2.0));
    dup.add(rel_residual(lhs, gamma_c(Bidegree(2.0 * p.a, 2.0 * p.a_prime)).num()), w);
    bconj.add(rel_residual(std::conj(beta_c(p, q).num()), beta_c(p.conj(), q.conj()).num()),
              w + "," + str(q));
  }
  Checks c(cfg.tol_scale);
  c.add("gamma.symmetry", "G(a|a') = G(a'|a)", draws, sym, 1e-11);
  c.add("gamma.shift", "G(a+1|a') = i a G(a|a')", draws, shift, 1e-11);
  c.add("gamma.reflection", "G(a|a') G(1-a|1-a') = (-1)^(a-a')", draws, refl, 1e-11);
  c.add("gamma.conjugation", "conj G(a|a') = (-1)^(a-a') G(conj a|conj a')", draws, conj, 1e-11);
  c.add("gamma.duplication", "G(a|a') G(a+1/2|a'+1/2) 2^(2(a+a')-1) = G(2a|2a')", draws, dup, 1e-11);
  c.add("beta.conjugation", "conj B[a,b] = B[conj a, conj b]", draws, bconj, 1e-11);
  return c.out;
}

// ---- F^C --------------------------------------------------------------------------------

/// F^C at z = 1 - h against its value at 1. The second-order terms of the expansion at 1
/// are of size |h| and |h|^{2([c]-[a]-[b])}; the record reports the worst relative gap.
inline std::vector<CheckRecord> check_gauss_identity(const RunConfig& cfg, int draws = 25) {
  Draws d(cfg.seed, 2);
  Worst lit;
  double predicted = 0;
  for (int t = 0; t < draws; ++t) {
    HypParamsC p;
    double delta;
    for (;;) {
      p = generic_params(d);
      delta = bracket(p.c) - bracket(p.a) - bracket(p.b);
      if (delta > 0.3) break;
    }
    cplx g = (gamma_c(p.c) * gamma_c(p.c - p.a - p.b) / (gamma_c(p.c - p.a) * gamma_c(p.c - p.b))).num();
    lit.add(rel_residual(f21c_expansion(p, cplx(1 - 1e-6, 0), Expansion::at_one).value, g), str(p));
    predicted = std::max(predicted, std::pow(1e-6, std::min(1.0, 2 * delta)));
  }
  Checks c(cfg.tol_scale);
  c.add("hyp.gauss_identity", "F^C(z -> 1) = G(c)G(c-a-b)/(G(c-a)G(c-b)) at z = 1-1e-6",
        strf("%d draws, [c]-[a]-[b] > 0.3; the 1-z terms alone leave gaps up to ~%.1e; worst at ", draws, predicted) +
            lit.where,
        lit.value, 1e-8);
  return c.out;
}

inline std::vector<CheckRecord> check_expansions(const RunConfig& cfg, int draws = 100) {
  Draws d(cfg.seed, 3);
  Worst w;
  int used = 0;
  for (int t = 0; t < draws; ++t) {
    HypParamsC p = generic_params(d);
    cplx z = d.point(0.8, 1.25, 0.4);
    std::array<cplx, 3> v;
    int i = 0;
    for (Expansion e : {Expansion::at_zero, Expansion::at_one, Expansion::at_infinity})
      v[i++] = f21c_expansion(p, z, e).value;
    double r = std::max({rel_residual(v[0], v[1]), rel_residual(v[0], v[2]), rel_residual(v[1], v[2])});
    w.add(r, str(p) + " z=" + str(z));
    ++used;
  }
  Checks c(cfg.tol_scale);
  c.add("hyp.expansions", "expansions at 0, 1, inf agree on 0.8 < |z| < 1.25", used, w, 1e-8);
  return c.out;
}

inline std::vector<CheckRecord> check_kummer(const RunConfig& cfg, int draws = 50) {
  Draws d(cfg.seed, 4);
  Worst ku, pf;
  for (int t = 0; t < draws; ++t) {
    HypParamsC p = generic_params(d);
    // lens |z| < 1, |1-z| < 1 holds u1, u2, u5, u6; |z| > 1, |1-z| < 1 holds u2, u3, u4, u6
    cplx z1(d.u(0.35, 0.65), d.u(0.1, 0.5) * (t % 2 ? 1 : -1));
    cplx z2 = 1.0 + std::polar(d.u(0.3, 0.7), d.u(-1.1, 1.1));
    for (auto [z, set] : {std::pair{z1, std::array{1, 2, 5, 6}}, std::pair{z2, std::array{2, 3, 4, 6}}}) {
      std::vector<cplx> v;
      for (int j : set)
        if (auto u = kummer_u(j, p, z)) v.push_back(*u);
      double r = 0;
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) r = std::max(r, rel_residual(v[i], v[j]));
      ku.add(r, str(p) + " z=" + str(z));
    }
    cplx z = d.point(0.2, 3, 0.3);
    for (int var = 1; var <= 3; ++var) pf.add(pfaff_euler_check(var, p, z), strf("variant %d ", var) + str(p));
  }
  Checks c(cfg.tol_scale);
  c.add("hyp.kummer", "u1..u6 pairwise equal on domain overlaps", draws, ku, 1e-8);
  c.add("hyp.pfaff_euler", "Pfaff (two forms) and Euler transformations of F^C", draws, pf, 1e-10);
  return c.out;
}

inline std::vector<CheckRecord> check_pde(const RunConfig& cfg, int draws = 50) {
  Draws d(cfg.seed, 5);
  Worst w;
  for (int t = 0; t < draws; ++t) {
    HypParamsC p = generic_params(d);
    cplx z = d.point(0.3, 3, 0.3);
    auto [r1, r2] = pde_residual(p, z);
    w.add(std::max(std::abs(r1), std::abs(r2)) / std::abs(f21c(p, z)), str(p) + " z=" + str(z));
  }
  Checks c(cfg.tol_scale);
  c.add("hyp.pde", "hypergeometric equations in z and conj z, residual / |F|", draws, w, 1e-7);
  return c.out;
}

inline std::vector<CheckRecord> check_difference_system(const RunConfig& cfg, int draws = 30) {
  Draws d(cfg.seed, 6);
  Worst w;
  for (int t = 0; t < draws; ++t) {
    HypParamsC p = generic_params(d);
    cplx z = d.point(0.3, 3, 0.3);
    auto [r1, r2] = difference_residual(p, z);
    w.add(std::max(std::abs(r1), std::abs(r2)) / std::abs(z * f21c(p, z)), str(p) + " z=" + str(z));
  }
  Checks c(cfg.tol_scale);
  c.add("hyp.difference", "three-term relations in the upper parameters", draws, w, 1e-8);
  return c.out;
}

// ---- Euler integrals --------------------------------------------------------------------

struct EulerCase {
  HypParamsC p;
  cplx z;
};

inline std::vector<std::pair<Bidegree, Bidegree>> beta_cases() {
  return {{Bidegree(0.3, 0.3), Bidegree(0.4, 0.4)},
          {Bidegree(cplx(0.8, 0.3), cplx(-0.2, 0.3)), Bidegree(cplx(-0.3, -0.1), cplx(0.7, -0.1))},
          {Bidegree(cplx(0.4, 0.2), cplx(0.4, 0.2)), Bidegree(cplx(1.3, 0.1), cplx(-0.7, 0.1))},
          {Bidegree(0.25, 0.25), Bidegree(cplx(0.6, 0.5), cplx(0.6, 0.5))}};
}

/// All inside [b] > 0, [c] - [b] > 0, [a] < 1, [c] - [a] < 1.
inline std::vector<EulerCase> euler_cases() {
  auto B = [](cplx x, cplx y) { return Bidegree(x, y); };
  return {{{B(0.2, 0.2), B(0.5, 0.5), B(0.9, 0.9)}, {0.3, 0.6}},
          {{B({0.6, 0.2}, {-0.4, 0.2}), B({0.6, 0.1}, {0.6, 0.1}), B({1.4, 0.1}, {0.4, 0.1})}, {-1.5, 0.7}},
          {{B(0.5, 0.5), B(0.3, 0.3), B(1.2, 1.2)}, {2, 1}},
          {{B({0.3, 0.4}, {0.3, 0.4}), B(0.45, 0.45), B({1.0, 0.2}, {1.0, 0.2})}, {0.5, -0.8}},
          {{B(1.2, -0.8), B(0.9, -0.1), B(1.6, 0.6)}, {-0.4, -0.3}},
          {{B(-0.3, -0.3), B({0.2, 0.3}, {0.2, 0.3}), B(0.6, 0.6)}, {3, -2}}};
}

/// B^C[a, b] = (1/pi) int t^{a-1} (1-t)^{b-1} d^2t
inline QuadResult beta_integral(const Bidegree& A, const Bidegree& B, double target) {
  PlanarIntegrand g{[=](cplx t) { return generalized_power(t, A - 1.0) * generalized_power(1.0 - t, B - 1.0) / pi; },
                    2 * bracket(A) - 2,
                    {{1.0, 2 * bracket(B) - 2,
                      [=](cplx w) { return generalized_power(1.0 + w, A - 1.0) * generalized_power(-w, B - 1.0) / pi; }}}};
  QuadSpec s;
  s.target_rel_error = target;
  s.tail_exponent = 4 - 2 * bracket(A) - 2 * bracket(B);
  return integrate_plane(g, s);
}

/// F^C[a, b; c](z) = (1/(pi B^C[b, c-b])) int t^{b-1} (1-t)^{c-b-1} (1-zt)^{-a} d^2t
inline QuadResult euler_integral(const HypParamsC& p, cplx z, double target) {
  cplx B = beta_c(p.b, p.c - p.b).num();
  auto f = [=](cplx t) {
    return generalized_power(t, p.b - 1.0) * generalized_power(1.0 - t, p.c - p.b - 1.0) / (pi * B);
  };
  PlanarIntegrand g{[=](cplx t) { return f(t) * generalized_power(1.0 - z * t, -p.a); },
                    2 * bracket(p.b) - 2,
                    {{1.0, 2 * (bracket(p.c) - bracket(p.b)) - 2,
                      [=](cplx w) {
                        cplx t = 1.0 + w;
                        return generalized_power(t, p.b - 1.0) * generalized_power(-w, p.c - p.b - 1.0) *
                               generalized_power(1.0 - z * t, -p.a) / (pi * B);
                      }},
                     {1.0 / z, -2 * bracket(p.a), [=](cplx w) { return f(1.0 / z + w) * generalized_power(-z * w, -p.a); }}}};
  QuadSpec s;
  s.target_rel_error = target;
  s.max_cells = 40000;
  s.tail_exponent = 4 - 2 * (bracket(p.c) - bracket(p.a));
  return integrate_plane(g, s);
}

inline std::vector<CheckRecord> check_euler_oracle(const RunConfig& cfg) {
  Checks c(cfg.tol_scale);
  int i = 0;
  for (auto [A, B] : beta_cases()) {
    auto r = beta_integral(A, B, 1e-7);
    c.add(strf("quad.beta.%d", i++), "B^C as an integral over the plane", str(A) + "," + str(B) +
          strf(" cells=%d", r.cells), rel_residual(r.value, beta_c(A, B).num()), 1e-5);
  }
  i = 0;
  for (auto e : euler_cases()) {
    auto r = euler_integral(e.p, e.z, 1e-7);
    c.add(strf("quad.euler.%d", i++), "F^C as an Euler integral over the plane",
          str(e.p) + " z=" + str(e.z) + strf(" cells=%d", r.cells), rel_residual(r.value, f21c(e.p, e.z)), 1e-5);
  }
  return c.out;
}

// ---- kernel -----------------------------------------------------------------------------

inline LambdaPoint draw_lambda(Draws& d, long kmax, double smax) {
  for (;;) {
    LambdaPoint l{d.i(-kmax, kmax), cplx(0, d.u(-smax, smax))};
    if (std::abs(l.lambda()) >= 0.5) return l;
  }
}

/// D K = -lam^2 K and Dbar K = -lam'^2 K by finite differences; the record with the
/// opposite sign is reported alongside.
inline std::vector<CheckRecord> check_kernel_eigen(const RunConfig& cfg, int draws = 20) {
  Draws d(cfg.seed, 7);
  Worst w, lit;
  for (int t = 0; t < draws; ++t) {
    ParamsAB p = draw_ab(d);
    LambdaPoint l = draw_lambda(d, 3, 4);
    cplx z = d.point(0.4, 3, 0.4);
    auto f = [&](cplx x) { return kernel_K(x, l, p); };
    auto W = wirtinger(f, z);
    cplx l2 = l.lambda() * l.lambda(), lp2 = l.lambda_prime() * l.lambda_prime();
    cplx D = apply_D_from(W, z, p, Variant::holomorphic), Db = apply_D_from(W, z, p, Variant::antiholomorphic);
    double s1 = std::abs(l2 * W.f), s2 = std::abs(lp2 * W.f);
    std::string where = strf("a=%.4g b=%.4g ", p.a, p.b) + str(l) + " z=" + str(z);
    w.add(std::max(std::abs(D + l2 * W.f) / s1, std::abs(Db + lp2 * W.f) / s2), where);
    lit.add(std::max(std::abs(D - l2 * W.f) / s1, std::abs(Db - lp2 * W.f) / s2), where);
  }
  Checks c(cfg.tol_scale);
  c.add("kernel.D_eigen", "D K = -lam^2 K, Dbar K = -lam'^2 K (finite differences)", draws, w, 1e-5);
  c.info("kernel.D_eigen_plus_sign", "D K = +lam^2 K, the opposite sign (informational)",
         strf("%d draws; worst at ", draws) + lit.where, lit.value);
  return c.out;
}

/// L K = -z K and Lbar K = -conj(z) K, with draws at and near lam in {0, +-1/2}.
inline std::vector<CheckRecord> check_kernel_difference(const RunConfig& cfg, int draws = 50) {
  Draws d(cfg.seed, 8);
  Worst w;
  double eps = tolerances().eps_perturb;
  const std::array<LambdaPoint, 10> special{{{0, 0.0}, {1, 0.0}, {-1, 0.0}, {0, cplx(0, 0.2 * eps)},
                                             {1, cplx(0.1 * eps, 0)}, {-1, cplx(0, -0.3 * eps)},
                                             {0, cplx(1e-9, 0)}, {1, cplx(0, 1e-8)}, {-1, cplx(0, 0.4)},
                                             {0, cplx(0, 0.5)}}};
  for (int t = 0; t < draws; ++t) {
    ParamsAB p = draw_ab(d);
    cplx z = d.point(0.4, 3, 0.4);
    LambdaPoint l = t < int(special.size()) ? special[t]
                                            : LambdaPoint{d.i(-4, 4), cplx(d.u(-0.3, 0.3), d.u(-4, 4))};
    SpectralFn F = [&](long k, cplx s) { return kernel_K(z, LambdaPoint{k, s}, p); };
    cplx K = F(l.k, l.sigma);
    cplx L = apply_Lfrak(F, l.k, l.sigma, p, Variant::holomorphic);
    cplx Lb = apply_Lfrak(F, l.k, l.sigma, p, Variant::antiholomorphic);
    double sc = std::abs(z * K);
    w.add(std::max(std::abs(L + z * K), std::abs(Lb + std::conj(z) * K)) / sc,
          strf("a=%.4g b=%.4g ", p.a, p.b) + str(l) + " z=" + str(z));
  }
  Checks c(cfg.tol_scale);
  c.add("kernel.L_eigen", "L K = -z K, Lbar K = -conj z K, incl. lam near 0, +-1/2", draws, w, 1e-8);
  return c.out;
}

inline std::vector<CheckRecord> check_kernel_symmetry(const RunConfig& cfg, int draws = 30) {
  Draws d(cfg.seed, 9);
  Worst ev, re, dens, densc;
  for (int t = 0; t < draws; ++t) {
    ParamsAB p = draw_ab(d);
    LambdaPoint l = draw_lambda(d, 6, 8);
    cplx z = d.point(0.3, 4, 0.3);
    cplx K = kernel_K(z, l, p);
    std::string where = strf("a=%.4g b=%.4g ", p.a, p.b) + str(l) + " z=" + str(z);
    ev.add(rel_residual(K, kernel_K(z, l.negated(), p)), where);
    re.add(std::abs(K.imag()) / std::abs(K), where);
    double k1 = plancherel_density(l, p);
    dens.add(std::abs(k1 - plancherel_density(l.negated(), p)) / k1, where);
    densc.add(rel_residual(k1, plancherel_density_c(l, p).num()), where);
  }
  Checks c(cfg.tol_scale);
  c.add("kernel.even", "K(z; -lam) = K(z; lam)", draws, ev, 1e-10);
  c.add("kernel.real", "K real on the unitary axis", draws, re, 1e-10);
  c.add("density.even", "kappa(-lam) = kappa(lam)", draws, dens, 1e-12);
  c.add("density.continuation", "kappa equals its meromorphic continuation on the unitary axis", draws, densc, 1e-12);
  return c.out;
}

/// Ring maximum of |K - lead/2| / envelope over 96 directions at |lam| = R, z fixed.
inline double asymptotic_ring_error(cplx z, const ParamsAB& p, double R, double lead_factor = 0.5) {
  double m = 0;
  for (int i = 0; i < 96; ++i) {
    double ang = pi * (i + 0.5) / 96 - pi / 2;
    double k = std::round(2 * R * std::cos(ang));
    double s = (ang < 0 ? -1 : 1) * std::sqrt(std::max(0.0, 4 * R * R - k * k));
    if (std::abs(s) < 1e-3) s = 1e-3;
    LambdaPoint l{long(k), cplx(0, s)};
    cplx K = kernel_K(z, l, p), L = lead_factor * kernel_leading_term(z, l, p);
    m = std::max(m, std::abs(K - L) / kernel_envelope(z, l, p));
  }
  return m;
}

inline double beta_as_ring_error(const ParamsAB& p, double R, bool with_sign = true) {
  double m = 0;
  for (int i = 0; i < 96; ++i) {
    double ang = pi * (i + 0.5) / 96 - pi / 2;
    double k = std::round(2 * R * std::cos(ang));
    double s = (ang < 0 ? -1 : 1) * std::sqrt(std::max(0.0, 4 * R * R - k * k));
    double target = with_sign ? neg1pow(long(k)) : 1.0;
    m = std::max(m, std::abs(beta_as_ratio(LambdaPoint{long(k), cplx(0, s)}, p) - target));
  }
  return m;
}

/// Least squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = double(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Relative error of the leading term decays like 1/|lam|: errors decrease along
/// R = 10, 20, 40 and every successive slope lies in [-1.25, -0.75].
inline std::vector<CheckRecord> check_asymptotics(const RunConfig& cfg) {
  Checks c(cfg.tol_scale);
  cplx z(2, 1);
  const std::vector<double> Rs{10, 20, 40};
  for (ParamsAB p : {ParamsAB{0.4, 0.7}, ParamsAB{0.5, 0.5}, ParamsAB{0.9, 0.2}}) {
    for (int which = 0; which < 2; ++which) {
      std::vector<double> e;
      for (double R : Rs) e.push_back(which == 0 ? asymptotic_ring_error(z, p, R) : beta_as_ring_error(p, R));
      double dev = 0;
      std::string s;
      for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        double sl = std::log(e[i + 1] / e[i]) / std::log(Rs[i + 1] / Rs[i]);
        dev = std::max(dev, std::abs(sl + 1));
        s += strf(" slope%zu=%.3f", i, sl);
      }
      // at roundoff level the relation is exact and there is no rate to measure
      if (*std::max_element(e.begin(), e.end()) < 1e-12) dev = 0, s = " (exact)";
      std::string inputs = strf("a=%g b=%g z=2+1i errors %.3e %.3e %.3e", p.a, p.b, e[0], e[1], e[2]) + s;
      if (which == 0)
        c.add(strf("asym.kernel.%g_%g", p.a, p.b), "K minus leading term (with t+-, A0 = 1, half amplitude) is O(1/|lam|)",
              inputs, dev, 0.25);
      else
        c.add(strf("asym.beta.%g_%g", p.a, p.b), "Gamma product / lam^(a+b-1) -> (-1)^k like 1/|lam|", inputs, dev, 0.25);
    }
    // the displayed amplitude without the 1/2 leaves an O(1) gap
    double lit = asymptotic_ring_error(z, p, 40, 1.0);
    c.info(strf("asym.beta_without_sign.%g_%g", p.a, p.b), "Gamma product / lam^(a+b-1) against 1 (informational)",
           "R=40, ring max distance", beta_as_ring_error(p, 40, false));
    c.info(strf("asym.kernel_unit_amplitude.%g_%g", p.a, p.b), "leading term at full amplitude (informational)",
           "R=40, relative gap", lit);
  }
  return c.out;
}

// ---- transform experiments ----------------------------------------------------------------

inline std::array<LogPolarBump, 3> standard_bumps() {
  return {{{std::polar(4.0, 2.0), 1.05, 1.2}, {std::polar(3.5, -1.3), 0.9, 1.1}, {cplx(-4, 0), 1.0, 1.3}}};
}

/// Memoized grid transforms of the standard bumps.
class TransformCache {
 public:
  const SpectralFunction& get(int bump, const ParamsAB& p, long k_max, double s_max) {
    auto key = std::make_tuple(bump, p.a, p.b, k_max, s_max);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
    SpectralGrid g;
    g.k_max = k_max;
    g.s_max = s_max;
    auto F = std::make_shared<SpectralFunction>(transform_grid(standard_bumps()[bump].as_function(), p, g));
    return *cache_.emplace(key, F).first->second;
  }
  double norm2(int bump, const ParamsAB& p) {
    auto f = standard_bumps()[bump].as_function();
    return inner_mu(f, f.eval, p).real();
  }

 private:
  std::map<std::tuple<int, double, double, long, double>, std::shared_ptr<SpectralFunction>> cache_;
};

inline const std::array<ParamsAB, 3>& continuous_params() {
  static const std::array<ParamsAB, 3> v{{{0.4, 0.7}, {0.5, 0.5}, {0.9, 0.2}}};
  return v;
}

inline std::vector<CheckRecord> check_unitarity(const RunConfig& cfg, TransformCache& tc) {
  Checks c(cfg.tol_scale);
  for (const auto& p : continuous_params())
    for (int b = 0; b < 3; ++b) {
      const auto& F = tc.get(b, p, cfg.k_max, cfg.s_max);
      double r = F.norm2() / tc.norm2(b, p);
      c.add(strf("transform.unitarity.%g_%g.bump%d", p.a, p.b, b), "|Jf|^2_kappa / |f|^2_mu = 1",
            strf("k_max=%ld S=%g ratio=%.10f (with the displayed measure: %.10f) tail=%.1e", cfg.k_max, cfg.s_max, r,
                 r / plancherel_measure_factor, F.tail),
            std::abs(r - 1), 1e-2);
    }
  return c.out;
}

inline std::vector<cplx> support_samples(const PlanarFunction& f, int n = 40) {
  std::vector<cplx> zs;
  double lr = std::log(f.r_min), hr = std::log(f.r_max);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double r = lr + (hr - lr) * (i + 0.5) / n;
      double th = f.theta0 - f.theta_half + 2 * f.theta_half * (j + 0.5) / n;
      zs.push_back(std::polar(std::exp(r), th));
    }
  return zs;
}

inline std::vector<CheckRecord> check_round_trip(const RunConfig& cfg, TransformCache& tc, bool all_bumps = true) {
  Checks c(cfg.tol_scale);
  for (std::size_t pi_ = 0; pi_ < continuous_params().size(); ++pi_)
    for (int b = 0; b < 3; ++b) {
      if (!all_bumps && std::size_t(b) != pi_) continue;
      const auto& p = continuous_params()[pi_];
      auto f = standard_bumps()[b].as_function();
      auto zs = support_samples(f);
      auto back = adjoint_transform(tc.get(b, p, cfg.k_max, cfg.s_max), zs);
      std::vector<double> e(zs.size()), n(zs.size());
      for (std::size_t i = 0; i < zs.size(); ++i) e[i] = std::norm(back[i] - f(zs[i])), n[i] = std::norm(f(zs[i]));
      double r = std::sqrt(tree_sum(e) / tree_sum(n));
      c.add(strf("transform.round_trip.%g_%g.bump%d", p.a, p.b, b), "J*Jf = f on a 40x40 grid over the support",
            strf("k_max=%ld S=%g", cfg.k_max, cfg.s_max), r, 5e-2);
    }
  return c.out;
}

/// J(D f) against -lam^2 Jf on |k| <= 8, |s| <= 10, D f by finite differences.
inline std::vector<CheckRecord> check_bispectrality(const RunConfig& cfg) {
  Checks c(cfg.tol_scale);
  SpectralGrid g;
  g.k_max = 8;
  g.s_max = 10;
  for (const auto& p : continuous_params())
    for (int b = 0; b < 3; ++b) {
      auto f = standard_bumps()[b].as_function();
      PlanarFunction Df = f;
      Df.eval = [f, p](cplx z) {
        // D f vanishes where f and its stencil neighbours all vanish
        double h = 0.01;
        for (cplx m : {cplx(1), cplx(1 + h), cplx(1 - h), std::polar(1.0, h), std::polar(1.0, -h)})
          if (f(z * m) != 0.0) return apply_D(f.eval, z, p, Variant::holomorphic);
        return cplx(0);
      };
      auto F = transform_grid(f, p, g), G = transform_grid(Df, p, g);
      std::vector<double> e, el, n;
      for (long k = -g.k_max; k <= g.k_max; ++k)
        for (std::size_t j = 0; j < F.grid.ns(); ++j) {
          cplx lam = F.grid.point(k, j).lambda();
          cplx x = G.at(k, j), y = lam * lam * F.at(k, j);
          e.push_back(std::norm(x + y)), el.push_back(std::norm(x - y)), n.push_back(std::norm(y));
        }
      double r = std::sqrt(tree_sum(e) / tree_sum(n)), rl = std::sqrt(tree_sum(el) / tree_sum(n));
      c.add(strf("transform.bispectral.%g_%g.bump%d", p.a, p.b, b), "J(D f) = -lam^2 Jf on |k|<=8, |s|<=10",
            strf("relative l2 with +lam^2: %.3f", rl), r, 1e-2);
    }
  return c.out;
}

/// (a,b) = (-0.2, 0.7): |f|^2 - |Jf|^2_continuous against the two delta masses.
inline std::vector<CheckRecord> check_discrete(const RunConfig& cfg, TransformCache& tc) {
  Checks c(cfg.tol_scale);
  ParamsAB p{-0.2, 0.7};
  auto dp = discrete_point(p);
  for (int b : {0, 2}) {
    const auto& F = tc.get(b, p, cfg.k_max, cfg.s_max);
    double defect = tc.norm2(b, p) - F.norm2_continuous();
    double delta = dp->contribution(*F.discrete_value);
    c.add(strf("transform.discrete.bump%d", b), "continuous unitarity defect = delta-mass contribution at +-a",
          strf("defect=%.8e delta=%.8e verbatim weight %.4f vs used %.4f", defect, delta, dp->mass_verbatim, dp->mass),
          std::abs(defect - delta) / std::abs(delta), 5e-2);
  }
  return c.out;
}

/// Ring maxima of |Jf| over |lam| in [R, R+2), R = 10, 12, ...; the slope against
/// k^2 + s^2 between consecutive rings must stay below -3. Rings under the noise floor
/// (1e-9 of the peak) are left out.
inline std::vector<CheckRecord> check_decay(const RunConfig& cfg, TransformCache& tc) {
  Checks c(cfg.tol_scale);
  ParamsAB p = continuous_params()[0];
  for (int b = 0; b < 3; ++b) {
    const auto& F = tc.get(b, p, cfg.k_max, cfg.s_max);
    double peak = 0;
    for (auto v : F.values) peak = std::max(peak, std::abs(v));
    std::vector<double> x, y;
    double lam_max = 0.5 * std::min(double(F.grid.k_max), F.grid.s_max);
    for (double R = 10; R + 2 <= lam_max + 1e-9; R += 2) {
      double m = 0;
      for (long k = -F.grid.k_max; k <= F.grid.k_max; ++k)
        for (std::size_t j = 0; j < F.grid.ns(); ++j) {
          double L = std::abs(F.grid.point(k, j).lambda());
          if (L >= R && L < R + 2) m = std::max(m, std::abs(F.at(k, j)));
        }
      if (m < 1e-9 * peak) break;
      x.push_back(4 * (R + 1) * (R + 1));  // k^2 + s^2 at the ring centre
      y.push_back(m);
    }
    double worst = -std::numeric_limits<double>::infinity();
    std::string s;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      double sl = std::log(y[i + 1] / y[i]) / std::log(x[i + 1] / x[i]);
      worst = std::max(worst, sl);
      s += strf(" %.2f", sl);
    }
    if (x.size() < 2) worst = std::numeric_limits<double>::infinity();
    c.add(strf("transform.decay.bump%d", b), "log-log slope of |Jf| vs k^2+s^2 beyond |lam| = 10",
          strf("a=%g b=%g rings=%zu fitted=%.2f successive:", p.a, p.b, x.size(), x.size() > 1 ? loglog_slope(x, y) : 0.0) + s,
          worst, -3);
  }
  return c.out;
}

// ---- suites -----------------------------------------------------------------------------

inline void append(std::vector<CheckRecord>& a, const std::vector<CheckRecord>& b) { a.insert(a.end(), b.begin(), b.end()); }

inline VerifyReport run_suite(const std::string& name, const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  VerifyReport r;
  r.suite = name;
  r.environment = {{"seed", std::to_string(cfg.seed)},
                   {"k_max", std::to_string(cfg.k_max)},
                   {"s_max", strf("%.17g", cfg.s_max)},
                   {"tol_scale", strf("%.17g", cfg.tol_scale)},
                   {"eps_perturb", strf("%.17g", tolerances().eps_perturb)}};
  bool all = name == "all";
  bool known = false;
  if (all || name == "gamma") {
    known = true;
    append(r.checks, check_gamma(cfg));
  }
  if (all || name == "hyp") {
    known = true;
    append(r.checks, check_gauss_identity(cfg));
    append(r.checks, check_expansions(cfg));
    append(r.checks, check_kummer(cfg));
    append(r.checks, check_pde(cfg));
    append(r.checks, check_difference_system(cfg));
    append(r.checks, check_euler_oracle(cfg));
  }
  if (all || name == "kernel") {
    known = true;
    append(r.checks, check_kernel_eigen(cfg));
    append(r.checks, check_kernel_difference(cfg));
    append(r.checks, check_kernel_symmetry(cfg));
    append(r.checks, check_asymptotics(cfg));
  }
  if (all || name == "transform") {
    known = true;
    TransformCache tc;
    append(r.checks, check_unitarity(cfg, tc));
    append(r.checks, check_round_trip(cfg, tc, false));
    append(r.checks, check_bispectrality(cfg));
    append(r.checks, check_discrete(cfg, tc));
    append(r.checks, check_decay(cfg, tc));
  }
  if (!known) throw std::invalid_argument("unknown suite: " + name);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace chyp
