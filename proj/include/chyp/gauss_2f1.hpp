#pragma once
// Classical Gauss 2F1 with analytic continuation off the unit disk.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "complex_field.hpp"

namespace chyp {

struct HypParams {
  cplx a, b, c;
};

enum class F21Route { series, pfaff_series, one_minus, pfaff_one_minus, inverse, pfaff_inverse, taylor };

inline const char* route_name(F21Route r) {
  switch (r) {
    case F21Route::series: return "series";
    case F21Route::pfaff_series: return "pfaff+series";
    case F21Route::one_minus: return "1-z";
    case F21Route::pfaff_one_minus: return "pfaff+1-z";
    case F21Route::inverse: return "1/z";
    case F21Route::pfaff_inverse: return "pfaff+1/z";
    default: return "taylor";
  }
}

struct F21Result {
  cplx value{0};
  double cond = 1;          // sum |terms| / |value|, a cancellation estimate
  bool degenerate = false;  // went through the eps-perturbation route
  bool converged = true;
  F21Route route = F21Route::series;
};

namespace detail {

struct SeriesSum {
  cplx sum{1};
  double abs_sum = 1;
  bool converged = true;
};

inline SeriesSum hyp_series(cplx a, cplx b, cplx c, cplx x) {
  const auto& tol = tolerances();
  SeriesSum r;
  cplx term = 1.0;
  int small = 0;
  for (int n = 0; n < tol.series_cap; ++n) {
    term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1)) * x;
    r.sum += term;
    double at = std::abs(term);
    r.abs_sum += at;
    if (at == 0.0) return r;  // terminating series
    if (at < tol.series_rel * std::abs(r.sum)) {
      if (++small == 3) return r;
    } else {
      small = 0;
    }
  }
  r.converged = false;
  return r;
}

inline bool is_nonpos_int(cplx x, double tol = 1e-13) {
  long n;
  return near_integer(x, tol, &n) && n <= 0;
}

// prod Gamma(num) / prod Gamma(den) in log space; 0 if a denominator sits on a pole.
template <std::size_t N, std::size_t M>
inline cplx gamma_ratio(const std::array<cplx, N>& num, const std::array<cplx, M>& den) {
  cplx s = 0;
  for (auto d : den) {
    if (is_nonpos_int(d)) return 0.0;
    s -= log_gamma(d);
  }
  for (auto n : num) s += log_gamma(n);
  return std::exp(s);
}

// distance of x from the nearest integer
inline double int_dist(cplx x) { return std::abs(x - std::round(x.real())); }

struct Part {
  cplx value;
  double abs_value;
  bool converged;
};

inline Part series_part(cplx a, cplx b, cplx c, cplx x) {
  auto s = hyp_series(a, b, c, x);
  return {s.sum, s.abs_sum, s.converged};
}

// z -> 1-z connection, non-degenerate c-a-b.
inline Part one_minus_raw(cplx a, cplx b, cplx c, cplx x) {
  cplx y = 1.0 - x;
  cplx g0 = gamma_ratio<2, 2>({c, c - a - b}, {c - a, c - b});
  cplx g1 = gamma_ratio<2, 2>({c, a + b - c}, {a, b});
  Part r{0, 0, true};
  if (g0 != 0.0) {
    auto s = hyp_series(a, b, a + b - c + 1.0, y);
    r.value += g0 * s.sum;
    r.abs_value += std::abs(g0) * s.abs_sum;
    r.converged = r.converged && s.converged;
  }
  if (g1 != 0.0) {
    auto s = hyp_series(c - a, c - b, c - a - b + 1.0, y);
    cplx p = std::exp((c - a - b) * std::log(y));
    r.value += g1 * p * s.sum;
    r.abs_value += std::abs(g1 * p) * s.abs_sum;
    r.converged = r.converged && s.converged;
  }
  return r;
}

// z -> 1/z connection, non-degenerate a-b.
inline Part inverse_raw(cplx a, cplx b, cplx c, cplx x) {
  cplx y = 1.0 / x;
  cplx lmx = std::log(-x);
  cplx g0 = gamma_ratio<2, 2>({c, b - a}, {b, c - a});
  cplx g1 = gamma_ratio<2, 2>({c, a - b}, {a, c - b});
  Part r{0, 0, true};
  if (g0 != 0.0) {
    auto s = hyp_series(a, a - c + 1.0, a - b + 1.0, y);
    cplx p = std::exp(-a * lmx);
    r.value += g0 * p * s.sum;
    r.abs_value += std::abs(g0 * p) * s.abs_sum;
    r.converged = r.converged && s.converged;
  }
  if (g1 != 0.0) {
    auto s = hyp_series(b, b - c + 1.0, b - a + 1.0, y);
    cplx p = std::exp(-b * lmx);
    r.value += g1 * p * s.sum;
    r.abs_value += std::abs(g1 * p) * s.abs_sum;
    r.converged = r.converged && s.converged;
  }
  return r;
}

inline Part average(const Part& p, const Part& q) {
  return {0.5 * (p.value + q.value), 0.5 * (p.abs_value + q.abs_value), p.converged && q.converged};
}

// Limit at a degenerate parameter: the +-i e average is even in e, so one Richardson
// step over e and 2e removes the e^2 term. A larger e keeps the 1/e cancellation small.
template <class Raw>
inline Part symmetric_limit(Raw raw) {
  double e = tolerances().eps_connection;
  Part p1 = average(raw(cplx(0, e)), raw(cplx(0, -e)));
  Part p2 = average(raw(cplx(0, 2 * e)), raw(cplx(0, -2 * e)));
  return {(4.0 * p1.value - p2.value) / 3.0, (4 * p1.abs_value + p2.abs_value) / 3, p1.converged && p2.converged};
}

inline Part one_minus_part(cplx a, cplx b, cplx c, cplx x, bool& degenerate) {
  const auto& tol = tolerances();
  if (int_dist(c - a - b) < 0.1 * tol.eps_connection) {
    degenerate = true;
    return symmetric_limit([&](cplx e) { return one_minus_raw(a, b, c + e, x); });
  }
  return one_minus_raw(a, b, c, x);
}

inline Part inverse_part(cplx a, cplx b, cplx c, cplx x, bool& degenerate) {
  const auto& tol = tolerances();
  if (int_dist(a - b) < 0.1 * tol.eps_connection) {
    degenerate = true;
    return symmetric_limit([&](cplx e) { return inverse_raw(a + e, b, c, x); });
  }
  return inverse_raw(a, b, c, x);
}

}  // namespace detail

F21Result f21_detail(const HypParams& p, cplx z);

namespace detail {

// Taylor re-expansion of the ODE solution around z0, used in the small
// neighbourhood of exp(+-i pi/3) where no transformed argument is small.
inline F21Result taylor_step(const HypParams& p, cplx z) {
  cplx z0(0.5, z.imag() >= 0 ? 0.5 : -0.5);
  auto f0 = f21_detail(p, z0);
  auto d0 = f21_detail({p.a + 1.0, p.b + 1.0, p.c + 1.0}, z0);
  cplx ab = p.a * p.b;
  cplx c0 = f0.value, c1 = ab / p.c * d0.value;
  cplx P0 = z0 * (1.0 - z0), P1 = 1.0 - 2.0 * z0;
  cplx Q0 = p.c - (p.a + p.b + 1.0) * z0, Q1 = -(p.a + p.b + 1.0);
  cplx h = z - z0;
  cplx sum = c0 + c1 * h, hn = h;
  double abs_sum = std::abs(c0) + std::abs(c1 * h);
  cplx cm = c0, cn = c1;
  int small = 0;
  F21Result r;
  r.route = F21Route::taylor;
  r.converged = false;
  for (int n = 0; n < 2 * tolerances().series_cap; ++n) {
    double dn = n;
    cplx next = (-(P1 * dn + Q0) * (dn + 1.0) * cn + (dn * (dn - 1.0) - Q1 * dn + ab) * cm) /
                (P0 * (dn + 1.0) * (dn + 2.0));
    hn *= h;
    cplx t = next * hn;
    sum += t;
    abs_sum += std::abs(t);
    cm = cn;
    cn = next;
    if (std::abs(t) < tolerances().series_rel * std::abs(sum)) {
      if (++small == 3) {
        r.converged = true;
        break;
      }
    } else {
      small = 0;
    }
  }
  r.value = sum;
  r.cond = std::max(f0.cond, d0.cond) * abs_sum / std::max(std::abs(sum), 1e-300);
  r.degenerate = f0.degenerate || d0.degenerate;
  r.converged = r.converged && f0.converged && d0.converged;
  return r;
}

}  // namespace detail

/// 2F1(a,b;c;z) with principal branch, cut on [1, inf).
inline F21Result f21_detail(const HypParams& p, cplx z) {
  using namespace detail;
  const auto& tol = tolerances();
  if (is_nonpos_int(p.c)) throw std::domain_error("f21: c is a non-positive integer");
  F21Result r;
  if (z == 0.0) {
    r.value = 1;
    return r;
  }
  // on the cut take the limit from above; a tiny offset keeps the sign of
  // zero straight through the Pfaff and inversion maps
  if (z.imag() == 0.0 && z.real() > 1.0) z = cplx(z.real(), 1e-250);

  // a or b a non-positive integer: a polynomial, summed directly
  if (is_nonpos_int(p.a) || is_nonpos_int(p.b)) {
    auto s = hyp_series(p.a, p.b, p.c, z);
    r.value = s.sum;
    r.cond = s.abs_sum / std::max(std::abs(s.sum), 1e-300);
    r.converged = s.converged;
    return r;
  }

  cplx w = z / (z - 1.0);  // Pfaff argument
  struct Cand {
    double m;
    F21Route route;
  };
  std::array<Cand, 6> cands{{{std::abs(z), F21Route::series},
                             {std::abs(w), F21Route::pfaff_series},
                             {std::abs(1.0 - z), F21Route::one_minus},
                             {std::abs(1.0 - w), F21Route::pfaff_one_minus},
                             {1.0 / std::abs(z), F21Route::inverse},
                             {1.0 / std::abs(w), F21Route::pfaff_inverse}}};
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.m < y.m; });

  auto eval = [&](F21Route route) {
    bool pf = route == F21Route::pfaff_series || route == F21Route::pfaff_one_minus ||
              route == F21Route::pfaff_inverse;
    cplx a = p.a, b = pf ? p.c - p.b : p.b, c = p.c, x = pf ? w : z;
    Part part{};
    bool deg = false;
    switch (route) {
      case F21Route::series:
      case F21Route::pfaff_series: part = series_part(a, b, c, x); break;
      case F21Route::one_minus:
      case F21Route::pfaff_one_minus: part = one_minus_part(a, b, c, x, deg); break;
      default: part = inverse_part(a, b, c, x, deg); break;
    }
    cplx pre = pf ? std::exp(-a * std::log(1.0 - z)) : cplx(1.0);
    F21Result q;
    q.value = pre * part.value;
    q.cond = part.abs_value / std::max(std::abs(part.value), 1e-300);
    q.degenerate = deg;
    q.converged = part.converged;
    q.route = route;
    return q;
  };
  auto better = [](const F21Result& x, const F21Result& y) {
    if (x.converged != y.converged) return x.converged;
    return x.cond < y.cond;
  };

  // Smallest transformed argument first; when that route cancels badly
  // (large parameters) try the other convergent routes and keep the best.
  bool have = false;
  if (cands[0].m > tol.series_radius) {
    r = taylor_step(p, z);
    have = true;
    if (r.converged && r.cond < tol.route_cond) return r;
  }
  for (const auto& cd : cands) {
    if (have && cd.m > tol.route_radius) break;
    auto q = eval(cd.route);
    if (!have || better(q, r)) r = q;
    have = true;
    if (r.converged && r.cond < tol.route_cond) break;
  }
  return r;
}

inline cplx f21(const HypParams& p, cplx z) { return f21_detail(p, z).value; }

/// d/dz 2F1 = (ab/c) 2F1(a+1,b+1;c+1;z)
inline cplx f21_dz(const HypParams& p, cplx z) {
  if (p.a == 0.0 || p.b == 0.0) return 0.0;
  return p.a * p.b / p.c * f21({p.a + 1.0, p.b + 1.0, p.c + 1.0}, z);
}

}  // namespace chyp
