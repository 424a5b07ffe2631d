#pragma once
// Planar quadrature for integrands with power-law point singularities and
// algebraic decay, a midpoint/Richardson oracle, and the Mellin transform on C^x.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "complex_field.hpp"
#include "parallel.hpp"

namespace chyp {

// ---- Gauss-Legendre rules -------------------------------------------------

struct GaussRule {
  std::vector<double> x, w;  // on [-1, 1]
};

namespace detail {
inline GaussRule make_gauss_legendre(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5)), dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p1 = x, p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = 2 / ((1 - x * x) * dp * dp);
  }
  return r;
}
}  // namespace detail

inline const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::make_gauss_legendre(n)).first;
  return it->second;
}

/// Composite Gauss-Legendre nodes on [lo, hi]: `panels` panels of n nodes.
inline void composite_gauss(double lo, double hi, int panels, int n, std::vector<double>& x,
                            std::vector<double>& w) {
  const auto& g = gauss_legendre(n);
  double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    double c = lo + (p + 0.5) * h;
    for (int i = 0; i < n; ++i) {
      x.push_back(c + 0.5 * h * g.x[i]);
      w.push_back(0.5 * h * g.w[i]);
    }
  }
}

// ---- planar integration ---------------------------------------------------------

struct QuadSpec {
  double target_rel_error = 1e-8;
  int max_cells = 20000;
  double inner_radius = 0.2;  // polar patch size at the singular points
  double outer_radius = 8;    // minimum truncation radius R
  double tail_exponent = 0;   // |g| <= C |z|^{-p} beyond R; 0 means compact support inside R

  void validate() const {
    if (!(inner_radius > 0 && inner_radius < 0.25)) throw std::invalid_argument("QuadSpec: inner_radius in (0, 0.25)");
    if (!(outer_radius > 4)) throw std::invalid_argument("QuadSpec: outer_radius > 4");
    if (!(target_rel_error > 0)) throw std::invalid_argument("QuadSpec: target_rel_error > 0");
  }
};

/// |g(z)| ~ |z - center|^exponent near center. `local(w)` = g(center + w) evaluated
/// without forming center + w; without it the patch stops at |w| ~ 1e-9 |center|.
struct PointSingularity {
  cplx center;
  double exponent;
  std::function<cplx(cplx)> local = nullptr;
};

struct PlanarIntegrand {
  std::function<cplx(cplx)> g;
  double exponent_at_zero = 0;             // |g| ~ |z|^p0 as z -> 0
  std::vector<PointSingularity> others;    // e.g. {1, p1}
};

struct QuadResult {
  cplx value{0};
  double error = 0;      // quadrature estimate plus the truncation bounds
  double tail_bound = 0;
  int cells = 0;
  bool converged = false;
  std::string diagnostic;
};

namespace detail {

// C-infinity step: 1 on [0, 1/2], 0 on [1, inf)
inline double smooth_cutoff(double x) {
  if (x <= 0.5) return 1;
  if (x >= 1) return 0;
  double y = 2 * x - 1;
  double e1 = std::exp(-1 / y), e2 = std::exp(-1 / (1 - y));
  return e2 / (e1 + e2);
}

struct Chart {
  cplx center;
  std::function<cplx(double, double)> f;  // integrand in (t, theta), Jacobian included
};

struct Cell {
  int chart;
  double t0, t1, th0, th1;
  cplx value;
  double error;
  long id;
};

inline std::pair<cplx, double> cell_rule(const Chart& c, double t0, double t1, double th0, double th1) {
  const auto& hi = gauss_legendre(8);
  const auto& lo = gauss_legendre(5);
  auto apply = [&](const GaussRule& r) {
    cplx s = 0;
    double ht = 0.5 * (t1 - t0), hth = 0.5 * (th1 - th0);
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      double t = t0 + ht * (1 + r.x[i]);
      cplx row = 0;
      for (std::size_t j = 0; j < r.x.size(); ++j) row += r.w[j] * c.f(t, th0 + hth * (1 + r.x[j]));
      s += r.w[i] * row;
    }
    return s * ht * hth;
  };
  cplx h = apply(hi), l = apply(lo);
  return {h, std::abs(h - l)};
}

}  // namespace detail

/// Integral over C of g d^2z. Log-polar charts (r = e^t) around 0 and around each
/// declared singular point, glued by a smooth partition of unity; adaptive tensor
/// Gauss-Legendre cells; the part near 0 and beyond R is bounded analytically.
inline QuadResult integrate_plane(const PlanarIntegrand& in, const QuadSpec& spec) {
  spec.validate();
  QuadResult res;
  double p0 = in.exponent_at_zero;
  if (p0 <= -2) throw std::invalid_argument("integrate_plane: non-integrable singularity at 0");
  for (auto& s : in.others)
    if (s.exponent <= -2) throw std::invalid_argument("integrate_plane: non-integrable point singularity");
  if (spec.tail_exponent != 0 && spec.tail_exponent <= 2)
    throw std::invalid_argument("integrate_plane: decay exponent must exceed 2");

  // patch radii: inner_radius, shrunk so patches stay disjoint and away from 0
  std::vector<double> rad;
  for (std::size_t i = 0; i < in.others.size(); ++i) {
    double d = std::abs(in.others[i].center);
    for (std::size_t j = 0; j < in.others.size(); ++j)
      if (j != i) d = std::min(d, 0.5 * std::abs(in.others[i].center - in.others[j].center));
    rad.push_back(std::min(spec.inner_radius, 0.45 * d));
  }
  auto chi = [&](std::size_t i, cplx z) {
    return detail::smooth_cutoff(std::abs(z - in.others[i].center) / rad[i]);
  };
  auto outside_patches = [&](cplx z) {
    double w = 1;
    for (std::size_t i = 0; i < in.others.size(); ++i) w -= chi(i, z);
    return w;
  };

  double target = spec.target_rel_error;
  auto ring_max = [&](cplx c, double r) {
    double m = 0;
    for (int j = 0; j < 16; ++j) m = std::max(m, std::abs(in.g(c + std::polar(r, 2 * pi * (j + 0.5) / 16))));
    return m;
  };
  // rough size of the integral, used to place the truncations
  double scale = 0;
  for (double r : {0.5, 1.0, 2.0}) {
    double m = 0;
    for (int j = 0; j < 16; ++j) m += std::abs(in.g(std::polar(r, 2 * pi * (j + 0.5) / 16))) / 16;
    scale = std::max(scale, pi * r * r * m);
  }
  if (scale == 0) scale = 1;
  // |g| <= C r^p near a singular point: the disc of radius r carries at most 2 pi C r^{p+2}/(p+2)
  auto lower_t = [&](double p, double r_ref, double C) {
    if (C == 0) return std::log(0.5 * r_ref);
    double r = std::pow(1e-3 * target * scale * (p + 2) / (2 * pi * C), 1.0 / (p + 2));
    return std::log(std::clamp(r, 1e-300, 0.5 * r_ref));
  };

  std::vector<detail::Chart> charts;
  std::vector<double> t_lo, t_hi;
  // chart 0: polar around the origin
  double r_ref0 = spec.inner_radius;
  double C0 = ring_max(0.0, r_ref0) / std::pow(r_ref0, p0);
  double tmin0 = lower_t(p0, r_ref0, C0);
  double tail = 0;
  double R = spec.outer_radius;
  if (spec.tail_exponent > 2) {
    // extend R in log scale until the analytic tail is small
    for (int it = 0; it < 200; ++it) {
      double C = ring_max(0.0, R) * std::pow(R, spec.tail_exponent);
      tail = 2 * pi * C * std::pow(R, 2 - spec.tail_exponent) / (spec.tail_exponent - 2);
      if (tail < 1e-3 * target * scale || R > 1e150) break;
      R *= 4;
    }
  }
  res.tail_bound = tail;
  charts.push_back({0.0, [&, outside_patches](double t, double th) {
                      cplx z = std::polar(std::exp(t), th);
                      double w = outside_patches(z);
                      if (w == 0) return cplx(0);
                      return w * in.g(z) * std::exp(2 * t);
                    }});
  t_lo.push_back(tmin0);
  t_hi.push_back(std::log(R));
  double remainder = 2 * pi * C0 * std::pow(std::exp(tmin0), p0 + 2) / (p0 + 2);
  for (std::size_t i = 0; i < in.others.size(); ++i) {
    cplx c = in.others[i].center;
    double p = in.others[i].exponent;
    double Ci = ring_max(c, 0.5 * rad[i]) / std::pow(0.5 * rad[i], p);
    double tm = lower_t(p, 0.5 * rad[i], Ci);
    if (!in.others[i].local) tm = std::max(tm, std::log(1e-9 * std::abs(c)));
    remainder += 2 * pi * Ci * std::pow(std::exp(tm), p + 2) / (p + 2);
    charts.push_back({c, [&, i, c](double t, double th) {
                        cplx off = std::polar(std::exp(t), th);
                        double w = detail::smooth_cutoff(std::exp(t) / rad[i]);
                        if (w == 0) return cplx(0);
                        auto& loc = in.others[i].local;
                        return w * (loc ? loc(off) : in.g(c + off)) * std::exp(2 * t);
                      }});
    t_lo.push_back(tm);
    t_hi.push_back(std::log(rad[i]));
  }

  // initial cells: unit steps in t (split at t = 0), quarters in theta
  std::vector<detail::Cell> cells;
  long next_id = 0;
  auto make = [&](int ch, double t0, double t1, double a0, double a1) {
    auto [v, e] = detail::cell_rule(charts[ch], t0, t1, a0, a1);
    return detail::Cell{ch, t0, t1, a0, a1, v, e, next_id++};
  };
  for (std::size_t ch = 0; ch < charts.size(); ++ch) {
    std::vector<double> cuts{t_lo[ch]};
    for (double t = std::ceil(t_lo[ch]); t < t_hi[ch]; t += 1.0)
      if (t > cuts.back() + 1e-9) cuts.push_back(t);
    if (t_hi[ch] > cuts.back() + 1e-9) cuts.push_back(t_hi[ch]);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
      for (int q = 0; q < 4; ++q)
        cells.push_back(make(int(ch), cuts[k], cuts[k + 1], -pi + q * pi / 2, -pi + (q + 1) * pi / 2));
  }

  auto cmp = [](const detail::Cell& x, const detail::Cell& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.id > y.id;  // deterministic tie-break: older first
  };
  std::priority_queue<detail::Cell, std::vector<detail::Cell>, decltype(cmp)> queue(cmp, cells);
  auto totals = [&]() {
    std::vector<detail::Cell> all;
    auto copy = queue;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](auto& x, auto& y) { return x.id < y.id; });
    cplx v = 0;
    double e = 0;
    for (auto& c : all) v += c.value, e += c.error;
    return std::pair<cplx, double>{v, e};
  };
  // running totals (re-summed exactly at the end)
  cplx v = 0;
  double err = 0;
  for (auto& c : cells) v += c.value, err += c.error;
  int ncells = int(cells.size());
  while (ncells < spec.max_cells) {
    if (err + remainder + tail <= target * std::abs(v)) break;
    auto c = queue.top();
    queue.pop();
    v -= c.value;
    err -= c.error;
    double tm = 0.5 * (c.t0 + c.t1), am = 0.5 * (c.th0 + c.th1);
    detail::Cell kids[4] = {make(c.chart, c.t0, tm, c.th0, am), make(c.chart, tm, c.t1, c.th0, am),
                            make(c.chart, c.t0, tm, am, c.th1), make(c.chart, tm, c.t1, am, c.th1)};
    for (auto& k : kids) {
      v += k.value;
      err += k.error;
      queue.push(k);
    }
    ncells += 3;
  }
  auto [vt, et] = totals();
  res.value = vt;
  res.error = et + remainder + tail;
  res.cells = ncells;
  res.converged = res.error <= target * std::abs(vt) || res.error < 1e-300;
  if (!res.converged) res.diagnostic = "cell budget exhausted; partial value returned";
  return res;
}

// ---- oracle ------------------------------------------------------------------------

struct Rect {
  double x0, x1, y0, y1;
};

/// Tensor midpoint rule at n, 2n, 4n cells per side with two Richardson levels.
inline cplx oracle_integrate(const std::function<cplx(double, double)>& g, const Rect& r, int n = 64) {
  auto mid = [&](int m) {
    double hx = (r.x1 - r.x0) / m, hy = (r.y1 - r.y0) / m;
    std::vector<cplx> rows(m);
    parallel_for(std::size_t(m), [&](std::size_t i) {
      cplx s = 0;
      double x = r.x0 + (i + 0.5) * hx;
      for (int j = 0; j < m; ++j) s += g(x, r.y0 + (j + 0.5) * hy);
      rows[i] = s;
    });
    return tree_sum(rows) * hx * hy;
  };
  cplx m1 = mid(n), m2 = mid(2 * n), m4 = mid(4 * n);
  cplx r1 = (4.0 * m2 - m1) / 3.0, r2 = (4.0 * m4 - m2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

/// Plain midpoint value at m cells per side, exposed for convergence-order studies.
inline cplx midpoint_rule(const std::function<cplx(double, double)>& g, const Rect& r, int m) {
  double hx = (r.x1 - r.x0) / m, hy = (r.y1 - r.y0) / m;
  cplx s = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) s += g(r.x0 + (i + 0.5) * hx, r.y0 + (j + 0.5) * hy);
  return s * hx * hy;
}

// ---- Mellin transform on C^x ----------------------------------------------------------

struct MellinPoint {
  long k = 0;
  double s = 0;
};

/// (1/2pi) int g(z) z^{mu-1|mu'-1} d^2z, mu = (k+is)/2: a Fourier coefficient in
/// (theta, rho = log|z|). g must vanish outside r0 <= |z| <= r1.
inline cplx mellin_c(const std::function<cplx(cplx)>& g, MellinPoint pt, double r0, double r1) {
  if (!(r0 > 0) || !std::isfinite(r1) || r1 <= r0)
    throw std::invalid_argument("mellin_c: support must be an annulus 0 < r0 < r1 < inf");
  double L = std::log(r1) - std::log(r0);
  int nth = int(64 + 4 * std::abs(pt.k));
  int panels = int(std::ceil(L * (2 + std::abs(pt.s) / 4)));
  std::vector<double> rho, wr;
  composite_gauss(std::log(r0), std::log(r1), std::max(panels, 4), 16, rho, wr);
  std::vector<cplx> rows(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    cplx s = 0;
    for (int j = 0; j < nth; ++j) {
      double th = -pi + 2 * pi * j / nth;
      s += g(std::polar(std::exp(rho[i]), th)) * std::polar(1.0, pt.k * th);
    }
    rows[i] = s * (2 * pi / nth) * wr[i] * std::polar(1.0, pt.s * rho[i]);
  }
  return tree_sum(rows) / (2 * pi);
}

/// z = zeta(p) = (p+1)^2/(4p); used to read kernel asymptotics in the p-plane.
inline cplx zeta_of(cplx p) { return (p + 1.0) * (p + 1.0) / (4.0 * p); }
/// Inverse branch with |p| >= 1: p = t_+/t_-, t_+- = 1 +- sqrt(1 - 1/z).
inline cplx zeta_inverse(cplx z) {
  cplx r = std::sqrt(1.0 - 1.0 / z);
  cplx p = (1.0 + r) / (1.0 - r);
  return std::abs(p) >= 1 ? p : 1.0 / p;
}

}  // namespace chyp
