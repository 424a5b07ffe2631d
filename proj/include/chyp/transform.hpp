#pragma once
// The index transform J_{a,b}, its adjoint, test functions and spectral grids.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "quadrature.hpp"
#include "spectral.hpp"

namespace chyp {

// ---- test functions ---------------------------------------------------------------

/// Closed-form function on C minus {0,1}, vanishing outside the sector
/// r_min <= |z| <= r_max, |arg z - theta0| <= theta_half.
struct PlanarFunction {
  std::function<cplx(cplx)> eval;
  double r_min = 1, r_max = 2;
  double theta0 = 0, theta_half = pi;

  cplx operator()(cplx z) const { return eval(z); }
  bool avoids_singular_points() const {
    if (!(r_min > 0)) return false;
    if (r_min > 1 || r_max < 1) return true;
    return theta_half < pi && std::abs(std::remainder(theta0, 2 * pi)) > theta_half;
  }
};

/// exp(-alpha (log|z/z0|)^2 - beta angdist(arg z, arg z0)^2), cut off at the window edge
/// where it has fallen to e^{-37}.
struct LogPolarBump {
  cplx center{4, 0};
  double log_width = 1, angular_width = 1;
  double amplitude = 1;

  double rho0() const { return std::log(std::abs(center)); }
  double theta0() const { return std::arg(center); }
  double alpha() const { return 37 / (log_width * log_width); }
  double beta() const { return 37 / (angular_width * angular_width); }

  cplx operator()(cplx z) const {
    if (z == 0.0 || amplitude == 0) return 0.0;
    double x = std::log(std::abs(z)) - rho0();
    double y = std::remainder(std::arg(z) - theta0(), 2 * pi);
    if (std::abs(x) >= log_width || std::abs(y) >= angular_width) return 0.0;
    return amplitude * std::exp(-alpha() * x * x - beta() * y * y);
  }
  PlanarFunction as_function() const {
    if (!(log_width > 0) || !(angular_width > 0) || angular_width > pi)
      throw std::invalid_argument("LogPolarBump: widths must be positive, angular width <= pi");
    auto self = *this;
    return {[self](cplx z) { return self(z); }, std::abs(center) * std::exp(-log_width),
            std::abs(center) * std::exp(log_width), theta0(), angular_width};
  }
};

/// Tensor Gauss-Legendre nodes over the support window in (rho, theta); w includes e^{2 rho}.
struct PlaneNodes {
  std::vector<cplx> z;
  std::vector<double> w;
};

inline PlaneNodes plane_nodes(const PlanarFunction& f, int n_rho, int n_theta, int panels = 1) {
  PlaneNodes out;
  std::vector<double> rho, wr, th, wt;
  composite_gauss(std::log(f.r_min), std::log(f.r_max), panels, n_rho, rho, wr);
  composite_gauss(f.theta0 - f.theta_half, f.theta0 + f.theta_half, panels, n_theta, th, wt);
  for (std::size_t i = 0; i < rho.size(); ++i)
    for (std::size_t j = 0; j < th.size(); ++j) {
      out.z.push_back(std::polar(std::exp(rho[i]), th[j]));
      out.w.push_back(wr[i] * wt[j] * std::exp(2 * rho[i]));
    }
  return out;
}

/// <f, g>_mu = int f conj(g) mu d^2z by tensor quadrature on the common window of f.
inline cplx inner_mu(const PlanarFunction& f, const std::function<cplx(cplx)>& g, const ParamsAB& p, int n = 96) {
  auto nd = plane_nodes(f, n, n);
  std::vector<cplx> t(nd.z.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    cplx fz = f(nd.z[i]);
    t[i] = fz == 0.0 ? cplx(0) : fz * std::conj(g(nd.z[i])) * mu_weight(nd.z[i], p) * nd.w[i];
  }
  return tree_sum(t);
}

// ---- fast kernel on Lambda ----------------------------------------------------------

/// K(z; k, is) for |z| large enough, via the expansion at infinity. With
/// w = 1/z, f_A = F(a+lam, lam+1-b; 1+2lam; w), f_B = F(a-lam, 1-b-lam; 1-2lam; w):
/// K = k0 (-z)^{-A} f_A conj(f_B) + k1 (-z)^{-B} f_B conj(f_A), the series
/// coefficients being fixed per lambda.
class KernelOnLambda {
 public:
  KernelOnLambda(const LambdaPoint& l, const ParamsAB& p, double w_max) : l_(l), p_(p) {
    fast_ = l.is_unitary() && std::abs(l.sigma.imag()) >= 1e-3 && w_max <= 0.8;
    if (!fast_) return;
    cplx lam = l.lambda();
    auto hp = kernel_params(l, p);
    auto g = [](const Bidegree& q) { return gamma_c(q); };
    auto K0 = g(hp.b - hp.a) / (g(hp.c - hp.a) * g(hp.b));
    auto K1 = g(hp.a - hp.b) / (g(hp.c - hp.b) * g(hp.a));
    if (K0.order != 0 || K1.order != 0) {
      fast_ = false;
      return;
    }
    k0_ = K0.value;
    k1_ = K1.value;
    series(p.a + lam, lam + 1.0 - p.b, 1.0 + 2.0 * lam, w_max, cA_);
    series(p.a - lam, 1.0 - p.b - lam, 1.0 - 2.0 * lam, w_max, cB_);
    if (cA_.empty() || cB_.empty()) {
      fast_ = false;
      return;
    }
    w_max_ = w_max;
    lenA_ = lengths(cA_, w_max);
    lenB_ = lengths(cB_, w_max);
  }

  bool fast() const { return fast_; }

  /// z-dependent pieces shared by every lambda
  struct Point {
    cplx z, w;
    double log_r, phi, m;  // log|z|, arg(-z), |z|^{-2a}
    Point(cplx z_, double a) : z(z_), w(1.0 / z_), log_r(std::log(std::abs(z_))), phi(std::arg(-z_)),
                               m(std::pow(std::abs(z_), -2 * a)) {}
  };

  cplx operator()(const Point& q) const {
    if (!fast_) return kernel_K(q.z, l_, p_);
    std::size_t lv = level(std::abs(q.w));
    cplx fA = horner(cA_, lenA_[lv], q.w), fB = horner(cB_, lenB_[lv], q.w);
    cplx e = std::polar(q.m, -(l_.sigma.imag() * q.log_r + double(l_.k) * q.phi));
    return k0_ * e * fA * std::conj(fB) + k1_ * std::conj(e) * fB * std::conj(fA);
  }
  cplx operator()(cplx z) const { return fast_ ? (*this)(Point(z, p_.a)) : kernel_K(z, l_, p_); }

 private:
  static void series(cplx a, cplx b, cplx c, double w_max, std::vector<cplx>& out) {
    cplx t = 1;
    out.push_back(t);
    double acc = 1;
    int small = 0;
    for (int n = 0; n < 4000; ++n) {
      t *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1));
      out.push_back(t);
      double tb = std::abs(t) * std::pow(w_max, n + 1);
      acc = std::max(acc, tb);
      if (tb < 1e-17 * acc) {
        if (++small == 3) return;
      } else {
        small = 0;
      }
    }
    out.clear();
  }
  // series length needed for |w| up to each of kLevels equally spaced levels
  static constexpr std::size_t kLevels = 32;
  std::size_t level(double aw) const {
    return std::min(kLevels - 1, std::size_t(std::max(0.0, std::ceil(aw / w_max_ * kLevels) - 1)));
  }
  static std::vector<std::size_t> lengths(const std::vector<cplx>& c, double w_max) {
    std::vector<std::size_t> len(kLevels);
    for (std::size_t l = 0; l < kLevels; ++l) {
      double x = w_max * double(l + 1) / kLevels, big = 0, xn = 1;
      std::vector<double> t(c.size());
      for (std::size_t n = 0; n < c.size(); ++n, xn *= x) big = std::max(big, t[n] = std::abs(c[n]) * xn);
      std::size_t n = c.size();
      double tail = 0;
      while (n > 1 && tail + t[n - 1] < 1e-17 * big) tail += t[--n];
      len[l] = n;
    }
    return len;
  }
  static cplx horner(const std::vector<cplx>& c, std::size_t n, cplx w) {
    cplx s = c[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) s = s * w + c[i];
    return s;
  }

  LambdaPoint l_;
  ParamsAB p_;
  bool fast_ = false;
  cplx k0_, k1_;
  double w_max_ = 0;
  std::vector<cplx> cA_, cB_;
  std::vector<std::size_t> lenA_, lenB_;
};

// ---- spectral grids -------------------------------------------------------------------

/// k in [-k_max, k_max], s on Gauss-Legendre panels over [-s_max, s_max]. The nodes
/// are symmetric in s, so (-k, -s) is again a grid point.
struct SpectralGrid {
  long k_max = 32;
  double s_max = 40;
  double panel = 1;  // panel width in s
  int nodes = 8;     // nodes per panel

  std::vector<double> s, ws;

  void build() {
    if (k_max < 0 || !(s_max > 0) || !(panel > 0) || nodes < 1)
      throw std::invalid_argument("SpectralGrid: bad truncation");
    s.clear();
    ws.clear();
    int np = std::max(1, int(std::lround(2 * s_max / panel)));
    composite_gauss(-s_max, s_max, np, nodes, s, ws);
  }
  std::size_t ns() const { return s.size(); }
  std::size_t size() const { return std::size_t(2 * k_max + 1) * ns(); }
  std::size_t index(long k, std::size_t j) const { return std::size_t(k + k_max) * ns() + j; }
  LambdaPoint point(long k, std::size_t j) const { return {k, cplx(0, s[j])}; }
  // mirror of node j
  std::size_t mirror(std::size_t j) const { return ns() - 1 - j; }
  // one representative per (k,s) ~ (-k,-s) pair: k > 0, or k = 0 with s > 0
  bool representative(long k, std::size_t j) const { return k > 0 || (k == 0 && s[j] > 0); }
};

struct SpectralFunction {
  SpectralGrid grid;
  ParamsAB params;
  std::vector<cplx> values;
  std::vector<double> kappa;
  std::optional<cplx> discrete_value;  // F at lambda = (a|a) when the point is present
  double tail = 0;                     // max |F| on the outer rim of the grid

  cplx at(long k, std::size_t j) const { return values[grid.index(k, j)]; }

  /// c sum_k int F conj(G) kappa ds over the stored grid (c the measure factor), plus
  /// the delta masses.
  cplx inner(const SpectralFunction& g) const {
    std::vector<cplx> t(values.size());
    for (long k = -grid.k_max; k <= grid.k_max; ++k)
      for (std::size_t j = 0; j < grid.ns(); ++j) {
        auto i = grid.index(k, j);
        t[i] = values[i] * std::conj(g.values[i]) * kappa[i] * grid.ws[j];
      }
    cplx r = plancherel_measure_factor * tree_sum(t);
    if (discrete_value && g.discrete_value) {
      auto dp = discrete_point(params);
      r += 2 * dp->mass * *discrete_value * std::conj(*g.discrete_value);
    }
    return r;
  }
  double norm2() const { return inner(*this).real(); }
  /// the continuous part only
  double norm2_continuous() const {
    auto c = *this;
    c.discrete_value.reset();
    return c.norm2();
  }
  bool even(double tol = 0) const {
    for (long k = -grid.k_max; k <= grid.k_max; ++k)
      for (std::size_t j = 0; j < grid.ns(); ++j)
        if (std::abs(at(k, j) - at(-k, grid.mirror(j))) > tol) return false;
    return true;
  }
};

inline std::vector<double> density_on_grid(const SpectralGrid& g, const ParamsAB& p) {
  std::vector<double> k(g.size());
  for (long kk = -g.k_max; kk <= g.k_max; ++kk)
    for (std::size_t j = 0; j < g.ns(); ++j) k[g.index(kk, j)] = plancherel_density(g.point(kk, j), p);
  return k;
}

// ---- forward transform -----------------------------------------------------------------

struct TransformResult {
  cplx value;
  double error;
  bool converged;
  std::string diagnostic;
};

/// J f(lam) = int K(z, lam) f(z) mu(z) d^2z by adaptive planar quadrature.
inline TransformResult forward_transform(const PlanarFunction& f, const LambdaPoint& lam, const ParamsAB& p,
                                         const QuadSpec& q) {
  if (!p.in_Pi()) throw std::invalid_argument("forward_transform: (a,b) outside Pi");
  PlanarIntegrand in;
  in.g = [&](cplx z) {
    if (std::abs(z) < f.r_min || std::abs(z) > f.r_max) return cplx(0);
    cplx v = f(z);
    return v == 0.0 ? v : v * kernel_K(z, lam, p) * mu_weight(z, p);
  };
  QuadSpec s = q;
  s.outer_radius = std::max(s.outer_radius, 1.01 * f.r_max);
  s.tail_exponent = 0;
  auto r = integrate_plane(in, s);
  return {r.value, r.error, r.converged, r.diagnostic};
}

/// Precomputed node set for repeated transforms of one function.
struct NodeSet {
  std::vector<KernelOnLambda::Point> pts;
  std::vector<cplx> fmw;  // f mu w
  double w_max = 0;       // max |1/z| over the nodes
};

inline NodeSet node_set(const PlanarFunction& f, const ParamsAB& p, int n_rho, int n_theta) {
  auto nd = plane_nodes(f, n_rho, n_theta);
  NodeSet s;
  double big = 0;
  std::vector<cplx> v(nd.z.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    cplx fz = f(nd.z[i]);
    v[i] = fz == 0.0 ? cplx(0) : fz * mu_weight(nd.z[i], p) * nd.w[i];
    big = std::max(big, std::abs(v[i]));
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > 1e-17 * big) {
      s.pts.emplace_back(nd.z[i], p.a);
      s.fmw.push_back(v[i]);
      s.w_max = std::max(s.w_max, 1 / std::abs(nd.z[i]));
    }
  return s;
}

/// Tensor rule size along one axis: the integrand oscillates about freq*width/2pi times
/// over the window; 32 nodes resolve the bump itself.
inline int nodes_for(double freq, double half_width) {
  int n = 32 + int(std::ceil(0.5 * std::abs(freq) * 2 * half_width));
  return std::min(128, (n + 7) / 8 * 8);
}

/// Jf on a whole grid. Values at (-k,-s) are filled by evenness.
inline SpectralFunction transform_grid(const PlanarFunction& f, const ParamsAB& p, SpectralGrid grid) {
  if (!p.in_Pi()) throw std::invalid_argument("transform_grid: (a,b) outside Pi");
  if (!f.avoids_singular_points()) throw std::invalid_argument("transform_grid: support meets 0 or 1");
  grid.build();
  SpectralFunction F;
  F.grid = grid;
  F.params = p;
  F.values.assign(grid.size(), 0.0);
  F.kappa = density_on_grid(grid, p);
  double hr = 0.5 * std::log(f.r_max / f.r_min);
  std::vector<std::pair<long, std::size_t>> work;
  std::map<std::pair<int, int>, NodeSet> sets;
  for (long k = 0; k <= grid.k_max; ++k)
    for (std::size_t j = 0; j < grid.ns(); ++j)
      if (grid.representative(k, j)) {
        work.push_back({k, j});
        std::pair<int, int> key{nodes_for(grid.s[j], hr), nodes_for(double(k), f.theta_half)};
        if (!sets.count(key)) sets.emplace(key, node_set(f, p, key.first, key.second));
      }
  parallel_for(work.size(), [&](std::size_t w) {
    auto [k, j] = work[w];
    const NodeSet& S = sets.at({nodes_for(grid.s[j], hr), nodes_for(double(k), f.theta_half)});
    KernelOnLambda K(grid.point(k, j), p, S.w_max);
    std::vector<cplx> t(S.pts.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = K(S.pts[i]) * S.fmw[i];
    cplx v = tree_sum(t);
    F.values[grid.index(k, j)] = v;
    F.values[grid.index(-k, grid.mirror(j))] = v;
  });
  if (auto dp = discrete_point(p)) {
    // at lambda = (a|a) the kernel is the constant v(z)
    F.discrete_value = inner_mu(f, [&](cplx) { return cplx(dp->eigenfunction_value); }, p);
  }
  double tail = 0;
  for (long k = -grid.k_max; k <= grid.k_max; ++k)
    for (std::size_t j = 0; j < grid.ns(); ++j)
      if (std::abs(k) == grid.k_max || j == 0 || j + 1 == grid.ns()) tail = std::max(tail, std::abs(F.at(k, j)));
  F.tail = tail;
  return F;
}

// ---- adjoint -------------------------------------------------------------------------

/// J*F(z) = c sum_k int F K(z; k, is) kappa ds over both halves of the grid, c the
/// measure factor, plus the delta-mass term 2 mass F(a|a) v(z) when present.
inline std::vector<cplx> adjoint_transform(const SpectralFunction& F, const std::vector<cplx>& zs) {
  const auto& g = F.grid;
  const auto& p = F.params;
  double w_max = 0;
  for (auto z : zs) {
    if (z == 0.0 || z == 1.0) throw std::domain_error("adjoint_transform: z must avoid {0, 1}");
    w_max = std::max(w_max, 1 / std::abs(z));
  }
  std::vector<std::pair<long, std::size_t>> work;
  for (long k = 0; k <= g.k_max; ++k)
    for (std::size_t j = 0; j < g.ns(); ++j)
      if (g.representative(k, j)) work.push_back({k, j});
  std::vector<KernelOnLambda> kers;
  kers.reserve(work.size());
  for (auto [k, j] : work) kers.emplace_back(g.point(k, j), p, w_max);
  std::vector<cplx> out(zs.size());
  auto dp = discrete_point(p);
  parallel_for(zs.size(), [&](std::size_t i) {
    std::vector<cplx> t(work.size());
    KernelOnLambda::Point q(zs[i], p.a);
    for (std::size_t w = 0; w < work.size(); ++w) {
      auto [k, j] = work[w];
      auto idx = g.index(k, j);
      // the pair (k,s), (-k,-s) contributes twice
      t[w] = 2.0 * plancherel_measure_factor * F.values[idx] * kers[w](q) * F.kappa[idx] * g.ws[j];
    }
    cplx v = tree_sum(t);
    if (dp && F.discrete_value) v += 2 * dp->mass * *F.discrete_value * dp->eigenfunction_value;
    out[i] = v;
  });
  return out;
}

inline cplx adjoint_transform(const SpectralFunction& F, cplx z) { return adjoint_transform(F, std::vector<cplx>{z})[0]; }

}  // namespace chyp
