#pragma once
// Bidegrees, generalized powers and the gamma/beta functions of the complex field.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "config.hpp"

namespace chyp {

/// Nearest-integer distance of x from the set {0, -1, -2, ...}.
inline double dist_to_nonpos_int(cplx x) {
  double n = std::round(x.real());
  if (n > 0) n = 0;
  return std::abs(x - n);
}

/// True when x is within tol of an integer; the integer goes to *n.
inline bool near_integer(cplx x, double tol, long* n = nullptr) {
  double r = std::round(x.real());
  if (std::abs(x.real() - r) > tol || std::abs(x.imag()) > tol) return false;
  if (n) *n = static_cast<long>(r);
  return true;
}

// i^n for integer n, exact.
inline cplx ipow(long n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

inline double neg1pow(long n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// log sin(pi z), stable for large |Im z| and near the integers.
inline cplx log_sin_pi(cplx z) {
  double n = std::round(z.real());
  cplx w = pi * (z - n);
  cplx s;
  if (std::abs(w.imag()) < 15.0) {
    s = std::log(std::sin(w));
  } else if (w.imag() > 0) {
    // sin w = e^{-iw}(1 - e^{2iw}) i/2
    cplx I(0, 1);
    s = -I * w + std::log(1.0 - std::exp(2.0 * I * w)) + std::log(I / 2.0);
  } else {
    cplx wc = std::conj(w), I(0, 1);
    s = std::conj(-I * wc + std::log(1.0 - std::exp(2.0 * I * wc)) + std::log(I / 2.0));
  }
  if (std::fmod(std::abs(n), 2.0) == 1.0) s += cplx(0, pi);
  return s;
}

/// Complex log-gamma (branch irrelevant: callers exponentiate).
/// Stirling series after an upward shift to |z| >= 12, reflection for Re z < 1/2.
inline cplx log_gamma(cplx z) {
  if (z.real() < 0.5) return std::log(pi) - log_sin_pi(z) - log_gamma(1.0 - z);
  cplx prod = 1.0;
  while (std::abs(z) < 12.0) {
    prod *= z;
    z += 1.0;
  }
  static constexpr double B[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66,
                                 -691.0 / 2730, 7.0 / 6, -3617.0 / 510, 43867.0 / 798};
  cplx zi = 1.0 / z, zi2 = zi * zi, pw = zi, corr = 0.0;
  for (int n = 1; n <= 9; ++n) {
    corr += B[n - 1] / (2.0 * n * (2.0 * n - 1)) * pw;
    pw *= zi2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * pi) + corr - std::log(prod);
}

inline cplx gamma(cplx z) { return std::exp(log_gamma(z)); }
inline cplx rgamma(cplx z) {
  if (dist_to_nonpos_int(z) == 0.0) return 0.0;
  return std::exp(-log_gamma(z));
}

/// A pair (a|a') of exponents with a - a' an integer.
struct Bidegree {
  cplx a{0}, a_prime{0};

  Bidegree() = default;
  Bidegree(cplx a_, cplx ap_) : a(a_), a_prime(ap_) {
    if (!valid())
      throw std::invalid_argument("Bidegree: a - a' is not an integer");
  }
  static Bidegree diag(cplx x) { return {x, x}; }

  bool valid() const {
    double tol = tolerances().bidegree * std::max(1.0, std::abs(a) + std::abs(a_prime));
    return near_integer(a - a_prime, tol);
  }
  long index() const { return static_cast<long>(std::round((a - a_prime).real())); }
  Bidegree conj() const { return {std::conj(a), std::conj(a_prime)}; }
  Bidegree swapped() const { return {a_prime, a}; }

  Bidegree operator+(const Bidegree& o) const { return {a + o.a, a_prime + o.a_prime}; }
  Bidegree operator-(const Bidegree& o) const { return {a - o.a, a_prime - o.a_prime}; }
  Bidegree operator-() const { return {-a, -a_prime}; }
  Bidegree operator+(cplx x) const { return {a + x, a_prime + x}; }
  Bidegree operator-(cplx x) const { return {a - x, a_prime - x}; }
  friend Bidegree operator-(cplx x, const Bidegree& p) { return {x - p.a, x - p.a_prime}; }
  Bidegree shift(long da, long dap) const { return {a + double(da), a_prime + double(dap)}; }
};

inline double bracket(const Bidegree& p) { return 0.5 * (p.a + p.a_prime).real(); }

/// (-1)^{a-a'}
inline double sign_c(const Bidegree& p) { return neg1pow(p.index()); }

/// z^{a|a'} = |z|^{a+a'} e^{i(a-a')arg z}, arg in (-pi, pi].
inline cplx generalized_power(cplx z, const Bidegree& p) {
  if (z == 0.0) throw std::domain_error("generalized_power: z = 0");
  double th = std::arg(z);
  if (th == -pi) th = pi;
  cplx m = std::exp((p.a + p.a_prime) * std::log(std::abs(z)));
  double ph = double(p.index()) * th;
  return m * cplx(std::cos(ph), std::sin(ph));
}

/// Spectral parameter lambda|lambda' = ((k+sigma)/2 | (-k+sigma)/2).
struct LambdaPoint {
  long k = 0;
  cplx sigma{0};

  cplx lambda() const { return 0.5 * (double(k) + sigma); }
  cplx lambda_prime() const { return 0.5 * (-double(k) + sigma); }
  Bidegree as_bidegree() const { return {lambda(), lambda_prime()}; }
  bool is_unitary() const { return std::abs(sigma.real()) < tolerances().unitary; }
  LambdaPoint negated() const { return {-k, -sigma}; }
};

/// Meromorphic value: `order` > 0 is a pole of that order, < 0 a zero.
/// `value` is the leading coefficient along the diagonal direction (e|e),
/// so ratios with cancelling orders give the diagonal limit.
struct GammaValue {
  cplx value{0};
  int order = 0;

  bool is_pole() const { return order > 0; }
  bool is_zero() const { return order < 0; }
  bool finite() const { return order <= 0; }
  /// Plain numeric value: 0 for zeros, inf for poles.
  cplx num() const {
    if (order > 0) return {std::numeric_limits<double>::infinity(), 0};
    if (order < 0) return 0.0;
    return value;
  }

  GammaValue operator*(const GammaValue& o) const { return {value * o.value, order + o.order}; }
  GammaValue operator/(const GammaValue& o) const { return {value / o.value, order - o.order}; }
  GammaValue operator*(cplx x) const { return {value * x, order}; }
};

namespace detail {
inline double factorial(long n) { return std::exp(std::lgamma(double(n) + 1.0)); }
}  // namespace detail

/// Gamma^C(a|a') = i^{a-a'} Gamma(a)/Gamma(1-a').
inline GammaValue gamma_c(const Bidegree& p) {
  long n = p.index();
  long k1, k2;
  double tol = tolerances().integer_pair;
  if (near_integer(p.a, tol, &k1) && near_integer(p.a_prime, tol, &k2)) {
    cplx ph = ipow(k1 - k2);
    if (k1 <= 0 && k2 <= 0) {
      // Gamma(k1+e) ~ (-1)^{k1}/((-k1)! e)
      return {ph * neg1pow(k1) / (detail::factorial(-k1) * detail::factorial(-k2)), 1};
    }
    if (k1 >= 1 && k2 >= 1) {
      // 1/Gamma(1-k2-e) ~ (-1)^{k2}(k2-1)! e
      return {ph * detail::factorial(k1 - 1) * detail::factorial(k2 - 1) * neg1pow(k2), -1};
    }
    if (k1 >= 1) return {ph * detail::factorial(k1 - 1) / detail::factorial(-k2), 0};
    return {ipow(k2 - k1) * detail::factorial(k2 - 1) / detail::factorial(-k1), 0};
  }
  // pick the closed form whose denominator argument is farther from the poles
  if (dist_to_nonpos_int(1.0 - p.a_prime) >= dist_to_nonpos_int(1.0 - p.a))
    return {ipow(n) * std::exp(log_gamma(p.a) - log_gamma(1.0 - p.a_prime)), 0};
  return {ipow(-n) * std::exp(log_gamma(p.a_prime) - log_gamma(1.0 - p.a)), 0};
}

/// (i^{a-a'}/pi) Gamma(a)Gamma(a') sin(pi a'); used as an oracle. With i^{a'-a} it would
/// differ from the other two forms by (-1)^{a-a'}.
inline cplx gamma_c_sine_form(const Bidegree& p) {
  return ipow(p.index()) / pi *
         std::exp(log_gamma(p.a) + log_gamma(p.a_prime) + log_sin_pi(p.a_prime));
}

inline GammaValue beta_c(const Bidegree& p, const Bidegree& q) {
  return gamma_c(p) * gamma_c(q) / gamma_c(p + q);
}

/// Gamma(a)Gamma(b)Gamma(1-a'-b') / (Gamma(a+b)Gamma(1-a')Gamma(1-b')), the gamma ratio
/// multiplied out (the phases cancel). Gamma(a')Gamma(b') in the denominator would be wrong.
inline cplx beta_c_gamma_form(const Bidegree& p, const Bidegree& q) {
  return std::exp(log_gamma(p.a) + log_gamma(q.a) + log_gamma(1.0 - p.a_prime - q.a_prime) -
                  log_gamma(p.a + q.a) - log_gamma(1.0 - p.a_prime) - log_gamma(1.0 - q.a_prime));
}

}  // namespace chyp
