#pragma once

#include <complex>

namespace chyp {

using cplx = std::complex<double>;
inline constexpr double pi = 3.141592653589793238462643383279502884;

// Central tolerance table. Read-only after startup; the CLI may overwrite
// fields before any computation starts.
struct Tolerances {
  double bidegree = 1e-12;      // a - a' integrality, relative to |a|+|a'|
  double unitary = 1e-12;       // Re sigma on Lambda
  double integer_pair = 1e-10;  // routing to the exact integer branch of Gamma^C
  double series_rel = 1e-17;    // series stop: 3 consecutive terms below this
  int series_cap = 500;
  double series_radius = 0.75;  // direct series for |z| <= this
  double route_radius = 0.9;    // alternative 2F1 routes tried up to this argument
  double route_cond = 1e4;      // accept a 2F1 route below this cancellation ratio
  double eps_perturb = 1e-6;    // degenerate-parameter averaging offset
  double eps_connection = 1e-3; // same for the Gauss connection formulas (with Richardson)
  double cancel_ratio = 1e6;    // two-term cancellation trigger
};

inline Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

}  // namespace chyp
