#pragma once

#include <complex>
#include <cstdint>

namespace eisen {

/// log Gamma(z) for Re z > 0 (Stirling series after an upward shift).
std::complex<double> log_gamma(std::complex<double> z);

/// V(y) = (1 / 2 pi i) int_{(2)} (2 pi y)^{-u} Gamma(1/2 + u) / Gamma(1/2) du / u.
/// Production path: erfc(sqrt(2 pi y)), used only while the contour certification
/// below holds; otherwise the contour quadrature is returned. Requires y > 0.
double v_weight(double y);

/// erfc(sqrt(2 pi y)) without the certification gate.
double v_weight_closed(double y);

struct ContourParams {
  double step = 0.05;        // trapezoid spacing along Im u
  double half_width = 40.0;  // truncation |Im u| <= half_width
  double target_error = 1e-10;
};

struct ContourResult {
  double value = 0.0;
  double error_estimate = 0.0;  // Stirling tail bound plus accumulated rounding
};

/// Trapezoid quadrature of the defining integral on Re u = 2. y in [1e-3, 1e2].
/// Throws std::runtime_error when the estimated error exceeds params.target_error.
ContourResult v_weight_contour(double y, const ContourParams& params = {});

struct WeightCertification {
  bool passed = false;
  int points = 0;
  double max_deviation = 0.0;
  /// Certified constant C with V(y) <= C y^{-3} for all y > 0.
  double c3 = 0.0;
};

/// Compares erfc form and contour quadrature on 50 log-spaced points in [1e-3, 10]
/// (run once; the result is immutable afterwards).
const WeightCertification& weight_certification();

/// Rigorous upper bound for V(y): erfc(x) <= exp(-x^2) / (x sqrt(pi)).
double v_weight_upper(double y);

/// Riemann zeta and Hurwitz zeta via Euler-Maclaurin, s > 0, s != 1.
double hurwitz_zeta(double s, double q);
double riemann_zeta(double s);

/// L(s, chi_{-3}) for the non-trivial character mod 3, s > 0.
double dirichlet_l_chi3(double s);

/// Dedekind zeta of Q(w) as zeta(s) L(s, chi_{-3}). Requires 1 < s <= 64.
double zeta_k(double s);

/// (s - 1) zeta_K(s), analytic through s = 1. Requires 0 < s <= 64.
double zeta_k_times_s_minus_1(double s);

/// f(s) = (s - 1)(1 - 3^{-s}) zeta_K(s), analytic through s = 1.
double f_trivial(double s);

}  // namespace eisen
