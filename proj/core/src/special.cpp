#include "eisen/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eisen/eisenstein.hpp"
#include "eisen/summation.hpp"

namespace eisen {

namespace {

constexpr double kPi = std::numbers::pi;

// B_{2k} / (2k)! for k = 1..12.
constexpr std::array<double, 12> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.204484017332394e23,
};

constexpr int kEmTerms = 20;

// Euler-Maclaurin pieces of zeta(s, q) with the pole term (N+q)^{1-s}/(s-1) left out.
double hurwitz_regular_part(double s, double q) {
  CompensatedSum acc;
  for (int n = kEmTerms - 1; n >= 0; --n) acc.add(std::pow(n + q, -s));
  double big = kEmTerms + q;
  acc.add(0.5 * std::pow(big, -s));
  double rising = s;  // s (s+1) ... (s + 2k - 2)
  double power = std::pow(big, -s - 1.0);
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    acc.add(kBernoulliOverFactorial[k] * rising * power);
    rising *= (s + 2.0 * static_cast<double>(k) + 1.0) * (s + 2.0 * static_cast<double>(k) + 2.0);
    power /= big * big;
  }
  return acc.value();
}

// (a^{1-s} - b^{1-s}) / (s - 1), stable through s = 1.
double pole_difference(double s, double a, double b) {
  double x = 1.0 - s;
  double la = std::log(a);
  double lb = std::log(b);
  double d = la - lb;
  double z = x * d;
  double ratio = std::abs(z) < 1e-300 ? 1.0 : std::expm1(z) / z;
  return -std::exp(x * lb) * d * ratio;
}

// Integrand of the contour representation at u = 2 + i t.
std::complex<double> contour_integrand(double y, double t) {
  static const double kLogGammaHalf = 0.5 * std::log(kPi);
  std::complex<double> u{2.0, t};
  std::complex<double> log_term = log_gamma(0.5 + u) - kLogGammaHalf - u * std::log(2.0 * kPi * y);
  return std::exp(log_term) / u;
}

WeightCertification run_certification() {
  WeightCertification cert;
  cert.points = 50;
  double lo = std::log(1e-3);
  double hi = std::log(10.0);
  bool monotone_ok = true;
  double previous = 2.0;
  for (int i = 0; i < cert.points; ++i) {
    double y = std::exp(lo + (hi - lo) * i / (cert.points - 1));
    double closed = v_weight_closed(y);
    double contour = v_weight_contour(y).value;
    cert.max_deviation = std::max(cert.max_deviation, std::abs(closed - contour));
    if (!(closed > 0.0 && closed < 1.0 && closed < previous)) monotone_ok = false;
    previous = closed;
  }
  // y^3 V(y) is unimodal; sample finely and pad by the largest grid-step variation.
  double best = 0.0;
  double step_var = 0.0;
  double prev_val = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    double y = 1e-3 + 1e-3 * i;  // covers (0, 20]
    double val = y * y * y * v_weight_closed(y);
    best = std::max(best, val);
    if (i > 0) step_var = std::max(step_var, std::abs(val - prev_val));
    prev_val = val;
  }
  cert.c3 = best + step_var;
  cert.passed = monotone_ok && cert.max_deviation <= 1e-10;
  return cert;
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.real() <= 0.0) throw DomainError("log_gamma: requires Re z > 0");
  // Shift to Re z >= 15 then apply the Stirling series.
  std::complex<double> shift_log{0.0, 0.0};
  while (z.real() < 15.0) {
    shift_log += std::log(z);
    z += 1.0;
  }
  static constexpr std::array<double, 8> kStirling = {
      1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0,
      -3617.0 / 122400.0};
  std::complex<double> inv = 1.0 / z;
  std::complex<double> inv2 = inv * inv;
  std::complex<double> series{0.0, 0.0};
  std::complex<double> p = inv;
  for (double c : kStirling) {
    series += c * p;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift_log;
}

double v_weight_closed(double y) {
  if (!(y > 0.0)) throw DomainError("v_weight: y must be positive");
  return std::erfc(std::sqrt(2.0 * kPi * y));
}

double v_weight(double y) {
  if (!(y > 0.0)) throw DomainError("v_weight: y must be positive");
  if (weight_certification().passed) return v_weight_closed(y);
  return v_weight_contour(y).value;
}

double v_weight_upper(double y) {
  if (!(y > 0.0)) throw DomainError("v_weight_upper: y must be positive");
  double x = std::sqrt(2.0 * kPi * y);
  return std::min(1.0, std::exp(-x * x) / (x * std::sqrt(kPi)));
}

ContourResult v_weight_contour(double y, const ContourParams& params) {
  if (!(y >= 1e-3 && y <= 1e2)) throw DomainError("v_weight_contour: y outside [1e-3, 1e2]");
  // V = (1/pi) int_0^inf Re F(2 + i t) dt by conjugate symmetry.
  CompensatedSum acc;
  double h = params.step;
  int n = static_cast<int>(std::ceil(params.half_width / h));
  double magnitude = 0.0;
  for (int k = n; k >= 0; --k) {
    double w = (k == 0) ? 0.5 : 1.0;
    auto f = contour_integrand(y, k * h);
    acc.add(w * f.real());
    magnitude += w * std::abs(f);
  }
  ContourResult out;
  out.value = acc.value() * h / kPi;
  // |Gamma(5/2 + i t)| <= 2 sqrt(2 pi) t^2 exp(-pi t / 2) for t >= 10, |u| >= t:
  // tail <= (1/pi)(2 pi y)^{-2} / sqrt(pi) * 2 sqrt(2 pi) int_T^inf t e^{-pi t/2} dt.
  double big_t = n * h;
  double tail_int = std::exp(-kPi * big_t / 2.0) * (2.0 * big_t / kPi + 4.0 / (kPi * kPi));
  double tail = std::pow(2.0 * kPi * y, -2.0) / kPi / std::sqrt(kPi) * 2.0 * std::sqrt(2.0 * kPi) * tail_int;
  double rounding = 16.0 * std::numeric_limits<double>::epsilon() * magnitude * h / kPi;
  out.error_estimate = tail + rounding;
  if (out.error_estimate > params.target_error) {
    throw std::runtime_error("v_weight_contour: quadrature error estimate exceeds target");
  }
  return out;
}

const WeightCertification& weight_certification() {
  static const WeightCertification kCert = run_certification();
  return kCert;
}

double hurwitz_zeta(double s, double q) {
  if (!(s > 0.0) || s == 1.0) throw DomainError("hurwitz_zeta: requires s > 0, s != 1");
  double big = kEmTerms + q;
  return hurwitz_regular_part(s, q) + std::pow(big, 1.0 - s) / (s - 1.0);
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

double dirichlet_l_chi3(double s) {
  if (!(s > 0.0)) throw DomainError("dirichlet_l_chi3: requires s > 0");
  double diff = hurwitz_regular_part(s, 1.0 / 3.0) - hurwitz_regular_part(s, 2.0 / 3.0) +
                pole_difference(s, kEmTerms + 1.0 / 3.0, kEmTerms + 2.0 / 3.0);
  return std::pow(3.0, -s) * diff;
}

double zeta_k_times_s_minus_1(double s) {
  if (!(s > 0.0 && s <= 64.0)) throw DomainError("zeta_k_times_s_minus_1: s outside (0, 64]");
  double big = kEmTerms + 1.0;
  double zeta_part = (s - 1.0) * hurwitz_regular_part(s, 1.0) + std::pow(big, 1.0 - s);
  return zeta_part * dirichlet_l_chi3(s);
}

double zeta_k(double s) {
  if (!(s > 1.0 && s <= 64.0)) throw DomainError("zeta_k: s outside (1, 64]");
  return riemann_zeta(s) * dirichlet_l_chi3(s);
}

double f_trivial(double s) { return (1.0 - std::pow(3.0, -s)) * zeta_k_times_s_minus_1(s); }

}  // namespace eisen
