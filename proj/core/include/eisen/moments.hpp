#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eisen/eisenstein.hpp"
#include "eisen/lfunction.hpp"

namespace eisen {

/// f(s)^2 at s = 1 by Richardson extrapolation of f(1 + h)^2, h = 1e-2 .. 1e-5.
struct LimitEstimate {
  double value = 0.0;
  double spread = 0.0;  // |last - previous| extrapolant
};
LimitEstimate constant_A();

/// Value as printed in the literature, 4 pi / (27 sqrt 3).
double constant_A_printed();

struct DerivativeEstimate {
  double value = 0.0;
  double ladder_h = 0.0;       // result of the ladder starting at h0
  double ladder_half = 0.0;    // result of the ladder starting at h0 / 2
  double taylor_residual = 0.0;  // max |f^2(1 +- h) - A - B(+-h)| / h^2 over the probe steps
  int refinements = 0;
};

/// (f^2)'(1) by Richardson-refined central differences with step halving.
DerivativeEstimate constant_B();

/// G(1) = prod (1 - 1/N)^2 and G'(1) over the distinct primes dividing ad.
std::pair<double, double> g_factors(const Factorization& ad);

struct DEstimate {
  double oracle = 0.0;       // A-oracle prefactor, accelerated product
  double printed = 0.0;      // printed prefactor, same product
  double raw_product = 0.0;  // product truncated at the cutoff, no acceleration
  double product = 0.0;      // accelerated product
  double stability = 0.0;    // |D(2P) / D(P) - 1| for the accelerated product
  double raw_stability = 0.0;
  std::int64_t prime_cutoff = 0;
};

/// Euler product in the main-term constant, with N(xi) read as N(pi). Requires P >= 100.
DEstimate constant_D(std::int64_t prime_cutoff);

/// 4 pi / (81 (sqrt 3 - 1)).
double constant_D_printed_prefactor();

struct EEstimate {
  double value = 0.0;
  double half_cutoff_value = 0.0;  // both cutoffs halved
  double trend = 0.0;              // |value / half_cutoff_value - 1|
  double max_ratio_to_log = 0.0;   // max |E(a)| / log N(a) over non-trivial cubes
  std::int64_t cube_cutoff = 0;
  std::int64_t inner_cutoff = 0;
  std::int64_t cubes = 0;
};

/// Second constant of the first-moment main term. Cubes a = m^3 with N(m) <= cube_cutoff,
/// inner sums over square-free d, e1, e2 with norms <= inner_cutoff. Both cutoffs >= 10.
EEstimate constant_E(std::int64_t cube_cutoff, std::int64_t inner_cutoff, double a_const, double b_const);
EEstimate constant_E(std::int64_t cube_cutoff, std::int64_t inner_cutoff);

/// E(a) for a single cube a = m^3 (inner sums truncated at inner_cutoff).
double e_of_cube(const EisensteinInt& m, std::int64_t inner_cutoff, double a_const, double b_const);

struct RayClassCount {
  int h9 = 0;          // invertible residues mod 9 that are 1 mod 3
  int unit_group = 0;  // |(Z[w] / 9)^*|
};
RayClassCount ray_class_count();
int ray_class_h9();

struct ConstantsBundle {
  double a_const = 0.0;
  double a_printed = 0.0;
  double b_const = 0.0;
  double d_const = 0.0;
  double d_printed = 0.0;
  double e_const = 0.0;
  int h9 = 0;
  DEstimate d_detail;
  EEstimate e_detail;
  std::string truncation;
};

struct ConstantsConfig {
  std::int64_t prime_cutoff = 100'000;
  std::int64_t cube_cutoff = 1'000;
  std::int64_t inner_cutoff = 1'000;
};

ConstantsBundle compute_constants(const ConstantsConfig& config = {});

struct MomentReport {
  std::int64_t x = 0;
  std::int64_t family_size = 0;
  std::complex<double> first_moment;
  double second_moment = 0.0;
  std::int64_t nonvanishing_count = 0;
  double predicted_main = 0.0;  // D X log X + E X
  double ratio = 0.0;           // Re first_moment / predicted_main
  double tolerance_budget = 0.0;
};

/// Folds records with cond_norm <= x in the order given (canonical unless reversed).
MomentReport aggregate_moments(const std::vector<LValueRecord>& records, std::int64_t x,
                               const ConstantsBundle& constants, double threshold = 1e-6,
                               bool reversed = false);

struct MomentOptions {
  double tolerance = 1e-8;
  double threshold = 1e-6;
  std::int64_t capacity = 100'000;
  int threads = 1;
};

/// Enumerates F(X), evaluates every L-value and folds. Both fill the whole report.
MomentReport first_moment(std::int64_t x, const ConstantsBundle& constants, const MomentOptions& options = {});
MomentReport second_moment(std::int64_t x, const ConstantsBundle& constants, const MomentOptions& options = {});

/// Number of records with cond_norm <= x and |L| > threshold.
std::int64_t nonvanishing_count(const std::vector<LValueRecord>& records, std::int64_t x, double threshold);

/// Least-squares slope of log value against log X. At least 3 points, all values positive.
double growth_exponent(const std::vector<std::pair<double, double>>& points);

struct TwoTermFit {
  double lead = 0.0;    // coefficient of X log X
  double linear = 0.0;  // coefficient of X
  double residual = 0.0;
};

/// Least squares S(X) ~ lead * X log X + linear * X. At least 2 points.
TwoTermFit fit_main_term(const std::vector<std::pair<double, double>>& points);

/// X * 2^{-j}, j = count - 1 .. 0, rounded down.
std::vector<std::int64_t> dyadic_grid(std::int64_t x, int count);

}  // namespace eisen
