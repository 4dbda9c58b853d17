#include "eisen/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "eisen/characters.hpp"
#include "eisen/special.hpp"
#include "eisen/summation.hpp"

namespace eisen {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

double f_squared(double s) {
  double f = f_trivial(s);
  return f * f;
}

// Neville extrapolation to h = 0 through the points (h_i, v_i).
std::vector<double> neville_diagonal(const std::vector<double>& h, const std::vector<double>& v) {
  std::size_t n = h.size();
  std::vector<std::vector<double>> t(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) t[i][0] = v[i];
  std::vector<double> diag;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j <= i; ++j) {
      double hi = h[i];
      double hj = h[i - j];
      t[i][j] = (hj * t[i][j - 1] - hi * t[i - 1][j - 1]) / (hj - hi);
    }
    diag.push_back(t[i][i]);
  }
  return diag;
}

// Central-difference ladder h0, h0/2, ... with Richardson refinement in h^2.
struct Ladder {
  double value = 0.0;
  int refinements = 0;
  bool converged = false;
};

Ladder derivative_ladder(double h0) {
  constexpr int kMax = 14;
  std::vector<std::vector<double>> table;
  double h = h0;
  Ladder out;
  double previous = 0.0;
  for (int k = 0; k < kMax; ++k) {
    std::vector<double> row;
    row.push_back((f_squared(1.0 + h) - f_squared(1.0 - h)) / (2.0 * h));
    double factor = 4.0;
    for (int j = 1; j <= k; ++j) {
      row.push_back((factor * row[j - 1] - table[k - 1][j - 1]) / (factor - 1.0));
      factor *= 4.0;
    }
    double current = row.back();
    table.push_back(std::move(row));
    out.value = current;
    out.refinements = k;
    if (k > 0 && std::abs(current - previous) <= 1e-7 * std::abs(current)) {
      out.converged = true;
      break;
    }
    previous = current;
    h /= 2.0;
  }
  return out;
}

struct SquarefreeItem {
  double norm = 0.0;
  double log_norm = 0.0;
  int mu = 1;
  std::vector<int> primes;  // sorted ids
};

class PrimeIds {
 public:
  int id(const EisensteinInt& p) {
    auto [it, inserted] = ids_.try_emplace(p, static_cast<int>(norms_.size()));
    if (inserted) norms_.push_back(static_cast<double>(norm(p)));
    return it->second;
  }
  double norm_of(int id) const { return norms_[static_cast<std::size_t>(id)]; }

 private:
  std::unordered_map<EisensteinInt, int> ids_;
  std::vector<double> norms_;
};

std::vector<int> prime_ids_of(const EisensteinInt& x, PrimeIds& ids) {
  std::vector<int> out;
  for (const auto& [p, e] : factor(x).factors) out.push_back(ids.id(p));
  std::sort(out.begin(), out.end());
  return out;
}

bool disjoint(const std::vector<int>& x, const std::vector<int>& y) {
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i == *j) return false;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

std::vector<int> merged(const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<int> out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

class ETermEvaluator {
 public:
  ETermEvaluator(std::int64_t inner_cutoff, double a_const, double b_const, PrimeIds& ids)
      : a_(a_const), b_(b_const), ids_(ids) {
    for (const auto& x : enumerate_primary(inner_cutoff)) {
      int mu = mobius(x);
      if (mu == 0) continue;
      SquarefreeItem item;
      item.norm = static_cast<double>(norm(x));
      item.log_norm = std::log(item.norm);
      item.mu = mu;
      item.primes = prime_ids_of(x, ids_);
      items_.push_back(std::move(item));
    }
  }

  // E(a) for a cube whose radical has the given prime ids.
  double evaluate(const std::vector<int>& a_primes) {
    double h9 = ray_class_h9();
    CompensatedSum total;
    for (const auto& d : items_) {
      if (!disjoint(d.primes, a_primes)) continue;
      std::vector<int> q = merged(d.primes, a_primes);
      double g = 1.0;
      double log_deriv = 0.0;
      for (int id : q) {
        double n = ids_.norm_of(id);
        g *= (1.0 - 1.0 / n) * (1.0 - 1.0 / n);
        log_deriv += 2.0 * std::log(n) / (n - 1.0);
      }
      double g_prime = g * log_deriv;
      auto [s0, s1] = coprime_sums(q);
      double k = 2.0 * a_ * g * d.log_norm + a_ * g - a_ * g_prime - b_ * g;
      double inner = k * s0 * s0 + 4.0 * a_ * g * s0 * s1;
      total.add(d.mu * inner / (d.norm * d.norm));
    }
    return -total.value() / h9;
  }

 private:
  std::pair<double, double> coprime_sums(const std::vector<int>& q) {
    auto it = cache_.find(q);
    if (it != cache_.end()) return it->second;
    CompensatedSum s0;
    CompensatedSum s1;
    for (const auto& e : items_) {
      if (!disjoint(e.primes, q)) continue;
      double w = e.mu / (e.norm * e.norm);
      s0.add(w);
      s1.add(w * e.log_norm);
    }
    std::pair<double, double> out{s0.value(), s1.value()};
    cache_.emplace(q, out);
    return out;
  }

  double a_;
  double b_;
  PrimeIds& ids_;
  std::vector<SquarefreeItem> items_;
  std::map<std::vector<int>, std::pair<double, double>> cache_;
};

struct ESum {
  double value = 0.0;
  double max_ratio = 0.0;
  std::int64_t cubes = 0;
};

ESum e_sum(std::int64_t cube_cutoff, std::int64_t inner_cutoff, double a_const, double b_const) {
  PrimeIds ids;
  ETermEvaluator eval(inner_cutoff, a_const, b_const, ids);
  ESum out;
  CompensatedSum total;
  for (const auto& m : enumerate_primary(cube_cutoff)) {
    double e_a = eval.evaluate(prime_ids_of(m, ids));
    double nm = static_cast<double>(norm(m));
    total.add(e_a / std::pow(nm, 1.5));
    if (nm > 1.0) out.max_ratio = std::max(out.max_ratio, std::abs(e_a) / std::log(nm * nm * nm));
    ++out.cubes;
  }
  out.value = total.value() / (1.0 - 1.0 / kSqrt3);
  return out;
}

double d_term(double n) {
  return (1.0 - 3.0 / (n * n) + 2.0 / (n * n * n)) * (1.0 + n / ((n + 2.0) * (std::pow(n, 1.5) - 1.0)));
}

struct ProductPair {
  double raw = 0.0;
  double accelerated = 0.0;
};

ProductPair d_product(const std::vector<double>& prime_norms, double cutoff) {
  CompensatedSum raw;
  CompensatedSum acc;
  for (double n : prime_norms) {
    if (n > cutoff) break;
    double lt = std::log(d_term(n));
    raw.add(lt);
    acc.add(lt + std::log1p(-std::pow(n, -1.5)) - 3.0 * std::log1p(-1.0 / (n * n)));
  }
  // prod (1 - N^{-s})^{-1} over primes coprime to 3 is (1 - 3^{-s}) zeta_K(s).
  double z32 = (1.0 - std::pow(3.0, -1.5)) * zeta_k(1.5);
  double z2 = (1.0 - 1.0 / 9.0) * zeta_k(2.0);
  return {std::exp(raw.value()), std::exp(acc.value()) * z32 / (z2 * z2 * z2)};
}

}  // namespace

LimitEstimate constant_A() {
  std::vector<double> h = {1e-2, 1e-3, 1e-4, 1e-5};
  std::vector<double> v;
  for (double x : h) v.push_back(f_squared(1.0 + x));
  auto diag = neville_diagonal(h, v);
  LimitEstimate out;
  out.value = diag.back();
  out.spread = std::abs(diag.back() - diag[diag.size() - 2]);
  if (!std::isfinite(out.value) || out.spread > 1e-8 * std::abs(out.value)) {
    throw std::runtime_error("constant_A: extrapolation did not converge");
  }
  return out;
}

double constant_A_printed() { return 4.0 * kPi / (27.0 * kSqrt3); }

DerivativeEstimate constant_B() {
  constexpr double kH0 = 0.1;
  Ladder first = derivative_ladder(kH0);
  Ladder second = derivative_ladder(kH0 / 2.0);
  if (!first.converged || !second.converged) throw std::runtime_error("constant_B: step ladder did not converge");
  DerivativeEstimate out;
  out.ladder_h = first.value;
  out.ladder_half = second.value;
  out.value = second.value;
  out.refinements = std::max(first.refinements, second.refinements);
  double a = constant_A().value;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    for (double sign : {-1.0, 1.0}) {
      double r = std::abs(f_squared(1.0 + sign * h) - a - out.value * sign * h) / (h * h);
      out.taylor_residual = std::max(out.taylor_residual, r);
    }
  }
  return out;
}

std::pair<double, double> g_factors(const Factorization& ad) {
  double g = 1.0;
  double log_deriv = 0.0;
  for (const auto& [p, e] : ad.factors) {
    if (p == ramified_prime()) throw DomainError("g_factors: factorization contains the ramified prime");
    double n = static_cast<double>(norm(p));
    g *= (1.0 - 1.0 / n) * (1.0 - 1.0 / n);
    log_deriv += 2.0 * std::log(n) / (n - 1.0);
  }
  return {g, g * log_deriv};
}

double constant_D_printed_prefactor() { return 4.0 * kPi / (81.0 * (kSqrt3 - 1.0)); }

DEstimate constant_D(std::int64_t prime_cutoff) {
  if (prime_cutoff < 100) throw DomainError("constant_D: prime_cutoff must be at least 100");
  std::vector<double> norms;
  for (const auto& p : primary_primes(2 * prime_cutoff)) norms.push_back(static_cast<double>(norm(p)));
  auto at_p = d_product(norms, static_cast<double>(prime_cutoff));
  auto at_2p = d_product(norms, 2.0 * static_cast<double>(prime_cutoff));
  DEstimate out;
  out.prime_cutoff = prime_cutoff;
  out.raw_product = at_p.raw;
  out.product = at_p.accelerated;
  out.stability = std::abs(at_2p.accelerated / at_p.accelerated - 1.0);
  out.raw_stability = std::abs(at_2p.raw / at_p.raw - 1.0);
  double a = constant_A().value;
  out.oracle = a / (ray_class_h9() * (1.0 - 1.0 / kSqrt3)) * out.product;
  out.printed = constant_D_printed_prefactor() * out.product;
  return out;
}

double e_of_cube(const EisensteinInt& m, std::int64_t inner_cutoff, double a_const, double b_const) {
  if (!is_primary(m)) throw DomainError("e_of_cube: " + to_string(m) + " is not primary");
  PrimeIds ids;
  ETermEvaluator eval(inner_cutoff, a_const, b_const, ids);
  return eval.evaluate(prime_ids_of(m, ids));
}

EEstimate constant_E(std::int64_t cube_cutoff, std::int64_t inner_cutoff, double a_const, double b_const) {
  if (cube_cutoff < 10 || inner_cutoff < 10) throw DomainError("constant_E: cutoffs must be at least 10");
  ESum full = e_sum(cube_cutoff, inner_cutoff, a_const, b_const);
  ESum half = e_sum(cube_cutoff / 2, inner_cutoff / 2, a_const, b_const);
  EEstimate out;
  out.value = full.value;
  out.half_cutoff_value = half.value;
  out.trend = std::abs(full.value / half.value - 1.0);
  out.max_ratio_to_log = full.max_ratio;
  out.cube_cutoff = cube_cutoff;
  out.inner_cutoff = inner_cutoff;
  out.cubes = full.cubes;
  return out;
}

EEstimate constant_E(std::int64_t cube_cutoff, std::int64_t inner_cutoff) {
  return constant_E(cube_cutoff, inner_cutoff, constant_A().value, constant_B().value);
}

RayClassCount ray_class_count() {
  RayClassCount out;
  auto reduce = [](const EisensteinInt& x) { return EisensteinInt{mod_floor(x.a, 9), mod_floor(x.b, 9)}; };
  for (int x = 0; x < 9; ++x) {
    for (int y = 0; y < 9; ++y) {
      EisensteinInt r{x, y};
      bool invertible = false;
      for (int u = 0; u < 9 && !invertible; ++u) {
        for (int v = 0; v < 9 && !invertible; ++v) {
          invertible = reduce(r * EisensteinInt{u, v}) == EisensteinInt{1, 0};
        }
      }
      if (!invertible) continue;
      ++out.unit_group;
      if (x % 3 == 1 && y % 3 == 0) ++out.h9;
    }
  }
  return out;
}

int ray_class_h9() {
  static const int kH9 = ray_class_count().h9;
  return kH9;
}

ConstantsBundle compute_constants(const ConstantsConfig& config) {
  ConstantsBundle out;
  out.a_const = constant_A().value;
  out.a_printed = constant_A_printed();
  out.b_const = constant_B().value;
  out.h9 = ray_class_h9();
  out.d_detail = constant_D(config.prime_cutoff);
  out.d_const = out.d_detail.oracle;
  out.d_printed = out.d_detail.printed;
  out.e_detail = constant_E(config.cube_cutoff, config.inner_cutoff, out.a_const, out.b_const);
  out.e_const = out.e_detail.value;
  std::ostringstream desc;
  desc << "prime_cutoff=" << config.prime_cutoff << " cube_cutoff=" << config.cube_cutoff
       << " inner_cutoff=" << config.inner_cutoff;
  out.truncation = desc.str();
  return out;
}

MomentReport aggregate_moments(const std::vector<LValueRecord>& records, std::int64_t x,
                               const ConstantsBundle& constants, double threshold, bool reversed) {
  std::vector<const LValueRecord*> chosen;
  for (const auto& r : records) {
    if (r.elem.cond_norm <= x) chosen.push_back(&r);
  }
  if (reversed) std::reverse(chosen.begin(), chosen.end());
  CompensatedComplexSum first;
  CompensatedSum second;
  double truncation = 0.0;
  MomentReport out;
  out.x = x;
  for (const auto* r : chosen) {
    first.add(r->l_half);
    second.add(std::norm(r->l_half));
    truncation += r->truncation_bound;
    if (std::abs(r->l_half) > threshold) ++out.nonvanishing_count;
  }
  out.family_size = static_cast<std::int64_t>(chosen.size());
  out.first_moment = first.value();
  out.second_moment = second.value();
  out.tolerance_budget = truncation + first.error_bound();
  double xd = static_cast<double>(x);
  out.predicted_main = xd > 1.0 ? constants.d_const * xd * std::log(xd) + constants.e_const * xd : 0.0;
  out.ratio = out.predicted_main != 0.0 ? out.first_moment.real() / out.predicted_main : 0.0;
  return out;
}

namespace {

MomentReport moment_run(std::int64_t x, const ConstantsBundle& constants, const MomentOptions& options) {
  if (x > options.capacity) {
    throw CapacityError("moment: X = " + std::to_string(x) + " exceeds capacity " + std::to_string(options.capacity));
  }
  auto family = enumerate_family(x);
  AfeOptions afe;
  afe.tolerance = options.tolerance;
  LValueEngine engine(afe, options.threads);
  auto records = engine.compute_all(family);
  return aggregate_moments(records, x, constants, options.threshold);
}

}  // namespace

MomentReport first_moment(std::int64_t x, const ConstantsBundle& constants, const MomentOptions& options) {
  return moment_run(x, constants, options);
}

MomentReport second_moment(std::int64_t x, const ConstantsBundle& constants, const MomentOptions& options) {
  return moment_run(x, constants, options);
}

std::int64_t nonvanishing_count(const std::vector<LValueRecord>& records, std::int64_t x, double threshold) {
  return std::count_if(records.begin(), records.end(), [&](const LValueRecord& r) {
    return r.elem.cond_norm <= x && std::abs(r.l_half) > threshold;
  });
}

double growth_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw DomainError("growth_exponent: need at least 3 points");
  double n = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, v] : points) {
    if (!(x > 0.0 && v > 0.0)) throw DomainError("growth_exponent: points must be positive");
    double lx = std::log(x);
    double ly = std::log(v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TwoTermFit fit_main_term(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw DomainError("fit_main_term: need at least 2 points");
  long double s11 = 0, s12 = 0, s22 = 0, t1 = 0, t2 = 0;
  for (const auto& [x, v] : points) {
    long double u = x * std::log(x);
    long double w = x;
    s11 += u * u;
    s12 += u * w;
    s22 += w * w;
    t1 += u * v;
    t2 += w * v;
  }
  long double det = s11 * s22 - s12 * s12;
  if (det == 0) throw DomainError("fit_main_term: degenerate design");
  TwoTermFit out;
  out.lead = static_cast<double>((t1 * s22 - t2 * s12) / det);
  out.linear = static_cast<double>((s11 * t2 - s12 * t1) / det);
  double rss = 0.0;
  for (const auto& [x, v] : points) {
    double r = v - out.lead * x * std::log(x) - out.linear * x;
    rss += r * r;
  }
  out.residual = std::sqrt(rss);
  return out;
}

std::vector<std::int64_t> dyadic_grid(std::int64_t x, int count) {
  std::vector<std::int64_t> out;
  for (int j = count - 1; j >= 0; --j) out.push_back(x >> j);
  return out;
}

}  // namespace eisen
