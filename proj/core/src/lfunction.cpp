#include "eisen/lfunction.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>
#include <unordered_map>

#include "eisen/special.hpp"
#include "eisen/summation.hpp"

namespace eisen {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt3 = std::numbers::sqrt3;
const double kLatticeDensity = 2.0 * kPi / (9.0 * kSqrt3);

// Bound on sum_{N(a) > m} N(a)^{-1/2} V(N(a) / y) for m >= 1, using
// V(t) <= exp(-2 pi t) / (pi sqrt(2 t)) and the lattice count bound.
double single_tail(double y, double m) {
  double g = std::sqrt(y / 2.0) / kPi;
  double decay = std::exp(-2.0 * kPi * m / y);
  if (decay == 0.0) return 0.0;
  double root_m = std::sqrt(m);
  double boundary = kLatticeDensity * (root_m + kSqrt3) * (root_m + kSqrt3) * g * decay / m;
  double integral = kLatticeDensity * (1.0 + kSqrt3 / root_m) * g / m * (y / (2.0 * kPi)) * decay;
  return boundary + integral;
}

Complex fold_buckets(const CompensatedSum (&b)[3], bool conjugate) {
  const Complex w = CubicValue::root(1).to_complex();
  const Complex w1 = conjugate ? std::conj(w) : w;
  return b[0].value() + w1 * b[1].value() + std::conj(w1) * b[2].value();
}

struct WeightedSum {
  Complex value;
  double rounding = 0.0;
};

// sum over primary a (N(a) <= cutoff) of chi(a)^{+-1} N(a)^{-1/2} sum_r 3^{-r/2} V(3^r N(a) / y)
// restricted to 3^r N(a) <= cutoff.
WeightedSum weighted_sum(const PrimaryTable& table, const std::vector<std::int8_t>& exps, double y,
                         std::int64_t cutoff, bool conjugate) {
  CompensatedSum buckets[3];
  double abs_total = 0.0;
  std::size_t limit = table.count_upto(cutoff);
  std::int64_t last_norm = -1;
  double last_term = 0.0;
  for (std::size_t i = 0; i < limit; ++i) {
    int e = exps[i];
    if (e < 0) continue;
    std::int64_t n = table.norm_of(i);
    if (n != last_norm) {
      CompensatedSum w;
      double scale = 1.0;
      for (std::int64_t m = n; m <= cutoff; m *= 3) {
        w.add(scale * v_weight(static_cast<double>(m) / y));
        scale /= kSqrt3;
      }
      last_term = w.value() / std::sqrt(static_cast<double>(n));
      last_norm = n;
    }
    buckets[e].add(last_term);
    abs_total += last_term;
  }
  WeightedSum out;
  out.value = fold_buckets(buckets, conjugate);
  out.rounding = 16.0 * std::numeric_limits<double>::epsilon() * abs_total + buckets[0].error_bound() +
                 buckets[1].error_bound() + buckets[2].error_bound();
  return out;
}

std::mutex g_table_mu;
std::shared_ptr<const PrimaryTable> g_table;

}  // namespace

double balanced_y(std::int64_t cond_norm) { return std::sqrt(3.0 * static_cast<double>(cond_norm)); }

double primary_count_bound(double t) {
  double r = std::sqrt(std::max(t, 0.0)) + kSqrt3;
  return kLatticeDensity * r * r;
}

PrimaryTable::PrimaryTable(std::int64_t bound) : bound_(bound) {
  elements_ = enumerate_primary(std::max<std::int64_t>(bound, 1));
  std::unordered_map<EisensteinInt, std::int32_t> index;
  index.reserve(elements_.size() * 2);
  norms_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    index.emplace(elements_[i], static_cast<std::int32_t>(i));
    norms_.push_back(static_cast<std::int64_t>(norm(elements_[i])));
  }
  prime_of_.assign(elements_.size(), -1);
  cofactor_of_.assign(elements_.size(), -1);
  for (std::size_t i = 1; i < elements_.size(); ++i) {
    auto f = factor(elements_[i]);
    const auto& [pi, e] = f.factors.front();
    if (f.factors.size() == 1 && e == 1) {
      prime_of_[i] = static_cast<std::int32_t>(i);
      cofactor_of_[i] = 0;
      prime_indices_.push_back(i);
    } else {
      prime_of_[i] = index.at(pi);
      cofactor_of_[i] = index.at(exact_div(elements_[i], pi));
    }
  }
}

std::size_t PrimaryTable::count_upto(std::int64_t n) const {
  return static_cast<std::size_t>(std::upper_bound(norms_.begin(), norms_.end(), n) - norms_.begin());
}

std::vector<std::int8_t> PrimaryTable::tabulate(const std::function<CubicValue(const EisensteinInt&)>& prime_value,
                                                std::size_t limit) const {
  limit = std::min(limit, elements_.size());
  std::vector<std::int8_t> exps(limit, 0);
  for (std::size_t i = 1; i < limit; ++i) {
    auto p = static_cast<std::size_t>(prime_of_[i]);
    if (p == i) {
      exps[i] = static_cast<std::int8_t>(prime_value(elements_[i]).exponent());
      continue;
    }
    int ep = exps[p];
    int ec = exps[static_cast<std::size_t>(cofactor_of_[i])];
    exps[i] = static_cast<std::int8_t>((ep < 0 || ec < 0) ? -1 : (ep + ec) % 3);
  }
  return exps;
}

std::shared_ptr<const PrimaryTable> primary_table_at_least(std::int64_t bound) {
  std::lock_guard lock(g_table_mu);
  if (!g_table || g_table->bound() < bound) {
    std::int64_t target = std::max<std::int64_t>(bound, g_table ? 2 * g_table->bound() : 4096);
    g_table = std::make_shared<const PrimaryTable>(target);
  }
  return g_table;
}

double afe_tail_bound(double y, double cutoff) {
  double total = 0.0;
  double scale = 1.0;
  for (int r = 0; r < 200; ++r) {
    double yr = y / std::pow(3.0, r);
    double mr = cutoff / std::pow(3.0, r);
    double t = mr >= 1.0 ? single_tail(yr, mr) : v_weight_upper(1.0 / yr) + single_tail(yr, 1.0);
    total += scale * t;
    if (mr < 1.0 && scale * t < 1e-300) break;
    scale /= kSqrt3;
  }
  return total;
}

std::int64_t afe_cutoff(double y, double budget) {
  double m = std::max(1.0, y);
  while (afe_tail_bound(y, m) > budget) m *= 1.05;
  return static_cast<std::int64_t>(std::ceil(m));
}

LValueRecord afe_with_character(const FamilyElement& elem,
                                const std::function<CubicValue(const EisensteinInt&)>& prime_value,
                                Complex root_number, const AfeOptions& options) {
  if (!(options.tolerance >= 1e-10) || !std::isfinite(options.tolerance)) {
    throw DomainError("afe: tolerance must be >= 1e-10");
  }
  if (elem.cond_norm < 1) throw DomainError("afe: invalid conductor");
  const double cond = static_cast<double>(elem.cond_norm);
  const double y1 = options.y_param.value_or(balanced_y(elem.cond_norm));
  if (!(y1 > 0.0)) throw DomainError("afe: y_param must be positive");
  const double y2 = 3.0 * cond / y1;

  const double budget = options.tolerance / 4.0;
  std::int64_t m1 = afe_cutoff(y1, budget);
  std::int64_t m2 = afe_cutoff(y2, budget);
  std::int64_t m = std::max(m1, m2);
  if (m > options.max_cutoff) {
    throw CapacityError("afe: cutoff " + std::to_string(m) + " for (" + to_string(elem.c1) + ", " +
                        to_string(elem.c2) + ") exceeds the configured budget");
  }
  auto table = primary_table_at_least(m);
  auto exps = table->tabulate(prime_value, table->count_upto(m));

  auto first = weighted_sum(*table, exps, y1, m1, false);
  auto second = weighted_sum(*table, exps, y2, m2, true);
  Complex eps = root_number / std::sqrt(cond);

  LValueRecord rec;
  rec.elem = elem;
  rec.root_number = root_number;
  rec.y_param = y1;
  rec.cutoff_norm = m;
  rec.l_half = first.value + eps * second.value;
  rec.truncation_bound = afe_tail_bound(y1, static_cast<double>(m1)) +
                         std::abs(eps) * afe_tail_bound(y2, static_cast<double>(m2)) + first.rounding +
                         std::abs(eps) * second.rounding;
  if (!std::isfinite(rec.l_half.real()) || !std::isfinite(rec.l_half.imag())) {
    throw std::runtime_error("afe: non-finite central value");
  }
  return rec;
}

LValueRecord afe_central_value(const FamilyElement& elem, Complex root_number, const AfeOptions& options) {
  return afe_with_character(
      elem, [&elem](const EisensteinInt& pi) { return chi_eval(elem, pi); }, root_number, options);
}

LValueRecord afe_central_value(const FamilyElement& elem, double y_param, double tolerance) {
  AfeOptions options;
  options.tolerance = tolerance;
  options.y_param = y_param;
  return afe_central_value(elem, root_number(elem), options);
}

SeriesValue series_at_s(const FamilyElement& elem, double s, std::int64_t cutoff_norm) {
  if (!(s >= 1.5)) throw DomainError("series_at_s: requires s >= 1.5");
  if (cutoff_norm < 1) throw DomainError("series_at_s: cutoff must be >= 1");
  auto table = primary_table_at_least(cutoff_norm);
  std::size_t limit = table->count_upto(cutoff_norm);
  auto exps = table->tabulate([&elem](const EisensteinInt& pi) { return chi_eval(elem, pi); }, limit);
  CompensatedSum buckets[3];
  for (std::size_t i = 0; i < limit; ++i) {
    if (exps[i] < 0) continue;
    buckets[exps[i]].add(std::pow(static_cast<double>(table->norm_of(i)), -s));
  }
  double m = static_cast<double>(cutoff_norm);
  double root_m = std::sqrt(m);
  SeriesValue out;
  out.value = fold_buckets(buckets, false);
  out.tail_bound = kLatticeDensity * ((root_m + kSqrt3) * (root_m + kSqrt3) * std::pow(m, -s) +
                                      std::pow(m, 1.0 - s) / (s - 1.0) + kSqrt3 * std::pow(m, 0.5 - s) / (s - 0.5));
  return out;
}

SeriesValue euler_product(const FamilyElement& elem, double s, std::int64_t prime_cutoff) {
  if (!(s >= 1.5)) throw DomainError("euler_product: requires s >= 1.5");
  Complex log_sum{0.0, 0.0};
  for (const auto& pi : primary_primes(prime_cutoff)) {
    CubicValue chi = chi_eval(elem, pi);
    if (chi.is_zero()) continue;
    Complex term = chi.to_complex() * std::pow(static_cast<double>(norm(pi)), -s);
    log_sum -= std::log(1.0 - term);
  }
  double m = static_cast<double>(prime_cutoff);
  double root_m = std::sqrt(m);
  double lattice_tail = kLatticeDensity * ((root_m + kSqrt3) * (root_m + kSqrt3) * std::pow(m, -s) +
                                           std::pow(m, 1.0 - s) / (s - 1.0) +
                                           kSqrt3 * std::pow(m, 0.5 - s) / (s - 0.5));
  double tau = lattice_tail / (1.0 - std::pow(m + 1.0, -s));
  SeriesValue out;
  out.value = std::exp(log_sum);
  out.tail_bound = std::abs(out.value) * std::expm1(tau);
  return out;
}

LValueEngine::LValueEngine(AfeOptions options, int threads) : options_(options), threads_(std::max(1, threads)) {}

LValueRecord LValueEngine::compute(const FamilyElement& elem) {
  return afe_central_value(elem, gauss_.root_number(elem), options_);
}

std::vector<LValueRecord> LValueEngine::compute_all(const std::vector<FamilyElement>& elems) {
  std::vector<LValueRecord> out(elems.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= elems.size()) return;
      try {
        out[i] = compute(elems[i]);
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mu);
        if (!failure) {
          failure = std::make_exception_ptr(std::runtime_error(
              "L-value failed for (" + to_string(elems[i].c1) + ", " + to_string(elems[i].c2) + "): " + e.what()));
        }
        next.store(elems.size());
        return;
      }
    }
  };
  if (threads_ == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads_; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace eisen
