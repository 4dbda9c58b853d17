#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "eisen/characters.hpp"
#include "eisen/gauss.hpp"

namespace eisen {

/// One computed central value.
struct LValueRecord {
  FamilyElement elem;
  Complex l_half;
  Complex root_number;
  double y_param = 0.0;
  double truncation_bound = 0.0;
  std::int64_t cutoff_norm = 0;
};

/// sqrt(3 * cond_norm): balances the two sums of the functional equation.
double balanced_y(std::int64_t cond_norm);

/// Primary elements up to a norm bound with a multiplicative decomposition
/// a = prime * cofactor so that completely multiplicative characters can be tabulated
/// in one pass.
class PrimaryTable {
 public:
  explicit PrimaryTable(std::int64_t bound);

  std::int64_t bound() const { return bound_; }
  std::size_t size() const { return elements_.size(); }
  const EisensteinInt& element(std::size_t i) const { return elements_[i]; }
  std::int64_t norm_of(std::size_t i) const { return norms_[i]; }
  /// Number of entries with norm <= n.
  std::size_t count_upto(std::int64_t n) const;
  const std::vector<std::size_t>& prime_indices() const { return prime_indices_; }

  /// Exponent table of a completely multiplicative cubic character over all entries;
  /// prime_value is consulted once per prime.
  std::vector<std::int8_t> tabulate(const std::function<CubicValue(const EisensteinInt&)>& prime_value,
                                    std::size_t limit) const;

 private:
  std::int64_t bound_;
  std::vector<EisensteinInt> elements_;
  std::vector<std::int64_t> norms_;
  std::vector<std::int32_t> prime_of_;     // index of a prime factor, -1 for the unit entry
  std::vector<std::int32_t> cofactor_of_;  // index of element / prime
  std::vector<std::size_t> prime_indices_;
};

/// Shared, growable PrimaryTable.
std::shared_ptr<const PrimaryTable> primary_table_at_least(std::int64_t bound);

/// Rigorous bound on sum_{r >= 0} 3^{-r/2} sum_{a primary, 3^r N(a) > cutoff} N(a)^{-1/2} V(3^r N(a) / y).
double afe_tail_bound(double y, double cutoff);

/// Smallest cutoff (on 3^r N(a)) for which afe_tail_bound(y, cutoff) <= budget.
std::int64_t afe_cutoff(double y, double budget);

struct AfeOptions {
  double tolerance = 1e-8;
  std::optional<double> y_param;  // default balanced_y
  std::int64_t max_cutoff = 20'000'000;
};

/// L(1/2, chi) = sum_r 3^{-r/2} sum_a chi(a) N(a)^{-1/2} V(3^r N(a) / Y)
///   + W / sqrt(cond) sum_r 3^{-r/2} sum_a conj(chi(a)) N(a)^{-1/2} V(3^r N(a) Y / (3 cond)).
/// The character is supplied through its values on primary primes.
LValueRecord afe_central_value(const FamilyElement& elem, Complex root_number, const AfeOptions& options = {});

/// Same, with the root number computed from Gauss sums.
LValueRecord afe_central_value(const FamilyElement& elem, double y_param, double tolerance);

/// The AFE with an arbitrary completely multiplicative cubic character given on
/// primes; used for smoke tests with synthetic characters.
LValueRecord afe_with_character(const FamilyElement& elem,
                                const std::function<CubicValue(const EisensteinInt&)>& prime_value,
                                Complex root_number, const AfeOptions& options);

struct SeriesValue {
  Complex value;
  double tail_bound = 0.0;
};

/// Partial sum of chi(a) N(a)^{-s} over primary a with N(a) <= cutoff, s >= 1.5.
SeriesValue series_at_s(const FamilyElement& elem, double s, std::int64_t cutoff_norm);

/// prod over primary primes pi with N(pi) <= cutoff of (1 - chi(pi) N(pi)^{-s})^{-1}.
SeriesValue euler_product(const FamilyElement& elem, double s, std::int64_t prime_cutoff);

/// Upper bound for the number of primary elements with norm <= t.
double primary_count_bound(double t);

/// Batch evaluator: Gauss-sum cache plus a worker pool; results in input order.
class LValueEngine {
 public:
  explicit LValueEngine(AfeOptions options = {}, int threads = 1);

  LValueRecord compute(const FamilyElement& elem);
  std::vector<LValueRecord> compute_all(const std::vector<FamilyElement>& elems);

  const AfeOptions& options() const { return options_; }
  GaussSumCache& gauss_cache() { return gauss_; }

 private:
  AfeOptions options_;
  int threads_;
  GaussSumCache gauss_;
};

}  // namespace eisen
