#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "eisen/characters.hpp"
#include "eisen/eisenstein.hpp"

namespace eisen {

using Complex = std::complex<double>;

inline constexpr std::int64_t kGaussNormLimit = 10'000'000;

/// e(z) = exp(2 pi i z) for real z given as the exact fraction num/den.
Complex e_rational(std::int64_t num, std::int64_t den);

/// Table of chi_pi on the residue field Z[w]/pi for a primary prime pi, built by
/// walking the powers of a generator.
class PrimeCharacterTable {
 public:
  explicit PrimeCharacterTable(const EisensteinInt& pi);

  const EisensteinInt& prime() const { return prime_; }
  /// Exponent k with chi_pi(x + y w) = w^k, or -1 when pi divides x + y w.
  int exponent(std::int64_t x, std::int64_t y) const;

 private:
  EisensteinInt prime_;
  std::int64_t p_ = 0;
  bool inert_ = false;
  std::int64_t omega_image_ = 0;
  std::vector<std::int8_t> table_;
};

/// g(r, n) = sum over alpha mod n of chi_n(alpha) e(tr(r alpha / n)) by direct,
/// compensated summation over the canonical residue box. n primary, N(n) <= 10^7.
Complex gauss_sum(const EisensteinInt& r, const EisensteinInt& n);

/// Slow reference path: representatives alpha + n*shift, character values from
/// cubic_symbol_fast, exact traces. Independent of the table machinery above.
Complex gauss_sum_reference(const EisensteinInt& r, const EisensteinInt& n,
                            const EisensteinInt& shift = EisensteinInt{0, 0});

/// Which of the two labellings of the root number to use. kStandard is the
/// production convention g(1, c1) * conj(g(1, c2)); kConjugated exists as a
/// negative control for the functional-equation check.
enum class RootConvention { kStandard, kConjugated };

/// Root number W(chi) of a family element, |W|^2 = cond_norm.
Complex root_number(const FamilyElement& elem, RootConvention convention = RootConvention::kStandard);

/// Whether g(a, d c) = g(a d, c) g(a, d) holds to relative 1e-9 by direct evaluation.
bool twist_identity_check(const EisensteinInt& a, const EisensteinInt& d, const EisensteinInt& c);

/// Thread-safe memo of g(1, c) keyed by c.
class GaussSumCache {
 public:
  Complex unit_shift(const EisensteinInt& c);
  Complex root_number(const FamilyElement& elem, RootConvention convention = RootConvention::kStandard);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<EisensteinInt, Complex> values_;
};

}  // namespace eisen
