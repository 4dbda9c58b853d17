#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "eisen/eisenstein.hpp"

namespace eisen {

/// A value in {0, 1, w, w^2}; roots multiply by adding exponents mod 3.
class CubicValue {
 public:
  constexpr CubicValue() = default;
  static constexpr CubicValue zero() { return CubicValue(-1); }
  static constexpr CubicValue root(int k) { return CubicValue(((k % 3) + 3) % 3); }

  constexpr bool is_zero() const { return exp_ < 0; }
  /// Exponent k of w^k; -1 for zero.
  constexpr int exponent() const { return exp_; }

  constexpr CubicValue conj() const { return is_zero() ? *this : root(-exp_); }
  constexpr CubicValue pow(int e) const {
    if (is_zero()) return e == 0 ? root(0) : *this;
    return root(exp_ * (e % 3));
  }

  friend constexpr CubicValue operator*(CubicValue x, CubicValue y) {
    if (x.is_zero() || y.is_zero()) return zero();
    return root(x.exp_ + y.exp_);
  }
  CubicValue& operator*=(CubicValue o) { return *this = *this * o; }
  friend constexpr bool operator==(CubicValue, CubicValue) = default;

  std::complex<double> to_complex() const;
  /// "0", "1", "w" or "w^2".
  std::string to_string() const;

 private:
  constexpr explicit CubicValue(int e) : exp_(e) {}
  int exp_ = 0;
};

/// Cubic residue symbol (alpha / n)_3 evaluated from the definition: for each prime
/// pi | n the cube root of unity congruent to alpha^{(N(pi)-1)/3} mod pi, multiplied
/// over the factorization of n with multiplicity.
CubicValue cubic_symbol(const EisensteinInt& alpha, const EisensteinInt& n);

/// Same value as cubic_symbol, computed by Euclidean descent with cubic reciprocity.
/// Falls back to cubic_symbol when the supplementary law failed calibration.
CubicValue cubic_symbol_fast(const EisensteinInt& alpha, const EisensteinInt& n);

/// chi_n(1 - w) = w^{(coeff_a * (a - 1) / 3 + coeff_b * b / 3) mod 3} for primary
/// n = a + b w. The coefficients are fitted against cubic_symbol over every primary
/// prime of norm <= calibration_bound, together with a check of the law
/// chi_n(w) = w^{(N(n) - 1)/3}.
struct SupplementaryLaw {
  int coeff_a = 0;
  int coeff_b = 0;
  bool enabled = false;
  std::int64_t calibration_bound = 0;
  std::int64_t primes_checked = 0;

  int ramified_exponent(const EisensteinInt& n) const;
};

/// The process-wide calibrated law (computed once, immutable afterwards).
const SupplementaryLaw& supplementary_law();
SupplementaryLaw calibrate_supplementary_law(std::int64_t norm_bound);

/// Primary primes with norm <= bound in canonical order.
std::vector<EisensteinInt> primary_primes(std::int64_t bound);

/// Member chi_{c1} * conj(chi_{c2}) of the family; conductor c1*c2.
struct FamilyElement {
  EisensteinInt c1;
  EisensteinInt c2;
  EisensteinInt conductor;
  std::int64_t cond_norm = 0;

  /// The conjugate character chi_{c2} * conj(chi_{c1}).
  FamilyElement conjugate() const;

  friend bool operator==(const FamilyElement& x, const FamilyElement& y) {
    return x.c1 == y.c1 && x.c2 == y.c2;
  }
};

/// Canonical order (cond_norm, c1.a, c1.b, c2.a, c2.b).
bool canonical_less(const FamilyElement& x, const FamilyElement& y);

/// c1, c2 primary, square-free, coprime, c1*c2^2 = 1 mod 9, (c1, c2) != (1, 1).
bool is_family_member(const EisensteinInt& c1, const EisensteinInt& c2);

/// Throws DomainError unless is_family_member(c1, c2).
FamilyElement make_family_element(const EisensteinInt& c1, const EisensteinInt& c2);

/// Every family element with cond_norm <= x_max, in canonical order.
std::vector<FamilyElement> enumerate_family(std::int64_t x_max);

/// chi_{c1}(alpha) * chi_{c2}(alpha)^2.
CubicValue chi_eval(const FamilyElement& elem, const EisensteinInt& alpha);

/// x = 1 mod 9 in Z[w].
bool congruent_one_mod9(const EisensteinInt& x);

}  // namespace eisen
