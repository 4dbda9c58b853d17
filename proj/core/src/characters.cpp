#include "eisen/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

namespace eisen {

namespace {

// x^e mod p in Z[w]/(p).
EisensteinInt pow_mod(EisensteinInt x, Int e, const EisensteinInt& p) {
  EisensteinInt result{1, 0};
  x = divmod(x, p).rem;
  while (e > 0) {
    if (e & 1) result = divmod(result * x, p).rem;
    x = divmod(x * x, p).rem;
    e >>= 1;
  }
  return result;
}

CubicValue prime_symbol(const EisensteinInt& alpha, const EisensteinInt& pi) {
  if (divisible_by(alpha, pi)) return CubicValue::zero();
  EisensteinInt r = pow_mod(alpha, (norm(pi) - 1) / 3, pi);
  EisensteinInt w{1, 0};
  for (int k = 0; k < 3; ++k) {
    if (divisible_by(r - w, pi)) return CubicValue::root(k);
    w *= EisensteinInt::omega();
  }
  throw std::logic_error("cubic_symbol: power is not a cube root of unity mod " + to_string(pi));
}

void require_primary_modulus(const EisensteinInt& n, const char* where) {
  if (!is_primary(n)) {
    throw DomainError(std::string(where) + ": modulus " + to_string(n) + " is not primary");
  }
}

// Exponent j with u = +-w^j.
int unit_exponent(const EisensteinInt& u) {
  const auto& us = units();
  for (int i = 0; i < 6; ++i) {
    if (us[static_cast<std::size_t>(i)] == u) return i % 3;
  }
  throw std::logic_error("unit_exponent: not a unit");
}

int omega_law_exponent(const EisensteinInt& n) {
  return static_cast<int>(mod_floor((norm(n) - 1) / 3, 3));
}

CubicValue descent(EisensteinInt alpha, EisensteinInt n, const SupplementaryLaw& law) {
  int acc = 0;
  while (true) {
    if (norm(n) == 1) return CubicValue::root(acc);
    alpha = divmod(alpha, n).rem;
    if (alpha.is_zero()) return CubicValue::zero();
    int k = 0;
    while (divisible_by_ramified(alpha)) {
      alpha = exact_div(alpha, ramified_prime());
      ++k;
    }
    auto [unit, prim] = primary_associate(alpha);
    acc += k * law.ramified_exponent(n) + unit_exponent(unit) * omega_law_exponent(n);
    // Reciprocity for primary arguments: (prim / n) = (n / prim).
    alpha = n;
    n = prim;
  }
}

}  // namespace

std::complex<double> CubicValue::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  constexpr double kHalfRoot3 = std::numbers::sqrt3 / 2.0;
  switch (exp_) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {-0.5, kHalfRoot3};
    default:
      return {-0.5, -kHalfRoot3};
  }
}

std::string CubicValue::to_string() const {
  if (is_zero()) return "0";
  static const char* kNames[] = {"1", "w", "w^2"};
  return kNames[exp_];
}

CubicValue cubic_symbol(const EisensteinInt& alpha, const EisensteinInt& n) {
  require_primary_modulus(n, "cubic_symbol");
  CubicValue out = CubicValue::root(0);
  for (const auto& [pi, e] : factor(n).factors) out *= prime_symbol(alpha, pi).pow(e);
  return out;
}

int SupplementaryLaw::ramified_exponent(const EisensteinInt& n) const {
  Int m = floor_div(n.a - 1, 3);
  Int t = floor_div(n.b, 3);
  return static_cast<int>(mod_floor(coeff_a * m + coeff_b * t, 3));
}

std::vector<EisensteinInt> primary_primes(std::int64_t bound) {
  std::vector<EisensteinInt> out;
  for (const auto& x : enumerate_primary(bound)) {
    auto f = factor(x);
    if (f.factors.size() == 1 && f.factors[0].second == 1 && f.unit == EisensteinInt{1, 0}) out.push_back(x);
  }
  return out;
}

SupplementaryLaw calibrate_supplementary_law(std::int64_t norm_bound) {
  SupplementaryLaw law;
  law.calibration_bound = norm_bound;
  auto primes = primary_primes(norm_bound);
  law.primes_checked = static_cast<std::int64_t>(primes.size());

  std::vector<int> observed;
  observed.reserve(primes.size());
  for (const auto& pi : primes) {
    auto w_value = prime_symbol(EisensteinInt::omega(), pi);
    if (w_value.exponent() != omega_law_exponent(pi)) return law;  // disabled
    observed.push_back(prime_symbol(ramified_prime(), pi).exponent());
  }

  int matches = 0;
  for (int ca = 0; ca < 3; ++ca) {
    for (int cb = 0; cb < 3; ++cb) {
      SupplementaryLaw candidate = law;
      candidate.coeff_a = ca;
      candidate.coeff_b = cb;
      bool ok = true;
      for (std::size_t i = 0; i < primes.size() && ok; ++i) {
        ok = candidate.ramified_exponent(primes[i]) == observed[i];
      }
      if (ok) {
        law.coeff_a = ca;
        law.coeff_b = cb;
        ++matches;
      }
    }
  }
  law.enabled = matches == 1;
  return law;
}

const SupplementaryLaw& supplementary_law() {
  static const SupplementaryLaw kLaw = calibrate_supplementary_law(10'000);
  return kLaw;
}

CubicValue cubic_symbol_fast(const EisensteinInt& alpha, const EisensteinInt& n) {
  require_primary_modulus(n, "cubic_symbol_fast");
  const auto& law = supplementary_law();
  if (!law.enabled) return cubic_symbol(alpha, n);
  return descent(alpha, n, law);
}

bool congruent_one_mod9(const EisensteinInt& x) { return mod_floor(x.a, 9) == 1 && mod_floor(x.b, 9) == 0; }

FamilyElement FamilyElement::conjugate() const {
  FamilyElement out = *this;
  std::swap(out.c1, out.c2);
  return out;
}

bool canonical_less(const FamilyElement& x, const FamilyElement& y) {
  return std::make_tuple(x.cond_norm, x.c1.a, x.c1.b, x.c2.a, x.c2.b) <
         std::make_tuple(y.cond_norm, y.c1.a, y.c1.b, y.c2.a, y.c2.b);
}

bool is_family_member(const EisensteinInt& c1, const EisensteinInt& c2) {
  if (!is_primary(c1) || !is_primary(c2)) return false;
  if (c1 == EisensteinInt{1, 0} && c2 == EisensteinInt{1, 0}) return false;
  if (!congruent_one_mod9(c1 * c2 * c2)) return false;
  if (!is_unit(gcd(c1, c2))) return false;
  return is_squarefree(c1) && is_squarefree(c2);
}

FamilyElement make_family_element(const EisensteinInt& c1, const EisensteinInt& c2) {
  if (!is_family_member(c1, c2)) {
    throw DomainError("(" + to_string(c1) + ", " + to_string(c2) + ") is not a family member");
  }
  EisensteinInt cond = c1 * c2;
  return {c1, c2, cond, static_cast<std::int64_t>(norm(cond))};
}

std::vector<FamilyElement> enumerate_family(std::int64_t x_max) {
  std::vector<FamilyElement> out;
  if (x_max < 1) return out;

  struct Entry {
    EisensteinInt value;
    std::int64_t norm;
    int a9, b9;
    std::vector<EisensteinInt> primes;
  };
  std::vector<Entry> squarefree;
  for (const auto& x : enumerate_primary(x_max)) {
    auto f = factor(x);
    bool sf = std::all_of(f.factors.begin(), f.factors.end(), [](const auto& pe) { return pe.second == 1; });
    if (!sf) continue;
    Entry e{x, static_cast<std::int64_t>(norm(x)), static_cast<int>(mod_floor(x.a, 9)),
            static_cast<int>(mod_floor(x.b, 9)), {}};
    for (const auto& pe : f.factors) e.primes.push_back(pe.first);
    squarefree.push_back(std::move(e));
  }

  auto mul9 = [](int a1, int b1, int a2, int b2) {
    int a = a1 * a2 - b1 * b2;
    int b = a1 * b2 + b1 * a2 - b1 * b2;
    return std::pair<int, int>{((a % 9) + 9) % 9, ((b % 9) + 9) % 9};
  };

  for (const auto& e1 : squarefree) {
    std::int64_t limit = x_max / e1.norm;
    for (const auto& e2 : squarefree) {
      if (e2.norm > limit) break;  // sorted by norm
      if (e1.norm == 1 && e2.norm == 1) continue;
      auto [sa, sb] = mul9(e2.a9, e2.b9, e2.a9, e2.b9);
      auto [pa, pb] = mul9(e1.a9, e1.b9, sa, sb);
      if (pa != 1 || pb != 0) continue;
      bool coprime = true;
      for (const auto& p : e1.primes) {
        if (std::find(e2.primes.begin(), e2.primes.end(), p) != e2.primes.end()) {
          coprime = false;
          break;
        }
      }
      if (!coprime) continue;
      EisensteinInt cond = e1.value * e2.value;
      out.push_back({e1.value, e2.value, cond, e1.norm * e2.norm});
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

CubicValue chi_eval(const FamilyElement& elem, const EisensteinInt& alpha) {
  return cubic_symbol_fast(alpha, elem.c1) * cubic_symbol_fast(alpha, elem.c2).pow(2);
}

}  // namespace eisen
