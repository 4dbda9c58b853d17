#include "eisen/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eisen/summation.hpp"

namespace eisen {

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<Int>(a) * b % m);
}

std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  std::int64_t result = 1 % mod;
  base %= mod;
  if (base < 0) base += mod;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, mod);
    base = mulmod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

std::int64_t invmod(std::int64_t a, std::int64_t p) { return powmod(a, p - 2, p); }

std::vector<std::int64_t> distinct_prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Arithmetic in F_p[w] / (w^2 + w + 1) for inert p.
struct Fp2 {
  std::int64_t x, y;
};

Fp2 fp2_mul(Fp2 u, Fp2 v, std::int64_t p) {
  std::int64_t x = (u.x * v.x - u.y * v.y) % p;
  std::int64_t y = (u.x * v.y + u.y * v.x - u.y * v.y) % p;
  if (x < 0) x += p;
  if (y < 0) y += p;
  return {x, y};
}

Fp2 fp2_pow(Fp2 base, std::int64_t e, std::int64_t p) {
  Fp2 result{1, 0};
  while (e > 0) {
    if (e & 1) result = fp2_mul(result, base, p);
    base = fp2_mul(base, base, p);
    e >>= 1;
  }
  return result;
}

}  // namespace

Complex e_rational(std::int64_t num, std::int64_t den) {
  std::int64_t k = num % den;
  if (k < 0) k += den;
  // Fold into [-den/2, den/2] to keep the angle small.
  if (2 * k > den) k -= den;
  double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

PrimeCharacterTable::PrimeCharacterTable(const EisensteinInt& pi) : prime_(pi) {
  if (!is_primary(pi)) throw DomainError("PrimeCharacterTable: " + to_string(pi) + " is not primary");
  auto n = static_cast<std::int64_t>(norm(pi));
  if (pi.b == 0) {
    // Inert prime -p with p = 2 mod 3: residue field F_{p^2}.
    inert_ = true;
    p_ = static_cast<std::int64_t>(-pi.a);
    std::int64_t p = p_;
    std::int64_t order = p * p - 1;
    auto qs = distinct_prime_factors(order);
    Fp2 gen{0, 0};
    bool found = false;
    for (std::int64_t x = 0; x < p && !found; ++x) {
      for (std::int64_t y = 1; y < p && !found; ++y) {
        Fp2 g{x, y};
        found = std::all_of(qs.begin(), qs.end(), [&](std::int64_t q) {
          Fp2 t = fp2_pow(g, order / q, p);
          return !(t.x == 1 && t.y == 0);
        });
        if (found) gen = g;
      }
    }
    if (!found) throw std::logic_error("PrimeCharacterTable: no generator of F_p^2");
    Fp2 c = fp2_pow(gen, order / 3, p);
    int k0 = (c.x == 1 && c.y == 0) ? 0 : (c.x == 0 && c.y == 1) ? 1 : 2;
    table_.assign(static_cast<std::size_t>(p * p), -1);
    Fp2 v{1, 0};
    for (std::int64_t i = 0; i < order; ++i) {
      table_[static_cast<std::size_t>(v.x * p + v.y)] = static_cast<std::int8_t>((i % 3) * k0 % 3);
      v = fp2_mul(v, gen, p);
    }
  } else {
    if (n % 3 != 1) throw DomainError("PrimeCharacterTable: unexpected norm");
    p_ = n;
    std::int64_t p = n;
    // pi = a + b w = 0 mod pi  =>  w = -a / b.
    auto a = static_cast<std::int64_t>(mod_floor(pi.a, p));
    auto b = static_cast<std::int64_t>(mod_floor(pi.b, p));
    omega_image_ = mulmod((p - a) % p, invmod(b, p), p);
    auto qs = distinct_prime_factors(p - 1);
    std::int64_t g = 2;
    while (!std::all_of(qs.begin(), qs.end(), [&](std::int64_t q) { return powmod(g, (p - 1) / q, p) != 1; })) ++g;
    std::int64_t c = powmod(g, (p - 1) / 3, p);
    int k0 = c == 1 ? 0 : c == omega_image_ ? 1 : 2;
    table_.assign(static_cast<std::size_t>(p), -1);
    std::int64_t v = 1;
    for (std::int64_t i = 0; i < p - 1; ++i) {
      table_[static_cast<std::size_t>(v)] = static_cast<std::int8_t>((i % 3) * k0 % 3);
      v = mulmod(v, g, p);
    }
  }
}

int PrimeCharacterTable::exponent(std::int64_t x, std::int64_t y) const {
  if (inert_) {
    std::int64_t xr = x % p_;
    std::int64_t yr = y % p_;
    if (xr < 0) xr += p_;
    if (yr < 0) yr += p_;
    return table_[static_cast<std::size_t>(xr * p_ + yr)];
  }
  std::int64_t idx = static_cast<std::int64_t>((static_cast<Int>(x) + static_cast<Int>(y) * omega_image_) % p_);
  if (idx < 0) idx += p_;
  return table_[static_cast<std::size_t>(idx)];
}

Complex gauss_sum(const EisensteinInt& r, const EisensteinInt& n) {
  if (!is_primary(n)) throw DomainError("gauss_sum: modulus " + to_string(n) + " is not primary");
  auto big_n = static_cast<std::int64_t>(norm(n));
  if (big_n > kGaussNormLimit) {
    throw CapacityError("gauss_sum: N(" + to_string(n) + ") = " + std::to_string(big_n) + " exceeds 10^7");
  }
  auto fac = factor(n);
  std::vector<PrimeCharacterTable> tables;
  std::vector<int> mult;
  for (const auto& [pi, e] : fac.factors) {
    tables.emplace_back(pi);
    mult.push_back(e % 3);
  }
  ResidueBox box = residue_box(n);
  EisensteinInt m = r * n.conj();
  // tr(r alpha / n) = tr(alpha m) / N(n), with tr((x + y w) m) = x*kx + y*ky.
  auto kx = static_cast<std::int64_t>(mod_floor(2 * m.a - m.b, big_n));
  auto ky = static_cast<std::int64_t>(mod_floor(-m.a - m.b, big_n));

  // Tally residues by (character exponent, phase); the exponentials are summed once per phase.
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(3 * big_n), 0);
  for (std::int64_t y = 0; y < box.y_period; ++y) {
    std::int64_t phase = mulmod(y, ky, big_n);
    for (std::int64_t x = 0; x < box.x_period; ++x) {
      int expo = 0;
      bool zero = false;
      for (std::size_t i = 0; i < tables.size(); ++i) {
        int k = tables[i].exponent(x, y);
        if (k < 0) {
          zero = true;
          break;
        }
        expo += mult[i] * k;
      }
      if (!zero) ++counts[static_cast<std::size_t>((expo % 3) * big_n + phase)];
      phase += kx;
      if (phase >= big_n) phase -= big_n;
    }
  }
  CompensatedComplexSum bucket[3];
  for (int j = 0; j < 3; ++j) {
    const std::uint32_t* row = counts.data() + j * big_n;
    for (std::int64_t k = 0; k < big_n; ++k) {
      if (row[k] != 0) bucket[j].add(static_cast<double>(row[k]) * e_rational(k, big_n));
    }
  }
  const Complex w = CubicValue::root(1).to_complex();
  return bucket[0].value() + w * bucket[1].value() + std::conj(w) * bucket[2].value();
}

Complex gauss_sum_reference(const EisensteinInt& r, const EisensteinInt& n, const EisensteinInt& shift) {
  if (!is_primary(n)) throw DomainError("gauss_sum_reference: modulus is not primary");
  auto big_n = static_cast<std::int64_t>(norm(n));
  if (big_n > kGaussNormLimit) throw CapacityError("gauss_sum_reference: norm exceeds 10^7");
  ResidueBox box = residue_box(n);
  EisensteinInt offset = n * shift;
  CompensatedComplexSum acc;
  for (std::int64_t y = 0; y < box.y_period; ++y) {
    for (std::int64_t x = 0; x < box.x_period; ++x) {
      EisensteinInt alpha = EisensteinInt{x, y} + offset;
      CubicValue chi = cubic_symbol_fast(alpha, n);
      if (chi.is_zero()) continue;
      Int tr = trace(r * alpha * n.conj());
      acc.add(chi.to_complex() * e_rational(static_cast<std::int64_t>(mod_floor(tr, big_n)), big_n));
    }
  }
  return acc.value();
}

Complex root_number(const FamilyElement& elem, RootConvention convention) {
  Complex w = gauss_sum({1, 0}, elem.c1) * std::conj(gauss_sum({1, 0}, elem.c2));
  return convention == RootConvention::kStandard ? w : std::conj(w);
}

bool twist_identity_check(const EisensteinInt& a, const EisensteinInt& d, const EisensteinInt& c) {
  Complex lhs = gauss_sum(a, d * c);
  Complex rhs = gauss_sum(a * d, c) * gauss_sum(a, d);
  double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return std::abs(lhs - rhs) <= 1e-9 * scale;
}

Complex GaussSumCache::unit_shift(const EisensteinInt& c) {
  {
    std::lock_guard lock(mu_);
    auto it = values_.find(c);
    if (it != values_.end()) return it->second;
  }
  Complex g = gauss_sum({1, 0}, c);
  std::lock_guard lock(mu_);
  values_.emplace(c, g);
  return g;
}

Complex GaussSumCache::root_number(const FamilyElement& elem, RootConvention convention) {
  Complex w = unit_shift(elem.c1) * std::conj(unit_shift(elem.c2));
  return convention == RootConvention::kStandard ? w : std::conj(w);
}

std::size_t GaussSumCache::size() const {
  std::lock_guard lock(mu_);
  return values_.size();
}

}  // namespace eisen
