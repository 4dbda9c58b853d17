#include "eisen/eisenstein.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <tuple>

namespace eisen {

namespace {

Int abs_int(Int v) { return v < 0 ? -v : v; }

Int int_gcd(Int x, Int y) {
  x = abs_int(x);
  y = abs_int(y);
  while (y != 0) {
    Int t = x % y;
    x = y;
    y = t;
  }
  return x;
}

std::int64_t isqrt(std::int64_t n) {
  if (n <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  Int result = 1;
  Int b = mod_floor(base, mod);
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

// Primary prime of norm p for a rational prime p = 1 mod 3.
EisensteinInt split_prime_above(std::int64_t p) {
  std::int64_t t = 1;
  for (std::int64_t g = 2; t == 1; ++g) t = powmod(g, (p - 1) / 3, p);
  // t is a primitive cube root of unity mod p, so w - t lies in a prime above p.
  EisensteinInt pi = gcd(EisensteinInt{p, 0}, EisensteinInt{-t, 1});
  if (norm(pi) != p) throw std::logic_error("split_prime_above: gcd did not isolate a prime");
  return pi;
}

}  // namespace

std::string to_string(Int v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  // Avoid overflow on the most negative value by working with negatives.
  std::string digits;
  Int x = v;
  while (x != 0) {
    int d = static_cast<int>(x % 10);
    digits.push_back(static_cast<char>('0' + (d < 0 ? -d : d)));
    x /= 10;
  }
  if (neg) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

bool operator<(const EisensteinInt& x, const EisensteinInt& y) {
  return std::make_tuple(norm(x), x.a, x.b) < std::make_tuple(norm(y), y.a, y.b);
}

std::string to_string(const EisensteinInt& x) {
  if (x.b == 0) return to_string(x.a);
  std::string out;
  if (x.a != 0) out = to_string(x.a);
  Int b = x.b;
  if (b < 0) {
    out += "-";
    b = -b;
  } else if (x.a != 0) {
    out += "+";
  }
  if (b != 1) out += to_string(b) + "*";
  out += "w";
  return out;
}

std::ostream& operator<<(std::ostream& os, const EisensteinInt& x) { return os << to_string(x); }

EisensteinInt parse_eisenstein(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty Eisenstein literal");

  Int a = 0;
  Int b = 0;
  std::size_t pos = 0;
  bool any_term = false;
  while (pos < s.size()) {
    Int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    } else if (any_term) {
      throw std::invalid_argument("malformed Eisenstein literal: " + std::string(text));
    }
    std::size_t start = pos;
    Int value = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      value = value * 10 + (s[pos] - '0');
      if (value > Int{1} << 100) throw std::invalid_argument("Eisenstein literal out of range");
      ++pos;
    }
    bool has_digits = pos > start;
    bool is_w = false;
    if (pos < s.size() && s[pos] == '*') {
      if (!has_digits || pos + 1 >= s.size() || s[pos + 1] != 'w') {
        throw std::invalid_argument("malformed Eisenstein literal: " + std::string(text));
      }
      pos += 2;
      is_w = true;
    } else if (pos < s.size() && s[pos] == 'w') {
      if (has_digits) throw std::invalid_argument("malformed Eisenstein literal: " + std::string(text));
      ++pos;
      is_w = true;
      value = 1;
    } else if (!has_digits) {
      throw std::invalid_argument("malformed Eisenstein literal: " + std::string(text));
    }
    if (is_w) {
      b += sign * value;
    } else {
      a += sign * value;
    }
    any_term = true;
  }
  return {a, b};
}

const std::vector<EisensteinInt>& units() {
  static const std::vector<EisensteinInt> kUnits = {
      {1, 0}, {0, 1}, {-1, -1}, {-1, 0}, {0, -1}, {1, 1}};
  return kUnits;
}

bool is_unit(const EisensteinInt& x) { return norm(x) == 1; }

Int floor_div(Int p, Int q) {
  Int d = p / q;
  if ((p % q != 0) && ((p < 0) != (q < 0))) --d;
  return d;
}

Int mod_floor(Int p, Int q) { return p - floor_div(p, q) * q; }

Int round_div(Int p, Int q) {
  Int f = floor_div(p, q);
  Int rem = p - f * q;  // in [0, q)
  if (2 * rem > q) return f + 1;
  if (2 * rem < q) return f;
  // Tie: pick the candidate closer to zero.
  return f >= 0 ? f : f + 1;
}

bool is_primary(const EisensteinInt& x) { return mod_floor(x.a, 3) == 1 && mod_floor(x.b, 3) == 0; }

bool divisible_by(const EisensteinInt& x, const EisensteinInt& y) {
  if (y.is_zero()) return x.is_zero();
  Int n = norm(y);
  EisensteinInt t = x * y.conj();
  return t.a % n == 0 && t.b % n == 0;
}

bool divisible_by_ramified(const EisensteinInt& x) { return mod_floor(x.a + x.b, 3) == 0; }

QuotRem divmod(const EisensteinInt& x, const EisensteinInt& y) {
  if (y.is_zero()) throw DomainError("divmod: division by zero");
  Int n = norm(y);
  EisensteinInt t = x * y.conj();
  EisensteinInt q{round_div(t.a, n), round_div(t.b, n)};
  return {q, x - q * y};
}

EisensteinInt exact_div(const EisensteinInt& x, const EisensteinInt& y) {
  if (y.is_zero()) throw DomainError("exact_div: division by zero");
  Int n = norm(y);
  EisensteinInt t = x * y.conj();
  if (t.a % n != 0 || t.b % n != 0) throw DomainError("exact_div: " + to_string(y) + " does not divide " + to_string(x));
  return {t.a / n, t.b / n};
}

Associate primary_associate(const EisensteinInt& x) {
  if (norm(x) % 3 == 0) {
    throw DomainError("primary_associate: " + to_string(x) + " has norm divisible by 3");
  }
  for (const auto& u : units()) {
    EisensteinInt candidate = u * x;
    if (is_primary(candidate)) return {u.conj(), candidate};  // conj(u) = u^{-1}
  }
  throw std::logic_error("primary_associate: no unit normalizes the input");
}

EisensteinInt canonical_associate(const EisensteinInt& x) {
  if (x.is_zero()) return x;
  for (const auto& u : units()) {
    EisensteinInt c = u * x;
    if (c.b >= 0 && c.b < c.a) return c;
  }
  throw std::logic_error("canonical_associate: no associate in the fundamental sector");
}

EisensteinInt gcd(const EisensteinInt& x, const EisensteinInt& y) {
  if (x.is_zero() && y.is_zero()) throw DomainError("gcd: both arguments are zero");
  EisensteinInt p = x;
  EisensteinInt q = y;
  while (!q.is_zero()) {
    EisensteinInt r = divmod(p, q).rem;
    p = q;
    q = r;
  }
  if (is_unit(p)) return {1, 0};
  if (norm(p) % 3 != 0) return primary_associate(p).primary;
  return canonical_associate(p);
}

EisensteinInt Factorization::product() const {
  EisensteinInt out = unit;
  for (const auto& [prime, e] : factors) {
    for (int i = 0; i < e; ++i) out *= prime;
  }
  return out;
}

Factorization factor(const EisensteinInt& n) {
  if (n.is_zero()) throw DomainError("factor: zero has no factorization");
  Int nn = norm(n);
  if (nn > kFactorNormLimit) {
    throw CapacityError("factor: norm " + to_string(nn) + " of " + to_string(n) + " exceeds 10^12");
  }
  Factorization out;
  EisensteinInt rest = n;
  auto rest_norm = static_cast<std::int64_t>(nn);

  auto strip = [&](const EisensteinInt& prime) {
    int e = 0;
    while (divisible_by(rest, prime)) {
      rest = exact_div(rest, prime);
      ++e;
    }
    if (e > 0) out.factors.emplace_back(prime, e);
    rest_norm = static_cast<std::int64_t>(norm(rest));
  };

  for (std::int64_t p = 2; p * p <= rest_norm; p += (p == 2 ? 1 : 2)) {
    if (rest_norm % p != 0) continue;
    if (p == 3) {
      strip(ramified_prime());
    } else if (p % 3 == 2) {
      strip(EisensteinInt{-p, 0});
    } else {
      EisensteinInt pi = split_prime_above(p);
      strip(pi);
      strip(primary_associate(pi.conj()).primary);
    }
  }
  if (rest_norm > 1) {
    // What remains has prime norm: a split prime or the ramified prime.
    if (rest_norm == 3) {
      strip(ramified_prime());
    } else {
      strip(primary_associate(rest).primary);
    }
  }
  if (!is_unit(rest)) throw std::logic_error("factor: residual cofactor is not a unit");
  out.unit = rest;
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  return out;
}

int mobius(const EisensteinInt& n) {
  if (!is_primary(n)) throw DomainError("mobius: " + to_string(n) + " is not primary");
  int sign = 1;
  for (const auto& [prime, e] : factor(n).factors) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

bool is_squarefree(const EisensteinInt& n) {
  for (const auto& f : factor(n).factors) {
    if (f.second > 1) return false;
  }
  return true;
}

namespace {

// Visits primary (a, b) with N <= bound row by row (b fixed, b = 0 mod 3).
template <typename RowFn>
void primary_rows(std::int64_t bound, RowFn&& row) {
  if (bound < 1) return;
  std::int64_t b_max = isqrt(4 * bound / 3) + 1;
  auto b_start = static_cast<std::int64_t>(floor_div(-b_max, 3)) * 3;
  for (std::int64_t b = b_start; b <= b_max; b += 3) {
    // a^2 - a b + b^2 <= bound  <=>  (2a - b)^2 <= 4 bound - 3 b^2.
    std::int64_t disc = 4 * bound - 3 * b * b;
    if (disc < 0) continue;
    std::int64_t s = isqrt(disc);
    // 2a - b in [-s, s]  =>  a in [ceil((b - s)/2), floor((b + s)/2)].
    auto lo = static_cast<std::int64_t>(-floor_div(-(b - s), 2));
    auto hi = static_cast<std::int64_t>(floor_div(b + s, 2));
    if (lo > hi) continue;
    row(b, lo, hi);
  }
}

}  // namespace

std::int64_t count_primary(std::int64_t bound) {
  std::int64_t total = 0;
  primary_rows(bound, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
    // Count a = 1 mod 3 in [lo, hi].
    auto first = lo + static_cast<std::int64_t>(mod_floor(1 - lo, 3));
    if (first <= hi) total += (hi - first) / 3 + 1;
  });
  return total;
}

void for_each_primary(std::int64_t bound, const std::function<void(std::int64_t, std::int64_t)>& fn) {
  primary_rows(bound, [&](std::int64_t b, std::int64_t lo, std::int64_t hi) {
    for (auto a = lo + static_cast<std::int64_t>(mod_floor(1 - lo, 3)); a <= hi; a += 3) fn(a, b);
  });
}

std::vector<EisensteinInt> enumerate_primary(std::int64_t bound) {
  if (bound < 1) throw DomainError("enumerate_primary: bound must be >= 1");
  std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> keyed;
  for_each_primary(bound, [&](std::int64_t a, std::int64_t b) { keyed.emplace_back(a * a - a * b + b * b, a, b); });
  std::sort(keyed.begin(), keyed.end());
  std::vector<EisensteinInt> out;
  out.reserve(keyed.size());
  for (const auto& [n, a, b] : keyed) out.emplace_back(a, b);
  return out;
}

ResidueBox residue_box(const EisensteinInt& n) {
  if (n.is_zero()) throw DomainError("residue_box: zero modulus");
  // The ideal is spanned by n = (a, b) and n*w = (-b, a - b).
  Int y_period = int_gcd(n.b, n.a - n.b);
  Int nn = norm(n);
  if (y_period == 0) y_period = 1;  // unreachable for n != 0
  return {static_cast<std::int64_t>(nn / y_period), static_cast<std::int64_t>(y_period)};
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

}  // namespace eisen
