#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eisen {

using Int = __int128;

/// Raised when an input falls outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an input exceeds a configured computational bound.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

std::string to_string(Int v);

/// Element a + b*w of Z[w], w = exp(2 pi i / 3), w^2 = -1 - w.
struct EisensteinInt {
  Int a = 0;
  Int b = 0;

  constexpr EisensteinInt() = default;
  constexpr EisensteinInt(Int a_, Int b_ = 0) : a(a_), b(b_) {}  // NOLINT

  static constexpr EisensteinInt omega() { return {0, 1}; }
  static constexpr EisensteinInt omega2() { return {-1, -1}; }

  constexpr bool is_zero() const { return a == 0 && b == 0; }

  friend constexpr bool operator==(const EisensteinInt&, const EisensteinInt&) = default;

  friend constexpr EisensteinInt operator+(EisensteinInt x, EisensteinInt y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend constexpr EisensteinInt operator-(EisensteinInt x, EisensteinInt y) {
    return {x.a - y.a, x.b - y.b};
  }
  friend constexpr EisensteinInt operator-(EisensteinInt x) { return {-x.a, -x.b}; }
  friend constexpr EisensteinInt operator*(EisensteinInt x, EisensteinInt y) {
    // (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2, with w^2 = -1 - w.
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
  }
  EisensteinInt& operator+=(EisensteinInt o) { return *this = *this + o; }
  EisensteinInt& operator-=(EisensteinInt o) { return *this = *this - o; }
  EisensteinInt& operator*=(EisensteinInt o) { return *this = *this * o; }

  /// Complex conjugate: a + b*w^2 = (a - b) - b*w.
  constexpr EisensteinInt conj() const { return {a - b, -b}; }

  /// Canonical (norm, a, b) ordering.
  friend bool operator<(const EisensteinInt& x, const EisensteinInt& y);
};

std::string to_string(const EisensteinInt& x);
std::ostream& operator<<(std::ostream& os, const EisensteinInt& x);

/// Parses "a+b*w" style literals: optional sign, integer, optional +/- integer "*w".
/// Whitespace is ignored; "w", "-w" and "3*w" alone are accepted.
EisensteinInt parse_eisenstein(std::string_view text);

constexpr Int norm(const EisensteinInt& x) { return x.a * x.a - x.a * x.b + x.b * x.b; }

/// tr(x) = x + conj(x) = 2a - b.
constexpr Int trace(const EisensteinInt& x) { return 2 * x.a - x.b; }

/// The six units, in the order 1, w, w^2, -1, -w, -w^2.
const std::vector<EisensteinInt>& units();
bool is_unit(const EisensteinInt& x);

/// Primary means x = 1 mod 3, i.e. a = 1 and b = 0 (mod 3).
bool is_primary(const EisensteinInt& x);
bool divisible_by(const EisensteinInt& x, const EisensteinInt& y);
bool divisible_by_ramified(const EisensteinInt& x);

/// 1 - w, the prime above 3.
constexpr EisensteinInt ramified_prime() { return {1, -1}; }

/// Rounds p/q to the nearest integer, ties toward zero. q > 0.
Int round_div(Int p, Int q);
Int floor_div(Int p, Int q);
Int mod_floor(Int p, Int q);

struct QuotRem {
  EisensteinInt quot;
  EisensteinInt rem;
};

/// Euclidean division with coordinate-wise nearest rounding: x = q*y + r, N(r) < N(y).
QuotRem divmod(const EisensteinInt& x, const EisensteinInt& y);

/// Exact division; throws DomainError when y does not divide x.
EisensteinInt exact_div(const EisensteinInt& x, const EisensteinInt& y);

struct Associate {
  EisensteinInt unit;
  EisensteinInt primary;
};

/// unit * primary == x with primary = 1 mod 3. Requires gcd(N(x), 3) = 1.
Associate primary_associate(const EisensteinInt& x);

/// The associate with 0 <= b < a (argument in [0, pi/3)); zero maps to zero.
EisensteinInt canonical_associate(const EisensteinInt& x);

/// Generator of the ideal (x, y): 1 for coprime inputs, the primary generator when
/// coprime to 3, the canonical associate otherwise.
EisensteinInt gcd(const EisensteinInt& x, const EisensteinInt& y);

inline constexpr Int kFactorNormLimit = 1'000'000'000'000;

/// Unit times a product of prime powers. Primes are primary except the ramified
/// prime, which is stored as 1 - w.
struct Factorization {
  EisensteinInt unit{1, 0};
  std::vector<std::pair<EisensteinInt, int>> factors;

  EisensteinInt product() const;
};

/// Trial division over rational primes up to sqrt(N(n)). Requires N(n) <= 10^12.
Factorization factor(const EisensteinInt& n);

/// Mobius function on primary n with N(n) coprime to 3.
int mobius(const EisensteinInt& n);
bool is_squarefree(const EisensteinInt& n);

/// All primary elements with 0 < N <= bound, sorted by (norm, a, b).
std::vector<EisensteinInt> enumerate_primary(std::int64_t bound);

/// Number of primary elements with 0 < N <= bound (row-wise lattice count).
std::int64_t count_primary(std::int64_t bound);

/// Visits primary elements in an unspecified order (faster than enumerate_primary).
void for_each_primary(std::int64_t bound, const std::function<void(std::int64_t a, std::int64_t b)>& fn);

/// Hermite form of the ideal n*Z[w]: residues x + y*w with 0 <= x < x_period,
/// 0 <= y < y_period form a complete residue system modulo n.
struct ResidueBox {
  std::int64_t x_period = 1;
  std::int64_t y_period = 1;
};
ResidueBox residue_box(const EisensteinInt& n);

/// Rational primes up to limit (simple sieve).
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

}  // namespace eisen

template <>
struct std::hash<eisen::EisensteinInt> {
  std::size_t operator()(const eisen::EisensteinInt& x) const noexcept {
    auto a = static_cast<std::uint64_t>(static_cast<std::int64_t>(x.a));
    auto b = static_cast<std::uint64_t>(static_cast<std::int64_t>(x.b));
    return std::hash<std::uint64_t>{}(a * 0x9E3779B97F4A7C15ULL ^ (b + 0x632BE59BD9B4E019ULL));
  }
};
