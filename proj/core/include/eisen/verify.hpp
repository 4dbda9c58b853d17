#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "eisen/characters.hpp"

namespace eisen {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  /// Smaller sweeps for the l-function and moment suites.
  bool quick = false;
};

/// Suites: "core", "characters", "gauss", "lfunctions", "moments", "cache" or "all".
std::vector<CheckResult> run_verify(const std::string& suite, const VerifyOptions& options = {});

const std::vector<std::string>& verify_suites();

/// Uniform primary element with coordinates drawn from [-radius, radius] before normalizing.
EisensteinInt random_primary(std::mt19937_64& rng, std::int64_t radius);

/// Brute-force primitivity: no prime pi | f leaves chi trivial on 1 + (f / pi) Z[w].
bool is_primitive_brute_force(const FamilyElement& elem);

}  // namespace eisen
