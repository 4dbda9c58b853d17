#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace eisen {

enum class OutputFormat { kCsv, kJsonl };

struct RunConfig {
  std::int64_t x_max = 100'000;
  double tolerance = 1e-8;
  std::optional<double> fixed_y;  // empty means balanced Y = sqrt(3 cond)
  std::int64_t prime_cutoff = 100'000;
  std::int64_t cube_cutoff = 1'000;
  std::int64_t inner_cutoff = 1'000;
  int threads = 1;
  std::filesystem::path cache_path;
  OutputFormat output_format = OutputFormat::kCsv;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

inline constexpr const char* kCachePathEnv = "EISEN_CACHE_PATH";

/// $EISEN_CACHE_PATH if set, otherwise "eisen_cache.jsonl".
std::filesystem::path default_cache_path();

/// Defaults with the cache path taken from the environment.
RunConfig default_config();

/// Overlays the keys of a JSON config file onto base. Unknown keys are an error.
/// Keys: x_max, tolerance, y_strategy ("balanced" or a number), prime_cutoff,
/// cube_cutoff, inner_cutoff, threads, cache_path, output_format ("csv" | "jsonl").
RunConfig load_config(const std::filesystem::path& file, RunConfig base = default_config());

OutputFormat parse_output_format(const std::string& s);
std::string to_string(OutputFormat f);

}  // namespace eisen
