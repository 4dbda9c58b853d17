#include "eisen/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace eisen {

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("config: " + what); };
  if (x_max < 1) fail("x_max must be positive");
  if (!(tolerance >= 1e-12 && tolerance <= 1e-4)) fail("tolerance must lie in [1e-12, 1e-4]");
  if (fixed_y && !(*fixed_y > 0.0)) fail("fixed y must be positive");
  if (prime_cutoff < 100) fail("prime_cutoff must be at least 100");
  if (cube_cutoff < 10) fail("cube_cutoff must be at least 10");
  if (inner_cutoff < 10) fail("inner_cutoff must be at least 10");
  if (threads < 1) fail("threads must be at least 1");
}

std::filesystem::path default_cache_path() {
  if (const char* env = std::getenv(kCachePathEnv); env != nullptr && *env != '\0') return env;
  return "eisen_cache.jsonl";
}

RunConfig default_config() {
  RunConfig c;
  c.cache_path = default_cache_path();
  return c;
}

OutputFormat parse_output_format(const std::string& s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "jsonl") return OutputFormat::kJsonl;
  throw std::invalid_argument("unknown output format '" + s + "' (expected csv or jsonl)");
}

std::string to_string(OutputFormat f) { return f == OutputFormat::kCsv ? "csv" : "jsonl"; }

RunConfig load_config(const std::filesystem::path& file, RunConfig base) {
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot read config file " + file.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config file " + file.string() + ": " + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "x_max") {
        base.x_max = value.get<std::int64_t>();
      } else if (key == "tolerance") {
        base.tolerance = value.get<double>();
      } else if (key == "y_strategy") {
        if (value.is_string() && value.get<std::string>() == "balanced") {
          base.fixed_y.reset();
        } else if (value.is_number()) {
          base.fixed_y = value.get<double>();
        } else {
          throw std::invalid_argument("config: y_strategy must be \"balanced\" or a number");
        }
      } else if (key == "prime_cutoff") {
        base.prime_cutoff = value.get<std::int64_t>();
      } else if (key == "cube_cutoff") {
        base.cube_cutoff = value.get<std::int64_t>();
      } else if (key == "inner_cutoff") {
        base.inner_cutoff = value.get<std::int64_t>();
      } else if (key == "threads") {
        base.threads = value.get<int>();
      } else if (key == "cache_path") {
        base.cache_path = value.get<std::string>();
      } else if (key == "output_format") {
        base.output_format = parse_output_format(value.get<std::string>());
      } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::type_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return base;
}

}  // namespace eisen
