#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "eisen/lfunction.hpp"

namespace eisen {

inline constexpr int kCacheSchemaVersion = 1;

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CacheRecord {
  std::int64_t c1_a = 0, c1_b = 0, c2_a = 0, c2_b = 0;
  std::int64_t cond_norm = 0;
  double l_re = 0.0, l_im = 0.0;
  double w_re = 0.0, w_im = 0.0;
  double y_param = 0.0;
  double trunc_bound = 0.0;
  int schema_version = kCacheSchemaVersion;

  using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>;
  Key key() const { return {c1_a, c1_b, c2_a, c2_b}; }

  friend bool operator==(const CacheRecord&, const CacheRecord&) = default;
};

CacheRecord to_cache_record(const LValueRecord& r);
/// Rebuilds the family element (membership is re-checked).
LValueRecord to_lvalue_record(const CacheRecord& c);

/// One JSON object, no trailing newline.
std::string serialize(const CacheRecord& r);
/// Throws SchemaError on malformed input or a schema_version other than kCacheSchemaVersion.
CacheRecord parse_cache_line(const std::string& line);

/// JSONL file of CacheRecords keyed by (c1, c2). Later lines replace earlier ones.
class LValueCache {
 public:
  LValueCache() = default;
  explicit LValueCache(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }
  std::size_t size() const { return records_.size(); }

  std::optional<CacheRecord> find(const FamilyElement& elem) const;
  void put(const CacheRecord& r);

  /// Appends records added since load; the file is the single writer's responsibility.
  void flush();

 private:
  std::filesystem::path path_;
  std::map<CacheRecord::Key, CacheRecord> records_;
  std::vector<CacheRecord> pending_;
};

}  // namespace eisen
