#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "eisen/cache.hpp"
#include "eisen/config.hpp"
#include "eisen/moments.hpp"

namespace eisen {

/// L-values through the cache plus moment aggregation for one RunConfig.
class Session {
 public:
  explicit Session(RunConfig config);

  const RunConfig& config() const { return config_; }

  /// Cached records are reused when their y_param matches the configured strategy and
  /// their truncation bound meets the tolerance; everything else is computed and stored.
  std::vector<LValueRecord> lvalues(const std::vector<FamilyElement>& elems);
  LValueRecord lvalue(const FamilyElement& elem);

  const ConstantsBundle& constants();

  /// One report per grid point; the family is enumerated once up to the largest X.
  std::vector<MomentReport> moments(const std::vector<std::int64_t>& grid, double threshold = 1e-6);

  std::size_t computed() const { return computed_; }
  std::size_t reused() const { return reused_; }

 private:
  double y_for(const FamilyElement& elem) const;

  RunConfig config_;
  LValueCache cache_;
  std::optional<ConstantsBundle> constants_;
  std::size_t computed_ = 0;
  std::size_t reused_ = 0;
};

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

void write_family(std::ostream& os, const std::vector<FamilyElement>& elems, OutputFormat format);
void write_lvalues(std::ostream& os, const std::vector<LValueRecord>& records, OutputFormat format);
/// Header row names the MomentReport fields.
void write_moment_reports(std::ostream& os, const std::vector<MomentReport>& reports, OutputFormat format);
void write_constants(std::ostream& os, const ConstantsBundle& c, OutputFormat format);

}  // namespace eisen
