#include "eisen/session.hpp"

#include <algorithm>
#include <charconv>

#include <nlohmann/json.hpp>

namespace eisen {

Session::Session(RunConfig config) : config_(std::move(config)), cache_(config_.cache_path) {
  config_.validate();
}

double Session::y_for(const FamilyElement& elem) const {
  return config_.fixed_y ? *config_.fixed_y : balanced_y(elem.cond_norm);
}

std::vector<LValueRecord> Session::lvalues(const std::vector<FamilyElement>& elems) {
  std::vector<LValueRecord> out(elems.size());
  std::vector<FamilyElement> missing;
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    auto hit = cache_.find(elems[i]);
    if (hit && hit->y_param == y_for(elems[i]) && hit->trunc_bound <= config_.tolerance) {
      out[i] = to_lvalue_record(*hit);
      ++reused_;
    } else {
      missing.push_back(elems[i]);
      slots.push_back(i);
    }
  }
  if (!missing.empty()) {
    AfeOptions afe;
    afe.tolerance = config_.tolerance;
    afe.y_param = config_.fixed_y;
    LValueEngine engine(afe, config_.threads);
    auto fresh = engine.compute_all(missing);
    for (std::size_t k = 0; k < fresh.size(); ++k) {
      // Round-trip through the cache form so cold and warm runs see identical values.
      CacheRecord rec = to_cache_record(fresh[k]);
      cache_.put(rec);
      out[slots[k]] = to_lvalue_record(rec);
    }
    computed_ += fresh.size();
    cache_.flush();
  }
  return out;
}

LValueRecord Session::lvalue(const FamilyElement& elem) { return lvalues({elem}).front(); }

const ConstantsBundle& Session::constants() {
  if (!constants_) {
    ConstantsConfig cc;
    cc.prime_cutoff = config_.prime_cutoff;
    cc.cube_cutoff = config_.cube_cutoff;
    cc.inner_cutoff = config_.inner_cutoff;
    constants_ = compute_constants(cc);
  }
  return *constants_;
}

std::vector<MomentReport> Session::moments(const std::vector<std::int64_t>& grid, double threshold) {
  if (grid.empty()) return {};
  std::int64_t top = *std::max_element(grid.begin(), grid.end());
  if (top > config_.x_max) {
    throw CapacityError("moment: X = " + std::to_string(top) + " exceeds x_max " + std::to_string(config_.x_max));
  }
  auto records = lvalues(enumerate_family(top));
  const auto& c = constants();
  std::vector<MomentReport> out;
  for (auto x : grid) out.push_back(aggregate_moments(records, x, c, threshold));
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_family(std::ostream& os, const std::vector<FamilyElement>& elems, OutputFormat format) {
  if (format == OutputFormat::kCsv) os << "c1,c2,conductor,cond_norm\n";
  for (const auto& e : elems) {
    if (format == OutputFormat::kCsv) {
      os << to_string(e.c1) << ',' << to_string(e.c2) << ',' << to_string(e.conductor) << ',' << e.cond_norm << '\n';
    } else {
      nlohmann::ordered_json j;
      j["c1"] = to_string(e.c1);
      j["c2"] = to_string(e.c2);
      j["conductor"] = to_string(e.conductor);
      j["cond_norm"] = e.cond_norm;
      os << j.dump() << '\n';
    }
  }
}

void write_lvalues(std::ostream& os, const std::vector<LValueRecord>& records, OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    os << "c1,c2,cond_norm,l_re,l_im,w_re,w_im,y_param,trunc_bound\n";
    for (const auto& r : records) {
      os << to_string(r.elem.c1) << ',' << to_string(r.elem.c2) << ',' << r.elem.cond_norm << ','
         << format_double(r.l_half.real()) << ',' << format_double(r.l_half.imag()) << ','
         << format_double(r.root_number.real()) << ',' << format_double(r.root_number.imag()) << ','
         << format_double(r.y_param) << ',' << format_double(r.truncation_bound) << '\n';
    }
    return;
  }
  for (const auto& r : records) os << serialize(to_cache_record(r)) << '\n';
}

void write_moment_reports(std::ostream& os, const std::vector<MomentReport>& reports, OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    os << "x,family_size,first_moment_re,first_moment_im,second_moment,nonvanishing_count,predicted_main,ratio,"
          "tolerance_budget\n";
    for (const auto& r : reports) {
      os << r.x << ',' << r.family_size << ',' << format_double(r.first_moment.real()) << ','
         << format_double(r.first_moment.imag()) << ',' << format_double(r.second_moment) << ','
         << r.nonvanishing_count << ',' << format_double(r.predicted_main) << ',' << format_double(r.ratio) << ','
         << format_double(r.tolerance_budget) << '\n';
    }
    return;
  }
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["x"] = r.x;
    j["family_size"] = r.family_size;
    j["first_moment_re"] = r.first_moment.real();
    j["first_moment_im"] = r.first_moment.imag();
    j["second_moment"] = r.second_moment;
    j["nonvanishing_count"] = r.nonvanishing_count;
    j["predicted_main"] = r.predicted_main;
    j["ratio"] = r.ratio;
    j["tolerance_budget"] = r.tolerance_budget;
    os << j.dump() << '\n';
  }
}

void write_constants(std::ostream& os, const ConstantsBundle& c, OutputFormat format) {
  std::vector<std::pair<std::string, std::string>> rows = {
      {"a_const", format_double(c.a_const)},
      {"a_printed", format_double(c.a_printed)},
      {"b_const", format_double(c.b_const)},
      {"d_const", format_double(c.d_const)},
      {"d_printed", format_double(c.d_printed)},
      {"d_raw_product", format_double(c.d_detail.raw_product)},
      {"d_stability", format_double(c.d_detail.stability)},
      {"e_const", format_double(c.e_const)},
      {"e_half_cutoff", format_double(c.e_detail.half_cutoff_value)},
      {"e_trend", format_double(c.e_detail.trend)},
      {"h9", std::to_string(c.h9)},
      {"truncation", c.truncation},
  };
  if (format == OutputFormat::kCsv) {
    os << "name,value\n";
    for (const auto& [k, v] : rows) os << k << ',' << v << '\n';
    return;
  }
  nlohmann::ordered_json j;
  j["a_const"] = c.a_const;
  j["a_printed"] = c.a_printed;
  j["b_const"] = c.b_const;
  j["d_const"] = c.d_const;
  j["d_printed"] = c.d_printed;
  j["d_raw_product"] = c.d_detail.raw_product;
  j["d_stability"] = c.d_detail.stability;
  j["e_const"] = c.e_const;
  j["e_half_cutoff"] = c.e_detail.half_cutoff_value;
  j["e_trend"] = c.e_detail.trend;
  j["h9"] = c.h9;
  j["truncation"] = c.truncation;
  os << j.dump() << '\n';
}

}  // namespace eisen
