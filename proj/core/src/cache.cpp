#include "eisen/cache.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace eisen {

namespace {

constexpr const char* kFields[] = {"c1_a", "c1_b", "c2_a", "c2_b", "cond_norm", "l_re", "l_im",
                                   "w_re", "w_im", "y_param", "trunc_bound", "schema_version"};

}  // namespace

CacheRecord to_cache_record(const LValueRecord& r) {
  CacheRecord c;
  c.c1_a = static_cast<std::int64_t>(r.elem.c1.a);
  c.c1_b = static_cast<std::int64_t>(r.elem.c1.b);
  c.c2_a = static_cast<std::int64_t>(r.elem.c2.a);
  c.c2_b = static_cast<std::int64_t>(r.elem.c2.b);
  c.cond_norm = r.elem.cond_norm;
  c.l_re = r.l_half.real();
  c.l_im = r.l_half.imag();
  c.w_re = r.root_number.real();
  c.w_im = r.root_number.imag();
  c.y_param = r.y_param;
  c.trunc_bound = r.truncation_bound;
  return c;
}

LValueRecord to_lvalue_record(const CacheRecord& c) {
  LValueRecord r;
  r.elem = make_family_element({c.c1_a, c.c1_b}, {c.c2_a, c.c2_b});
  if (r.elem.cond_norm != c.cond_norm) throw SchemaError("cache record has inconsistent cond_norm");
  r.l_half = {c.l_re, c.l_im};
  r.root_number = {c.w_re, c.w_im};
  r.y_param = c.y_param;
  r.truncation_bound = c.trunc_bound;
  return r;
}

std::string serialize(const CacheRecord& r) {
  nlohmann::ordered_json j;
  j["c1_a"] = r.c1_a;
  j["c1_b"] = r.c1_b;
  j["c2_a"] = r.c2_a;
  j["c2_b"] = r.c2_b;
  j["cond_norm"] = r.cond_norm;
  j["l_re"] = r.l_re;
  j["l_im"] = r.l_im;
  j["w_re"] = r.w_re;
  j["w_im"] = r.w_im;
  j["y_param"] = r.y_param;
  j["trunc_bound"] = r.trunc_bound;
  j["schema_version"] = r.schema_version;
  return j.dump();
}

CacheRecord parse_cache_line(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("cache line is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("cache line is not an object");
  for (const char* f : kFields) {
    if (!j.contains(f)) throw SchemaError(std::string("cache line lacks field ") + f);
  }
  if (j.size() != std::size(kFields)) throw SchemaError("cache line has unexpected fields");
  CacheRecord r;
  try {
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kCacheSchemaVersion) {
      throw SchemaError("cache schema_version " + std::to_string(r.schema_version) + ", expected " +
                        std::to_string(kCacheSchemaVersion));
    }
    r.c1_a = j.at("c1_a").get<std::int64_t>();
    r.c1_b = j.at("c1_b").get<std::int64_t>();
    r.c2_a = j.at("c2_a").get<std::int64_t>();
    r.c2_b = j.at("c2_b").get<std::int64_t>();
    r.cond_norm = j.at("cond_norm").get<std::int64_t>();
    r.l_re = j.at("l_re").get<double>();
    r.l_im = j.at("l_im").get<double>();
    r.w_re = j.at("w_re").get<double>();
    r.w_im = j.at("w_im").get<double>();
    r.y_param = j.at("y_param").get<double>();
    r.trunc_bound = j.at("trunc_bound").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("cache line has a field of the wrong type: ") + e.what());
  }
  return r;
}

LValueCache::LValueCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      CacheRecord r = parse_cache_line(line);
      records_[r.key()] = r;
    } catch (const SchemaError& e) {
      throw SchemaError(path_.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::optional<CacheRecord> LValueCache::find(const FamilyElement& elem) const {
  CacheRecord::Key key{static_cast<std::int64_t>(elem.c1.a), static_cast<std::int64_t>(elem.c1.b),
                       static_cast<std::int64_t>(elem.c2.a), static_cast<std::int64_t>(elem.c2.b)};
  auto it = records_.find(key);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void LValueCache::put(const CacheRecord& r) {
  records_[r.key()] = r;
  pending_.push_back(r);
}

void LValueCache::flush() {
  if (pending_.empty() || path_.empty()) {
    pending_.clear();
    return;
  }
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot open cache file " + path_.string());
  for (const auto& r : pending_) out << serialize(r) << '\n';
  pending_.clear();
}

}  // namespace eisen
