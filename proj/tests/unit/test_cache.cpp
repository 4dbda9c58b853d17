#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "eisen/cache.hpp"
#include "eisen/config.hpp"
#include "eisen/session.hpp"

using namespace eisen;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("eisen_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(CacheRecord, RoundTrip) {
  LValueEngine engine;
  auto recs = engine.compute_all(enumerate_family(8000));
  ASSERT_GE(recs.size(), 1000u);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (std::size_t i = 0; i < 1000; ++i) {
    auto c = to_cache_record(recs[i]);
    c.l_re += u(rng) * 1e-7;  // exercise arbitrary mantissas
    auto back = parse_cache_line(serialize(c));
    ASSERT_EQ(back, c);
    auto lv = to_lvalue_record(back);
    ASSERT_EQ(lv.elem, recs[i].elem);
  }
}

TEST(CacheRecord, SchemaErrors) {
  auto c = to_cache_record(LValueEngine().compute(make_family_element(10, 1)));
  auto good = serialize(c);
  EXPECT_NO_THROW(parse_cache_line(good));
  EXPECT_THROW(parse_cache_line("not json"), SchemaError);
  EXPECT_THROW(parse_cache_line("[1,2]"), SchemaError);

  auto bad_version = c;
  bad_version.schema_version = 2;
  EXPECT_THROW(parse_cache_line(serialize(bad_version)), SchemaError);

  std::string missing = good;
  auto pos = missing.find(",\"y_param\"");
  auto end = missing.find(',', pos + 1);
  missing.erase(pos, end - pos);
  EXPECT_THROW(parse_cache_line(missing), SchemaError);

  std::string extra = good;
  extra.insert(1, "\"bogus\":1,");
  EXPECT_THROW(parse_cache_line(extra), SchemaError);

  std::string typed = good;
  auto p = typed.find("\"cond_norm\":");
  typed.insert(p + 12, "\"");
  auto q = typed.find(',', p);
  typed.insert(q, "\"");
  EXPECT_THROW(parse_cache_line(typed), SchemaError);

  auto wrong_norm = c;
  wrong_norm.cond_norm += 1;
  EXPECT_THROW(to_lvalue_record(wrong_norm), std::exception);
}

TEST(LValueCache, PersistAndReload) {
  TempDir tmp;
  auto file = tmp.path / "sub" / "cache.jsonl";
  LValueEngine engine;
  auto recs = engine.compute_all(enumerate_family(500));
  {
    LValueCache cache(file);
    EXPECT_EQ(cache.size(), 0u);
    for (const auto& r : recs) cache.put(to_cache_record(r));
    cache.flush();
  }
  LValueCache reload(file);
  EXPECT_EQ(reload.size(), recs.size());
  auto hit = reload.find(recs.front().elem);
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(*hit, to_cache_record(recs.front()));
  EXPECT_FALSE(reload.find(make_family_element(-2, 7)).has_value() && recs.size() == 0);

  // later lines win
  auto changed = to_cache_record(recs.front());
  changed.l_re = 42.0;
  reload.put(changed);
  reload.flush();
  LValueCache again(file);
  EXPECT_EQ(again.find(recs.front().elem)->l_re, 42.0);
  EXPECT_EQ(again.size(), recs.size());
}

TEST(LValueCache, CorruptFileIsReported) {
  TempDir tmp;
  auto file = tmp.path / "bad.jsonl";
  std::ofstream(file) << "{\"c1_a\":1}\n";
  EXPECT_THROW(LValueCache{file}, SchemaError);
}

TEST(Config, Validation) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  c.tolerance = 1e-13;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = RunConfig{};
  c.prime_cutoff = 50;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = RunConfig{};
  c.fixed_y = -1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = RunConfig{};
  c.threads = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Config, LoadFile) {
  TempDir tmp;
  auto file = tmp.path / "cfg.json";
  std::ofstream(file) << R"({"x_max": 5000, "tolerance": 1e-9, "y_strategy": 12.5, "output_format": "jsonl",
                            "cache_path": "/tmp/x.jsonl", "threads": 2})";
  auto c = load_config(file);
  EXPECT_EQ(c.x_max, 5000);
  EXPECT_EQ(c.tolerance, 1e-9);
  ASSERT_TRUE(c.fixed_y.has_value());
  EXPECT_EQ(*c.fixed_y, 12.5);
  EXPECT_EQ(c.output_format, OutputFormat::kJsonl);
  EXPECT_EQ(c.cache_path, fs::path("/tmp/x.jsonl"));
  EXPECT_EQ(c.threads, 2);

  std::ofstream(file) << R"({"nonsense": 1})";
  EXPECT_THROW(load_config(file), std::invalid_argument);
  std::ofstream(file) << R"({"y_strategy": "wild"})";
  EXPECT_THROW(load_config(file), std::invalid_argument);
  std::ofstream(file) << R"({"x_max": "big"})";
  EXPECT_THROW(load_config(file), std::invalid_argument);
  EXPECT_THROW(load_config(tmp.path / "missing.json"), std::invalid_argument);
}

TEST(Config, OutputFormat) {
  EXPECT_EQ(parse_output_format("csv"), OutputFormat::kCsv);
  EXPECT_EQ(to_string(OutputFormat::kJsonl), "jsonl");
  EXPECT_THROW(parse_output_format("xml"), std::invalid_argument);
}

TEST(Config, CachePathFromEnvironment) {
  ::setenv(kCachePathEnv, "/tmp/from_env.jsonl", 1);
  EXPECT_EQ(default_config().cache_path, fs::path("/tmp/from_env.jsonl"));
  ::unsetenv(kCachePathEnv);
  EXPECT_EQ(default_cache_path(), fs::path("eisen_cache.jsonl"));
}

TEST(Session, ColdWarmIdentical) {
  TempDir tmp;
  RunConfig cfg;
  cfg.x_max = 1000;
  cfg.cache_path = tmp.path / "c.jsonl";
  cfg.prime_cutoff = 1000;
  cfg.cube_cutoff = 20;
  cfg.inner_cutoff = 20;
  auto grid = dyadic_grid(1000, 3);

  std::ostringstream cold, warm, cold_l, warm_l;
  {
    Session s(cfg);
    write_moment_reports(cold, s.moments(grid), OutputFormat::kCsv);
    write_lvalues(cold_l, s.lvalues(enumerate_family(1000)), OutputFormat::kCsv);
    EXPECT_EQ(s.computed(), 136u);
  }
  {
    Session s(cfg);
    write_moment_reports(warm, s.moments(grid), OutputFormat::kCsv);
    write_lvalues(warm_l, s.lvalues(enumerate_family(1000)), OutputFormat::kCsv);
    EXPECT_EQ(s.computed(), 0u);
    EXPECT_EQ(s.reused(), 2 * 136u);
  }
  EXPECT_EQ(cold.str(), warm.str());
  EXPECT_EQ(cold_l.str(), warm_l.str());
  EXPECT_FALSE(slurp(cfg.cache_path).empty());

  Session s(cfg);
  EXPECT_THROW(s.moments({2000}), CapacityError);

  cfg.tolerance = 1e-10;
  Session strict(cfg);
  auto small = strict.lvalues(enumerate_family(200));
  EXPECT_EQ(strict.computed() + strict.reused(), small.size());
  for (const auto& r : small) EXPECT_LE(r.truncation_bound, 1e-10);

  cfg.tolerance = 1e-12;
  Session impossible(cfg);
  EXPECT_ANY_THROW(impossible.lvalues(enumerate_family(200)));
}

TEST(Session, Formats) {
  std::vector<MomentReport> reps(1);
  reps[0].x = 10;
  std::ostringstream csv, jsonl;
  write_moment_reports(csv, reps, OutputFormat::kCsv);
  write_moment_reports(jsonl, reps, OutputFormat::kJsonl);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')),
            "x,family_size,first_moment_re,first_moment_im,second_moment,nonvanishing_count,predicted_main,ratio,"
            "tolerance_budget");
  EXPECT_EQ(jsonl.str().front(), '{');
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}
