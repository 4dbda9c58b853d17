#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eisen/characters.hpp"
#include "eisen/gauss.hpp"
#include "eisen/moments.hpp"
#include "eisen/session.hpp"
#include "eisen/special.hpp"

using namespace eisen;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome reciprocity() {
  auto t0 = std::chrono::steady_clock::now();
  auto list = enumerate_primary(500);
  std::int64_t pairs = 0, mismatches = 0;
  for (const auto& m : list) {
    for (const auto& n : list) {
      if (!is_unit(gcd(m, n))) continue;
      ++pairs;
      if (cubic_symbol_fast(m, n) != cubic_symbol(m, n)) ++mismatches;
    }
  }
  double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 60.0,
          std::to_string(pairs) + " pairs, " + std::to_string(mismatches) + " mismatches, " + fmt(secs, 3) + " s"};
}

Outcome gauss_modulus() {
  double worst = 0.0;
  int count = 0;
  for (const auto& c : enumerate_primary(2000)) {
    if (!is_squarefree(c)) continue;
    double n = static_cast<double>(norm(c));
    worst = std::max(worst, std::abs(std::norm(gauss_sum(1, c)) - n) / n);
    ++count;
  }
  return {worst <= 1e-9, std::to_string(count) + " moduli, max relative error " + fmt(worst, 3)};
}

Outcome weight() {
  double worst = 0.0, prev = 1.0;
  bool range_ok = true, decreasing = true;
  for (int i = 0; i < 50; ++i) {
    double y = std::pow(10.0, -3.0 + 4.0 * i / 49.0);
    double v = v_weight(y);
    worst = std::max(worst, std::abs(v - v_weight_contour(y).value));
    range_ok = range_ok && v > 0.0 && v < 1.0;
    decreasing = decreasing && v < prev;
    prev = v;
  }
  return {worst <= 1e-10 && range_ok && decreasing,
          "max deviation " + fmt(worst, 3) + (range_ok ? "" : ", out of (0,1)") + (decreasing ? "" : ", not decreasing")};
}

// Spread of the AFE value over Y in {Y0/2, Y0, 2 Y0} with the given root number.
double y_spread(const FamilyElement& e, Complex w) {
  double base = balanced_y(e.cond_norm);
  std::vector<Complex> vals;
  for (double f : {0.5, 1.0, 2.0}) {
    AfeOptions o;
    o.tolerance = 1e-8;
    o.y_param = base * f;
    vals.push_back(afe_central_value(e, w, o).l_half);
  }
  return std::max({std::abs(vals[0] - vals[1]), std::abs(vals[1] - vals[2]), std::abs(vals[0] - vals[2])});
}

Outcome functional_equation() {
  GaussSumCache gauss;
  double worst = 0.0;
  int checked = 0, controls = 0, broken = 0;
  for (const auto& e : enumerate_family(10'000)) {
    Complex w = gauss.root_number(e);
    worst = std::max(worst, y_spread(e, w));
    ++checked;
    Complex wrong = gauss.root_number(e, RootConvention::kConjugated);
    if (std::abs(wrong - w) > 1e-6 * std::abs(w)) {
      ++controls;
      if (y_spread(e, wrong) > 2e-8) ++broken;
    }
  }
  bool ok = worst <= 2e-8 && controls > 0 && broken == controls;
  return {ok, std::to_string(checked) + " characters, max spread " + fmt(worst, 3) + "; conjugated root breaks " +
                  std::to_string(broken) + "/" + std::to_string(controls)};
}

Outcome constants(Session& session) {
  auto rc = ray_class_count();
  const std::int64_t x = 10'000'000;
  std::int64_t ideals = 0;
  for (std::int64_t p = 1; p <= x; p *= 3) ideals += count_primary(x / p);
  double residue = static_cast<double>(ideals) / static_cast<double>(x);
  double target = std::numbers::pi / (3.0 * std::sqrt(3.0));
  double rel = std::abs(residue / target - 1.0);
  const auto& c = session.constants();
  bool ok = rc.h9 == 9 && rel <= 5e-3 && c.d_detail.stability <= 1e-6 && c.e_detail.trend <= 1e-2;
  return {ok, "h9 " + std::to_string(rc.h9) + ", residue " + fmt(residue, 8) + " (rel " + fmt(rel, 2) +
                  "), D " + fmt(c.d_const) + " stable to " + fmt(c.d_detail.stability, 2) + ", E " + fmt(c.e_const) +
                  " trend " + fmt(c.e_detail.trend, 2)};
}

struct FullRun {
  std::vector<LValueRecord> records;
  ConstantsBundle constants;
  double seconds = 0.0;
};

Outcome first_moment_trend(const FullRun& run) {
  std::vector<double> deviations;
  std::string detail;
  bool ok = true;
  double d = run.constants.d_const;
  for (std::int64_t x : {1'000, 10'000, 100'000}) {
    std::vector<std::pair<double, double>> pts;
    for (auto gx : dyadic_grid(x, 5)) {
      pts.emplace_back(static_cast<double>(gx), aggregate_moments(run.records, gx, run.constants).first_moment.real());
    }
    auto rep = aggregate_moments(run.records, x, run.constants);
    auto fit = fit_main_term(pts);
    double dev = std::abs(fit.lead / d - 1.0);
    ok = ok && std::abs(rep.first_moment.imag()) <= rep.tolerance_budget && rep.first_moment.real() > 0.0 &&
         fit.lead > 0.0;
    if (!deviations.empty()) ok = ok && dev < deviations.back();
    deviations.push_back(dev);
    detail += "X=" + std::to_string(x) + " S=" + fmt(rep.first_moment.real()) + " lead " + fmt(fit.lead, 4) +
              " dev " + fmt(dev, 4) + "; ";
  }
  ok = ok && run.seconds <= 1800.0;
  return {ok, detail + "run " + fmt(run.seconds, 3) + " s"};
}

Outcome second_moment_growth(const FullRun& run) {
  std::vector<std::pair<double, double>> pts;
  for (std::int64_t x = 1'000; x <= 100'000; x *= 2) {
    pts.emplace_back(static_cast<double>(x), aggregate_moments(run.records, x, run.constants).second_moment);
  }
  double slope = growth_exponent(pts);
  return {slope <= 1.30, "slope " + fmt(slope, 4) + " over " + std::to_string(pts.size()) + " dyadic points"};
}

Outcome nonvanishing(const FullRun& run) {
  bool ok = true;
  std::string detail;
  for (std::int64_t x : {1'000, 10'000}) {
    auto rep = aggregate_moments(run.records, x, run.constants);
    double need = std::pow(static_cast<double>(x), 5.0 / 6.0);
    ok = ok && static_cast<double>(rep.nonvanishing_count) >= need;
    detail += "X=" + std::to_string(x) + " count " + std::to_string(rep.nonvanishing_count) + " need " +
              fmt(need, 4) + " fraction " +
              fmt(rep.family_size ? static_cast<double>(rep.nonvanishing_count) / rep.family_size : 0.0, 4) + "; ";
  }
  return {ok, detail.substr(0, detail.size() - 2)};
}

Outcome enumeration() {
  const std::int64_t top = 2000;
  auto list = enumerate_primary(top);
  std::vector<std::int64_t> by_norm(top + 1, 0);
  for (const auto& c1 : list) {
    if (!is_squarefree(c1)) continue;
    for (const auto& c2 : list) {
      if (norm(c1) * norm(c2) > top || !is_squarefree(c2) || !is_unit(gcd(c1, c2))) continue;
      if (norm(c1) == 1 && norm(c2) == 1) continue;
      EisensteinInt t = c1 * c2 * c2;
      if (mod_floor(t.a, 9) != 1 || mod_floor(t.b, 9) != 0) continue;
      ++by_norm[static_cast<std::size_t>(norm(c1) * norm(c2))];
    }
  }
  auto fam = enumerate_family(top);
  std::vector<std::int64_t> fam_norm(top + 1, 0);
  bool members = true;
  for (const auto& e : fam) {
    ++fam_norm[static_cast<std::size_t>(e.cond_norm)];
    members = members && is_family_member(e.c1, e.c2) && chi_eval(e, EisensteinInt::omega()) == CubicValue::root(0);
  }
  std::int64_t mismatched = 0, brute = 0, ours = 0;
  for (std::int64_t x = 1; x <= top; ++x) {
    brute += by_norm[x];
    ours += fam_norm[x];
    if (brute != ours) ++mismatched;
  }
  return {mismatched == 0 && members, "|F(2000)| " + std::to_string(ours) + " vs brute " + std::to_string(brute) +
                                          ", " + std::to_string(mismatched) + " X values differ" +
                                          (members ? "" : ", member check failed")};
}

std::string reports_csv(Session& s, const std::vector<std::int64_t>& grid) {
  std::ostringstream out;
  write_moment_reports(out, s.moments(grid), OutputFormat::kCsv);
  return out.str();
}

Outcome determinism(const RunConfig& cfg, const std::string& cold_csv, const FullRun& run) {
  Session warm(cfg);
  std::string warm_csv = reports_csv(warm, dyadic_grid(cfg.x_max, 8));
  auto fwd = aggregate_moments(run.records, cfg.x_max, run.constants);
  auto rev = aggregate_moments(run.records, cfg.x_max, run.constants, 1e-6, true);
  double gap = std::abs(fwd.first_moment - rev.first_moment);
  double gap2 = std::abs(fwd.second_moment - rev.second_moment);
  bool ok = warm_csv == cold_csv && warm.computed() == 0 && gap <= fwd.tolerance_budget &&
            gap2 <= 1e-9 * fwd.second_moment;
  return {ok, std::string(warm_csv == cold_csv ? "cold/warm reports identical" : "cold/warm reports differ") +
                  " (" + std::to_string(warm.reused()) + " reused), reversed gap " + fmt(gap, 2) + " budget " +
                  fmt(fwd.tolerance_budget, 2)};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  auto wants = [&](std::initializer_list<int> ids) {
    return std::any_of(ids.begin(), ids.end(),
                       [&](int id) { return std::find(selected.begin(), selected.end(), id) != selected.end(); });
  };

  fs::path tmp = fs::temp_directory_path() / ("eisen_acceptance_" + std::to_string(std::random_device{}()));
  RunConfig cfg;
  cfg.x_max = 100'000;
  cfg.cache_path = tmp / "cache.jsonl";
  Session session(cfg);

  FullRun run;
  std::string cold_csv;
  if (wants({6, 7, 8, 10})) {
    auto t0 = std::chrono::steady_clock::now();
    cold_csv = reports_csv(session, dyadic_grid(cfg.x_max, 8));
    run.records = session.lvalues(enumerate_family(cfg.x_max));
    run.constants = session.constants();
    run.seconds = seconds_since(t0);
  }

  std::map<int, std::function<Outcome()>> criteria = {
      {1, reciprocity},
      {2, gauss_modulus},
      {3, weight},
      {4, functional_equation},
      {5, [&] { return constants(session); }},
      {6, [&] { return first_moment_trend(run); }},
      {7, [&] { return second_moment_growth(run); }},
      {8, [&] { return nonvanishing(run); }},
      {9, enumeration},
      {10, [&] { return determinism(cfg, cold_csv, run); }},
  };
  int failures = 0;
  for (int id : selected) {
    auto it = criteria.find(id);
    if (it == criteria.end()) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    Outcome o = it->second();
    if (!o.passed) ++failures;
    std::printf("criterion %2d: %s  %s\n", id, o.passed ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  fs::remove_all(tmp);
  return failures == 0 ? 0 : 1;
}
