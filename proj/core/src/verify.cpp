#include "eisen/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "eisen/cache.hpp"
#include "eisen/gauss.hpp"
#include "eisen/lfunction.hpp"
#include "eisen/moments.hpp"
#include "eisen/session.hpp"
#include "eisen/special.hpp"

namespace eisen {

namespace {

using Rng = std::mt19937_64;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

struct Checker {
  std::string suite;
  std::vector<CheckResult>* out;

  void run(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{suite, name, true, ""};
    try {
      r.detail = body();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    out->push_back(std::move(r));
  }
};

// Throws with a message when cond is false; used inside check bodies.
void require(bool cond, const std::string& message) {
  if (!cond) throw std::runtime_error(message);
}

EisensteinInt random_element(Rng& rng, std::int64_t radius) {
  std::uniform_int_distribution<std::int64_t> dist(-radius, radius);
  return {dist(rng), dist(rng)};
}

std::vector<FamilyElement> random_members(Rng& rng, const std::vector<FamilyElement>& pool, std::size_t count) {
  std::vector<FamilyElement> out;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (std::size_t i = 0; i < count; ++i) out.push_back(pool[pick(rng)]);
  return out;
}

void core_suite(Checker& c, Rng& rng) {
  c.run("norm is multiplicative on 1000 random pairs", [&] {
    for (int i = 0; i < 1000; ++i) {
      auto x = random_element(rng, 1'000'000);
      auto y = random_element(rng, 1'000'000);
      require(norm(x * y) == norm(x) * norm(y), "norm(xy) != norm(x) norm(y) for " + to_string(x) + ", " + to_string(y));
    }
    return std::string("1000 pairs");
  });
  c.run("divmod contract on 1000 random pairs", [&] {
    for (int i = 0; i < 1000; ++i) {
      auto x = random_element(rng, 1'000'000);
      auto y = random_element(rng, 1'000);
      if (y.is_zero()) continue;
      auto [q, r] = divmod(x, y);
      require(q * y + r == x && norm(r) < norm(y), "divmod failed for " + to_string(x) + " / " + to_string(y));
    }
    return std::string("1000 pairs");
  });
  c.run("factor inverts multiplication up to norm 1e6", [&] {
    auto primes = primary_primes(1000);
    std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
    int done = 0;
    while (done < 500) {
      std::map<EisensteinInt, int> want;
      EisensteinInt prod{1, 0};
      int k = 1 + static_cast<int>(rng() % 3);
      for (int j = 0; j < k; ++j) {
        auto p = primes[pick(rng)];
        if (norm(prod * p) > 1'000'000) break;
        prod *= p;
        ++want[p];
      }
      auto u = units()[rng() % 6];
      auto f = factor(u * prod);
      std::map<EisensteinInt, int> got(f.factors.begin(), f.factors.end());
      require(got == want && f.unit == u && f.product() == u * prod, "factor mismatch for " + to_string(u * prod));
      ++done;
    }
    return std::string("500 products");
  });
  c.run("primary associate is idempotent and unique", [&] {
    for (int i = 0; i < 1000; ++i) {
      auto x = random_element(rng, 10'000);
      if (x.is_zero() || norm(x) % 3 == 0) continue;
      auto [u, p] = primary_associate(x);
      require(u * p == x && is_primary(p), "primary_associate contract fails for " + to_string(x));
      require(primary_associate(p).primary == p, "not idempotent on " + to_string(p));
      int primaries = 0;
      for (const auto& v : units()) primaries += is_primary(v * x) ? 1 : 0;
      require(primaries == 1, "associate class of " + to_string(x) + " has " + std::to_string(primaries) + " primaries");
    }
    return std::string("1000 elements");
  });
  c.run("enumerate_primary has no duplicates or associates (X = 5000)", [&] {
    auto list = enumerate_primary(5000);
    std::set<EisensteinInt> canon;
    for (const auto& x : list) {
      require(is_primary(x), to_string(x) + " is not primary");
      canon.insert(canonical_associate(x));
    }
    require(canon.size() == list.size(), "associate pair found");
    require(std::is_sorted(list.begin(), list.end()), "not in (norm, a, b) order");
    return std::to_string(list.size()) + " elements";
  });
}

void characters_suite(Checker& c, Rng& rng, bool quick) {
  auto family = enumerate_family(10'000);
  c.run("fast symbol equals the exponentiation oracle (norms <= 500)", [&] {
    std::int64_t bound = quick ? 200 : 500;
    auto list = enumerate_primary(bound);
    std::int64_t pairs = 0;
    for (const auto& n : list) {
      if (norm(n) == 1) continue;
      for (const auto& m : list) {
        if (!is_unit(gcd(m, n))) continue;
        require(cubic_symbol_fast(m, n) == cubic_symbol(m, n), "mismatch at (" + to_string(m) + ", " + to_string(n) + ")");
        ++pairs;
      }
    }
    return std::to_string(pairs) + " pairs";
  });
  c.run("chi is completely multiplicative (1000 triples)", [&] {
    auto pool = random_members(rng, family, 1000);
    for (const auto& e : pool) {
      auto x = random_element(rng, 500);
      auto y = random_element(rng, 500);
      require(chi_eval(e, x * y) == chi_eval(e, x) * chi_eval(e, y), "multiplicativity fails");
    }
    return std::string("1000 triples");
  });
  c.run("chi is periodic modulo the conductor", [&] {
    for (const auto& e : random_members(rng, family, 300)) {
      auto x = random_element(rng, 500);
      auto t = random_element(rng, 50);
      require(chi_eval(e, x) == chi_eval(e, x + e.conductor * t), "periodicity fails");
    }
    return std::string("300 samples");
  });
  c.run("chi^3 = 1 on units of the residue ring", [&] {
    for (const auto& e : random_members(rng, family, 300)) {
      auto x = random_element(rng, 500);
      auto v = chi_eval(e, x);
      if (!v.is_zero()) require(v.pow(3) == CubicValue::root(0), "cube is not 1");
    }
    return std::string("300 samples");
  });
  c.run("Hecke condition chi(w) = 1 up to X = 1e4", [&] {
    for (const auto& e : family) {
      require(chi_eval(e, EisensteinInt::omega()) == CubicValue::root(0), "chi(w) != 1 for " + to_string(e.c1));
    }
    return std::to_string(family.size()) + " members";
  });
  c.run("every member with cond_norm <= 200 is primitive", [&] {
    std::size_t n = 0;
    for (const auto& e : family) {
      if (e.cond_norm > 200) break;
      require(is_primitive_brute_force(e), "imprimitive: (" + to_string(e.c1) + ", " + to_string(e.c2) + ")");
      ++n;
    }
    return std::to_string(n) + " members";
  });
  c.run("family count matches a brute-force double loop (X = 2000)", [&] {
    std::int64_t x = 2000;
    auto list = enumerate_primary(x);
    std::vector<FamilyElement> brute;
    for (const auto& c1 : list) {
      for (const auto& c2 : list) {
        if (norm(c1) * norm(c2) > x) continue;
        if (is_family_member(c1, c2)) brute.push_back(make_family_element(c1, c2));
      }
    }
    std::sort(brute.begin(), brute.end(), canonical_less);
    auto fam = enumerate_family(x);
    require(brute == fam, "enumeration differs from brute force");
    return std::to_string(fam.size()) + " members";
  });
}

// conj g(r, n) as the direct sum of chi_n^2(alpha) e(tr(-r alpha / n)).
Complex conjugate_direct(const EisensteinInt& r, const EisensteinInt& n) {
  auto big_n = static_cast<std::int64_t>(norm(n));
  ResidueBox box = residue_box(n);
  std::complex<double> acc{0.0, 0.0};
  for (std::int64_t y = 0; y < box.y_period; ++y) {
    for (std::int64_t x = 0; x < box.x_period; ++x) {
      EisensteinInt alpha{x, y};
      auto chi = cubic_symbol(alpha, n).pow(2);
      if (chi.is_zero()) continue;
      Int tr = trace(-r * alpha * n.conj());
      acc += chi.to_complex() * e_rational(static_cast<std::int64_t>(mod_floor(tr, big_n)), big_n);
    }
  }
  return acc;
}

void gauss_suite(Checker& c, Rng& rng) {
  c.run("|g(a, d)|^2 = N(d) for square-free d coprime to a", [&] {
    int n = 0;
    while (n < 200) {
      auto d = random_primary(rng, 40);
      auto a = random_primary(rng, 40);
      if (!is_squarefree(d) || !is_unit(gcd(a, d))) continue;
      double g2 = std::norm(gauss_sum(a, d));
      double nd = static_cast<double>(norm(d));
      require(std::abs(g2 - nd) <= 1e-9 * nd, "modulus fails for d = " + to_string(d));
      ++n;
    }
    return std::string("200 pairs");
  });
  c.run("conjugation symmetry of direct sums", [&] {
    for (int i = 0; i < 50; ++i) {
      auto n = random_primary(rng, 25);
      auto r = random_element(rng, 20);
      Complex lhs = std::conj(gauss_sum(r, n));
      Complex rhs = conjugate_direct(r, n);
      double scale = std::max(1.0, std::abs(lhs));
      require(std::abs(lhs - rhs) <= 1e-9 * scale, "conjugate sums differ for n = " + to_string(n));
    }
    return std::string("50 samples");
  });
  c.run("shifted residue systems give the same sum", [&] {
    for (int i = 0; i < 50; ++i) {
      auto n = random_primary(rng, 25);
      auto r = random_element(rng, 20);
      auto shift = random_element(rng, 5);
      Complex a = gauss_sum(r, n);
      Complex b = gauss_sum_reference(r, n, shift);
      require(std::abs(a - b) <= 1e-12 * std::max(1.0, static_cast<double>(norm(n))),
              "shift changes g for n = " + to_string(n) + ": diff " + fmt(std::abs(a - b)));
    }
    return std::string("50 samples");
  });
  c.run("twist identity on 200 random coprime triples", [&] {
    int n = 0;
    while (n < 200) {
      auto a = random_primary(rng, 20);
      auto d = random_primary(rng, 20);
      auto cc = random_primary(rng, 20);
      if (!is_squarefree(a) || !is_squarefree(d) || !is_squarefree(cc)) continue;
      if (!is_unit(gcd(a, d)) || !is_unit(gcd(a, cc)) || !is_unit(gcd(d, cc))) continue;
      if (norm(a * d * cc) > 100'000) continue;
      require(twist_identity_check(a, d, cc), "twist fails at (" + to_string(a) + ", " + to_string(d) + ", " +
                                                  to_string(cc) + ")");
      ++n;
    }
    return std::string("200 triples");
  });
}

void lfunctions_suite(Checker& c, Rng& rng, bool quick) {
  c.run("weight certification and monotonicity", [&] {
    const auto& cert = weight_certification();
    require(cert.passed, "erfc form differs from contour by " + fmt(cert.max_deviation));
    double prev = 1.0;
    for (int i = 0; i <= 400; ++i) {
      double y = std::pow(10.0, -3.0 + i * 0.01);
      double v = v_weight(y);
      require(v > 0.0 && v < prev, "V not strictly decreasing near y = " + fmt(y));
      prev = v;
    }
    return "max deviation " + fmt(cert.max_deviation);
  });
  std::int64_t x = quick ? 500 : 2000;
  auto family = enumerate_family(x);
  c.run("functional equation: Y-independence up to cond_norm " + std::to_string(x), [&] {
    GaussSumCache gauss;
    double worst = 0.0;
    for (const auto& e : family) {
      Complex w = gauss.root_number(e);
      double y0 = balanced_y(e.cond_norm);
      AfeOptions o;
      o.y_param = y0;
      Complex mid = afe_central_value(e, w, o).l_half;
      for (double y : {y0 / 2, 2 * y0}) {
        o.y_param = y;
        worst = std::max(worst, std::abs(afe_central_value(e, w, o).l_half - mid));
      }
    }
    require(worst <= 2e-8, "largest Y spread " + fmt(worst));
    return std::to_string(family.size()) + " members, spread " + fmt(worst);
  });
  c.run("L(1/2, conj chi) = conj L(1/2, chi)", [&] {
    LValueEngine engine;
    double worst = 0.0;
    for (const auto& e : random_members(rng, family, 50)) {
      auto l = engine.compute(e).l_half;
      auto lc = engine.compute(e.conjugate()).l_half;
      worst = std::max(worst, std::abs(l - std::conj(lc)));
    }
    require(worst <= 2e-8, "conjugation gap " + fmt(worst));
    return "gap " + fmt(worst);
  });
  c.run("series at s = 2 matches the Euler product (50 members)", [&] {
    for (const auto& e : random_members(rng, family, 50)) {
      auto s = series_at_s(e, 2.0, 10'000);
      auto p = euler_product(e, 2.0, 10'000);
      require(std::abs(s.value - p.value) <= s.tail_bound + p.tail_bound, "series and product disagree");
    }
    return std::string("50 members");
  });
}

void moments_suite(Checker& c, bool quick) {
  ConstantsConfig cfg;
  if (quick) {
    cfg.cube_cutoff = 200;
    cfg.inner_cutoff = 200;
  }
  ConstantsBundle constants = compute_constants(cfg);
  std::int64_t x = quick ? 2000 : 10'000;
  LValueEngine engine;
  auto records = engine.compute_all(enumerate_family(x));
  c.run("reversed aggregation matches canonical order", [&] {
    auto fwd = aggregate_moments(records, x, constants);
    auto rev = aggregate_moments(records, x, constants, 1e-6, true);
    double gap = std::abs(fwd.first_moment - rev.first_moment);
    require(gap <= fwd.tolerance_budget, "gap " + fmt(gap) + " exceeds budget " + fmt(fwd.tolerance_budget));
    return "gap " + fmt(gap);
  });
  c.run("aggregation is bit-for-bit reproducible", [&] {
    auto a = aggregate_moments(records, x, constants);
    auto b = aggregate_moments(records, x, constants);
    require(a.first_moment == b.first_moment && a.second_moment == b.second_moment, "repeat differs");
    return std::string("identical");
  });
  c.run("report invariants", [&] {
    auto r = aggregate_moments(records, x, constants);
    require(r.family_size == static_cast<std::int64_t>(records.size()), "family_size mismatch");
    require(r.second_moment >= 0.0 && r.nonvanishing_count <= r.family_size, "report bounds violated");
    require(std::abs(r.first_moment.imag()) <= r.tolerance_budget, "imaginary part above budget");
    return "|F| = " + std::to_string(r.family_size);
  });
  c.run("h9 = 9", [&] {
    auto rc = ray_class_count();
    require(rc.h9 == 9 && rc.unit_group == 54, "h9 = " + std::to_string(rc.h9));
    return std::string("h9 = 9, unit group 54");
  });
  c.run("D stable under prime cutoff doubling", [&] {
    require(constants.d_detail.stability < 1e-6, "relative change " + fmt(constants.d_detail.stability));
    return "relative change " + fmt(constants.d_detail.stability);
  });
  c.run("E stable under cutoff doubling", [&] {
    double limit = quick ? 0.05 : 0.01;
    require(constants.e_detail.trend < limit, "relative change " + fmt(constants.e_detail.trend));
    return "relative change " + fmt(constants.e_detail.trend);
  });
  c.run("constants are finite and D > 0", [&] {
    for (double v : {constants.a_const, constants.b_const, constants.d_const, constants.e_const}) {
      require(std::isfinite(v), "non-finite constant");
    }
    require(constants.d_const > 0.0, "D <= 0");
    return std::string("ok");
  });
}

CacheRecord random_record(Rng& rng) {
  std::uniform_int_distribution<std::int64_t> coord(-100'000, 100'000);
  std::uniform_real_distribution<double> real(-10.0, 10.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  CacheRecord r;
  r.c1_a = coord(rng);
  r.c1_b = coord(rng);
  r.c2_a = coord(rng);
  r.c2_b = coord(rng);
  r.cond_norm = std::abs(coord(rng)) + 1;
  r.l_re = real(rng);
  r.l_im = std::ldexp(real(rng), expo(rng));
  r.w_re = real(rng) * 1e3;
  r.w_im = -real(rng) / 7.0;
  r.y_param = std::abs(real(rng)) + 1e-3;
  r.trunc_bound = std::ldexp(std::abs(real(rng)), -40);
  return r;
}

void cache_suite(Checker& c, Rng& rng) {
  c.run("serialize then parse is the identity (1000 records)", [&] {
    for (int i = 0; i < 1000; ++i) {
      auto r = random_record(rng);
      require(parse_cache_line(serialize(r)) == r, "round trip changed " + serialize(r));
    }
    return std::string("1000 records");
  });
  c.run("schema mismatch is rejected", [&] {
    auto r = random_record(rng);
    r.schema_version = kCacheSchemaVersion + 1;
    bool rejected = false;
    try {
      parse_cache_line(serialize(r));
    } catch (const SchemaError&) {
      rejected = true;
    }
    require(rejected, "future schema accepted");
    return std::string("rejected");
  });
  c.run("cold and warm runs write identical reports", [&] {
    auto dir = std::filesystem::temp_directory_path() / ("eisen-verify-" + std::to_string(rng()));
    std::filesystem::create_directories(dir);
    RunConfig cfg;
    cfg.x_max = 3000;
    cfg.cube_cutoff = 100;
    cfg.inner_cutoff = 100;
    cfg.cache_path = dir / "cache.jsonl";
    auto report = [&](std::size_t& computed) {
      Session s(cfg);
      std::ostringstream os;
      write_moment_reports(os, s.moments({1000, 2000, 3000}), OutputFormat::kCsv);
      computed = s.computed();
      return os.str();
    };
    std::size_t cold_computed = 0;
    std::size_t warm_computed = 0;
    std::string cold = report(cold_computed);
    std::string warm = report(warm_computed);
    std::filesystem::remove_all(dir);
    require(cold_computed > 0 && warm_computed == 0, "warm run recomputed values");
    require(cold == warm, "reports differ");
    return std::to_string(cold_computed) + " values cached";
  });
}

}  // namespace

EisensteinInt random_primary(std::mt19937_64& rng, std::int64_t radius) {
  std::uniform_int_distribution<std::int64_t> dist(-radius, radius);
  for (;;) {
    EisensteinInt x{dist(rng), dist(rng)};
    if (x.is_zero() || norm(x) % 3 == 0) continue;
    return primary_associate(x).primary;
  }
}

bool is_primitive_brute_force(const FamilyElement& elem) {
  for (const auto& [pi, e] : factor(elem.conductor).factors) {
    EisensteinInt sub = exact_div(elem.conductor, pi);
    ResidueBox box = residue_box(pi);
    bool nontrivial = false;
    for (std::int64_t y = 0; y < box.y_period && !nontrivial; ++y) {
      for (std::int64_t x = 0; x < box.x_period && !nontrivial; ++x) {
        auto v = chi_eval(elem, EisensteinInt{1, 0} + sub * EisensteinInt{x, y});
        nontrivial = !v.is_zero() && v != CubicValue::root(0);
      }
    }
    if (!nontrivial) return false;
  }
  return true;
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> kSuites = {"core", "characters", "gauss", "lfunctions", "moments", "cache"};
  return kSuites;
}

std::vector<CheckResult> run_verify(const std::string& suite, const VerifyOptions& options) {
  const auto& known = verify_suites();
  if (suite != "all" && std::find(known.begin(), known.end(), suite) == known.end()) {
    throw std::invalid_argument("unknown verify suite '" + suite + "'");
  }
  std::vector<CheckResult> out;
  Rng rng(options.seed);
  auto wanted = [&](const std::string& name) { return suite == "all" || suite == name; };
  if (wanted("core")) {
    Checker c{"core", &out};
    core_suite(c, rng);
  }
  if (wanted("characters")) {
    Checker c{"characters", &out};
    characters_suite(c, rng, options.quick);
  }
  if (wanted("gauss")) {
    Checker c{"gauss", &out};
    gauss_suite(c, rng);
  }
  if (wanted("lfunctions")) {
    Checker c{"lfunctions", &out};
    lfunctions_suite(c, rng, options.quick);
  }
  if (wanted("moments")) {
    Checker c{"moments", &out};
    moments_suite(c, options.quick);
  }
  if (wanted("cache")) {
    Checker c{"cache", &out};
    cache_suite(c, rng);
  }
  return out;
}

}  // namespace eisen
