#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "eisen/gauss.hpp"
#include "eisen/lfunction.hpp"
#include "eisen/special.hpp"

using namespace eisen;

namespace {

// erfc(x) from the Maclaurin series of erf, good for x <= 3.
double erfc_series(double x) {
  double term = x, sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x * x / n;
    sum += term / (2 * n + 1);
  }
  return 1.0 - 2.0 / std::sqrt(std::numbers::pi) * sum;
}

// Direct ideal sum of zeta_K(s) over primary elements times the 3-part.
double zeta_k_direct(double s, std::int64_t bound) {
  double total = 0.0;
  for (const auto& a : enumerate_primary(bound)) total += std::pow(static_cast<double>(norm(a)), -s);
  return total / (1.0 - std::pow(3.0, -s));
}

// Family elements whose root number is not real, so the two labellings differ.
std::vector<FamilyElement> complex_root_elements(std::size_t count) {
  std::vector<FamilyElement> out;
  for (const auto& e : enumerate_family(2000)) {
    auto w = root_number(e);
    if (std::abs(w.imag()) > 1e-3 * std::abs(w)) out.push_back(e);
    if (out.size() == count) break;
  }
  return out;
}

}  // namespace

TEST(Weight, ClosedForm) {
  EXPECT_NEAR(v_weight(1.0), erfc_series(std::sqrt(2 * std::numbers::pi)), 1e-13);
  EXPECT_NEAR(v_weight(1.0), 3.9e-4, 0.1e-4);
  EXPECT_LT(v_weight(10.0), 1e-10);
  EXPECT_NEAR(v_weight(1e-12), 1.0, 1e-5);
  EXPECT_GT(v_weight(0.1), v_weight(0.2));
}

TEST(Weight, Contour) {
  EXPECT_NEAR(v_weight_contour(1e-3).value, erfc_series(std::sqrt(2e-3 * std::numbers::pi)), 1e-10);
  for (double y : {1e-3, 0.05, 0.5, 1.0, 3.0}) {
    auto c = v_weight_contour(y);
    EXPECT_NEAR(c.value, v_weight_closed(y), 1e-10) << y;
    EXPECT_LE(c.error_estimate, 1e-10);
  }
  const auto& cert = weight_certification();
  EXPECT_TRUE(cert.passed);
  EXPECT_LE(cert.max_deviation, 1e-10);
  for (double y : {0.5, 1.0, 4.0, 50.0}) EXPECT_LE(v_weight(y), cert.c3 * std::pow(y, -3.0));
}

TEST(Zeta, KnownValues) {
  EXPECT_NEAR(riemann_zeta(2.0), std::numbers::pi * std::numbers::pi / 6.0, 1e-12);
  EXPECT_NEAR(zeta_k(2.0), riemann_zeta(2.0) * dirichlet_l_chi3(2.0), 1e-12);
  EXPECT_NEAR(zeta_k(2.0), zeta_k_direct(2.0, 200'000), 1e-4);
  EXPECT_NEAR(zeta_k_times_s_minus_1(1.0 + 1e-7), std::numbers::pi / (3.0 * std::sqrt(3.0)), 1e-6);
  EXPECT_NEAR(f_trivial(1.0), 2.0 / 3.0 * std::numbers::pi / (3.0 * std::sqrt(3.0)), 1e-9);
  EXPECT_NEAR(dirichlet_l_chi3(1.0 + 1e-9), std::numbers::pi / (3.0 * std::sqrt(3.0)), 1e-7);
}

TEST(Afe, TailBound) {
  double y = balanced_y(1000);
  EXPECT_NEAR(y, std::sqrt(3000.0), 1e-12);
  auto cut = afe_cutoff(y, 1e-8);
  EXPECT_LE(afe_tail_bound(y, static_cast<double>(cut)), 1e-8);
  EXPECT_GT(afe_tail_bound(y, static_cast<double>(cut) / 2), afe_tail_bound(y, static_cast<double>(cut)));
}

TEST(Afe, YIndependence) {
  auto elems = complex_root_elements(3);
  elems.push_back(make_family_element(10, 1));
  for (const auto& e : elems) {
    double base = balanced_y(e.cond_norm);
    auto ref = afe_central_value(e, base, 1e-10).l_half;
    for (double f : {0.5, 2.0}) {
      auto other = afe_central_value(e, base * f, 1e-10).l_half;
      EXPECT_NEAR(std::abs(other - ref), 0.0, 1e-8) << to_string(e.c1) << " " << to_string(e.c2);
    }
  }
}

TEST(Afe, WrongRootNumberBreaksYIndependence) {
  auto e = complex_root_elements(1).at(0);
  auto w = root_number(e, RootConvention::kConjugated);
  ASSERT_GT(std::abs(w - root_number(e)), 1e-3);
  double base = balanced_y(e.cond_norm);
  AfeOptions o1, o2;
  o1.y_param = base * 0.5;
  o2.y_param = base * 2.0;
  auto a = afe_central_value(e, w, o1).l_half;
  auto b = afe_central_value(e, w, o2).l_half;
  EXPECT_GT(std::abs(a - b), 1e-4);
}

TEST(Afe, ConjugateCharacter) {
  auto e = make_family_element(-2, 7);
  auto x = afe_central_value(e, root_number(e)).l_half;
  auto y = afe_central_value(e.conjugate(), root_number(e.conjugate())).l_half;
  EXPECT_NEAR(std::abs(x - std::conj(y)), 0.0, 1e-8);
}

TEST(Afe, SyntheticCharacter) {
  auto e = make_family_element(10, 1);
  auto prime_value = [&](const EisensteinInt& p) { return chi_eval(e, p); };
  AfeOptions o;
  o.tolerance = 1e-10;
  auto synth = afe_with_character(e, prime_value, root_number(e), o).l_half;
  auto prod = afe_central_value(e, root_number(e), o).l_half;
  EXPECT_NEAR(std::abs(synth - prod), 0.0, 1e-9);

  // Trivial character: only the 1/N(a)^{1/2} weights survive, value is real.
  auto trivial = [](const EisensteinInt&) { return CubicValue::root(0); };
  auto t = afe_with_character(e, trivial, Complex(10, 0), o).l_half;
  EXPECT_NEAR(t.imag(), 0.0, 1e-9);
  EXPECT_TRUE(std::isfinite(t.real()));
}

TEST(Afe, RecordFields) {
  auto e = make_family_element(10, 1);
  auto rec = afe_central_value(e, balanced_y(e.cond_norm), 1e-8);
  EXPECT_LE(rec.truncation_bound, 1e-8);
  EXPECT_GT(rec.cutoff_norm, 0);
  EXPECT_EQ(rec.elem, e);
  EXPECT_NEAR(std::norm(rec.root_number), 100.0, 1e-8);
}

TEST(Series, AgainstEulerProduct) {
  auto e = make_family_element(-2, 7);
  auto s = series_at_s(e, 2.0, 200'000);
  auto p = euler_product(e, 2.0, 200'000);
  EXPECT_NEAR(std::abs(s.value - p.value), 0.0, s.tail_bound + p.tail_bound + 1e-12);
  EXPECT_LT(s.tail_bound, 1e-3);
  auto one = series_at_s(e, 2.0, 1);
  EXPECT_NEAR(std::abs(one.value - Complex(1, 0)), 0.0, 1e-15);
}

TEST(Engine, MatchesDirect) {
  LValueEngine engine;
  auto fam = enumerate_family(600);
  auto all = engine.compute_all(fam);
  ASSERT_EQ(all.size(), fam.size());
  for (std::size_t i = 0; i < fam.size(); i += 5) {
    auto direct = afe_central_value(fam[i], root_number(fam[i]));
    ASSERT_NEAR(std::abs(all[i].l_half - direct.l_half), 0.0, 1e-10);
  }
}

TEST(Counting, PrimaryBound) {
  for (std::int64_t t : {1, 7, 100, 5000}) {
    EXPECT_GE(primary_count_bound(static_cast<double>(t)), static_cast<double>(enumerate_primary(t).size()));
  }
}
