#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "eisen/moments.hpp"
#include "eisen/special.hpp"
#include "eisen/verify.hpp"

using namespace eisen;

TEST(ConstantA, MatchesClosedForm) {
  auto a = constant_A();
  EXPECT_NEAR(a.value, 4 * std::numbers::pi * std::numbers::pi / 243, 1e-9);
  EXPECT_LT(a.spread, 1e-8 * a.value);
  double f1 = 2.0 / 3.0 * std::numbers::pi / (3.0 * std::sqrt(3.0));
  EXPECT_NEAR(a.value, f1 * f1, 1e-9);
  EXPECT_NEAR(constant_A_printed(), 4 * std::numbers::pi / (27 * std::sqrt(3.0)), 1e-15);
}

TEST(ConstantB, LaddersAgree) {
  auto b = constant_B();
  EXPECT_NEAR(b.ladder_h, b.ladder_half, 1e-7 * std::abs(b.value));
  EXPECT_NEAR(b.value, 0.4856993733, 1e-8);
  // second-order Taylor residual stays bounded
  EXPECT_LT(b.taylor_residual, 5.0);
  double h = 1e-4;
  double central = (std::pow(f_trivial(1 + h), 2) - std::pow(f_trivial(1 - h), 2)) / (2 * h);
  EXPECT_NEAR(central, b.value, 1e-6);
}

TEST(GFactors, Examples) {
  auto [g1, gp1] = g_factors(factor(1));
  EXPECT_DOUBLE_EQ(g1, 1.0);
  EXPECT_DOUBLE_EQ(gp1, 0.0);
  auto [g2, gp2] = g_factors(factor(-2));
  EXPECT_NEAR(g2, 0.5625, 1e-15);
  EXPECT_NEAR(gp2, 0.5625 * 2 * std::log(4.0) / 3.0, 1e-14);
  EXPECT_THROW(g_factors(factor(3)), DomainError);
}

TEST(GFactors, Bounded) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    auto n = random_primary(rng, 200);
    if (divisible_by_ramified(n)) continue;
    auto [g, gp] = g_factors(factor(n));
    ASSERT_GT(g, 0.0);
    ASSERT_LE(g, 1.0);
    ASSERT_GE(gp, 0.0);
  }
}

TEST(ConstantD, StableProduct) {
  auto d = constant_D(20'000);
  EXPECT_LT(d.stability, 1e-6);
  EXPECT_GT(d.raw_stability, d.stability);
  EXPECT_NEAR(d.product, 0.95575, 5e-5);
  EXPECT_NEAR(d.oracle, constant_A().value / (9 * (1 - 1 / std::sqrt(3.0))) * d.product, 1e-12);
  EXPECT_NEAR(d.printed, constant_D_printed_prefactor() * d.product, 1e-12);
  EXPECT_NEAR(constant_D_printed_prefactor(), 0.21192, 1e-5);
  EXPECT_THROW(constant_D(50), DomainError);
}

TEST(ConstantE, SmallCutoffs) {
  auto e = constant_E(200, 200);
  EXPECT_TRUE(std::isfinite(e.value));
  EXPECT_GT(e.cubes, 0);
  EXPECT_LT(e.trend, 0.05);
  EXPECT_NEAR(e.value, 0.13715, 2e-4);
  EXPECT_THROW(constant_E(5, 200), DomainError);
}

TEST(ConstantE, TrivialCubeDominates) {
  auto a = constant_A().value;
  auto b = constant_B().value;
  double e1 = e_of_cube(1, 200, a, b);
  double e2 = e_of_cube(-2, 200, a, b);
  EXPECT_GT(std::abs(e1), std::abs(e2) / 64.0);
}

TEST(RayClass, H9) {
  auto rc = ray_class_count();
  EXPECT_EQ(rc.h9, 9);
  EXPECT_EQ(rc.unit_group, 54);
  EXPECT_EQ(ray_class_h9(), 9);
}

TEST(Grid, Dyadic) {
  EXPECT_EQ(dyadic_grid(1000, 3), (std::vector<std::int64_t>{250, 500, 1000}));
  EXPECT_EQ(dyadic_grid(7, 1), (std::vector<std::int64_t>{7}));
}

TEST(Fit, ExactRecovery) {
  std::vector<std::pair<double, double>> pts;
  for (double x : {100.0, 200.0, 400.0, 800.0}) pts.emplace_back(x, 0.3 * x * std::log(x) - 1.5 * x);
  auto fit = fit_main_term(pts);
  EXPECT_NEAR(fit.lead, 0.3, 1e-9);
  EXPECT_NEAR(fit.linear, -1.5, 1e-8);
  EXPECT_THROW(fit_main_term({{1.0, 1.0}}), DomainError);

  std::vector<std::pair<double, double>> pw;
  for (double x : {10.0, 20.0, 40.0, 80.0}) pw.emplace_back(x, 2 * std::pow(x, 1.25));
  EXPECT_NEAR(growth_exponent(pw), 1.25, 1e-12);
  EXPECT_THROW(growth_exponent({{1.0, 1.0}, {2.0, 2.0}}), DomainError);
}

namespace {

ConstantsBundle small_constants() {
  ConstantsConfig cc;
  cc.prime_cutoff = 2'000;
  cc.cube_cutoff = 50;
  cc.inner_cutoff = 50;
  return compute_constants(cc);
}

}  // namespace

TEST(Aggregate, Invariants) {
  auto c = small_constants();
  EXPECT_EQ(c.h9, 9);
  EXPECT_FALSE(c.truncation.empty());
  LValueEngine engine;
  auto recs = engine.compute_all(enumerate_family(1000));
  auto fwd = aggregate_moments(recs, 1000, c);
  auto rev = aggregate_moments(recs, 1000, c, 1e-6, true);
  EXPECT_EQ(fwd.family_size, 136);
  EXPECT_EQ(fwd.family_size, rev.family_size);
  EXPECT_NEAR(std::abs(fwd.first_moment - rev.first_moment), 0.0, 1e-10);
  EXPECT_NEAR(fwd.second_moment, rev.second_moment, 1e-10);
  EXPECT_NEAR(fwd.first_moment.real(), 185.19, 0.01);
  EXPECT_LT(std::abs(fwd.first_moment.imag()), fwd.tolerance_budget + 1e-9);
  EXPECT_GE(fwd.second_moment, std::norm(fwd.first_moment) / static_cast<double>(fwd.family_size) - 1e-9);
  EXPECT_LE(fwd.nonvanishing_count, fwd.family_size);
  EXPECT_EQ(fwd.nonvanishing_count, nonvanishing_count(recs, 1000, 1e-6));
  double x = 1000.0;
  EXPECT_NEAR(fwd.predicted_main, c.d_const * x * std::log(x) + c.e_const * x, 1e-9 * fwd.predicted_main);
  EXPECT_NEAR(fwd.ratio, fwd.first_moment.real() / fwd.predicted_main, 1e-12);

  auto half = aggregate_moments(recs, 500, c);
  EXPECT_LE(half.family_size, fwd.family_size);
  EXPECT_LE(half.second_moment, fwd.second_moment);

  auto empty = aggregate_moments(recs, 72, c);
  EXPECT_EQ(empty.family_size, 0);
  EXPECT_EQ(empty.first_moment, std::complex<double>(0.0, 0.0));
  EXPECT_EQ(empty.second_moment, 0.0);
}

TEST(Moments, DriversAndCapacity) {
  auto c = small_constants();
  MomentOptions opt;
  auto first = first_moment(300, c, opt);
  auto second = second_moment(300, c, opt);
  EXPECT_EQ(first.family_size, second.family_size);
  EXPECT_NEAR(first.second_moment, second.second_moment, 1e-12);
  opt.capacity = 100;
  EXPECT_THROW(second_moment(300, c, opt), CapacityError);
}
