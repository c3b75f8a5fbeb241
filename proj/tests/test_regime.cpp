#include <cmath>
#include <cstring>
#include <limits>

#include <gtest/gtest.h>

#include "motslab/errors.hpp"
#include "motslab/regime.hpp"

using namespace motslab;

namespace {

RegimeParameters uncoupled() {
  RegimeParameters p;
  p.penrose_coupling = false;
  return p;
}

std::vector<std::string> failing(const RegimeParameters& p) { return validate(p).failures(); }

}  // namespace

TEST(Regime, DefaultsPassWithExpectedExponents) {
  RegimeParameters p;
  const auto r = validate(p);
  EXPECT_TRUE(r.ok());
  // kappa mu + 1/2 = 8 = (1/2 + t) y, kappa mu - y + 1/2 = -2
  EXPECT_DOUBLE_EQ(p.kappa * p.mu + 0.5, 8.0);
  EXPECT_DOUBLE_EQ((0.5 + p.t) * p.y, 8.0);
  EXPECT_DOUBLE_EQ(r.find("exponent_balance")->slack, 2.0);
}

TEST(Regime, KappaBelowHalfFails) {
  auto p = uncoupled();
  p.kappa = 0.4;
  const auto f = failing(p);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0], "kappa_lower");
}

TEST(Regime, ExponentBalanceViolation) {
  auto p = uncoupled();
  p.kappa = 0.9;
  p.mu = 2.0;
  p.y = 2.0;
  const auto r = validate(p);
  EXPECT_FALSE(r.find("exponent_balance")->pass);
  EXPECT_NEAR(r.find("exponent_balance")->slack, -0.3, 1e-15);
}

TEST(Regime, ShrinkingKappaFlipsOnlyKappaBound) {
  const auto base = failing(uncoupled());
  ASSERT_TRUE(base.empty());
  for (double k = 0.499; k > 0.3; k -= 0.037) {
    auto p = uncoupled();
    p.kappa = k;
    const auto f = failing(p);
    ASSERT_EQ(f.size(), 1u) << "kappa " << k;
    EXPECT_EQ(f[0], "kappa_lower");
  }
}

TEST(Regime, SlackMonotoneInEachParameter) {
  double prev = -INFINITY;
  for (double y = 8.0; y < 14.0; y += 0.5) {
    auto p = uncoupled();
    p.y = y;
    const double s = validate(p).find("exponent_balance")->slack;
    EXPECT_GT(s, prev);
    prev = s;
  }
}

TEST(Regime, DerivedScalars) {
  const auto d = derive(RegimeParameters{});
  // b = a^kappa = 10^(4 * 0.6)
  EXPECT_NEAR(d.b / std::pow(10.0, 2.4), 1.0, 1e-15);
  EXPECT_NEAR(d.delta / 1e-40, 1.0, 1e-15);
  EXPECT_NEAR(d.amp / 1e32, 1.0, 1e-15);
  // eps = C a^{1/2} delta^{1/2} with delta = 1e-40, a = 1e4: 10^{2 - 20}
  EXPECT_NEAR(d.eps_glue / 1e-18, 1.0, 1e-15);
  EXPECT_NEAR(d.eps_glue / std::sqrt(1e4 * d.delta), 1.0, 1e-15);
  EXPECT_GT(d.ubar_lambda, d.ubar_gamma);
  EXPECT_GT(d.ubar_lambda_hi, d.ubar_lambda);
  EXPECT_GT(d.ubar_end, d.ubar_lambda_hi);
  EXPECT_NEAR(d.u_trapped / (d.b * d.delta * 100.0), 1.0, 1e-14);
  for (double v : {d.b, d.delta, d.m0, d.amp, d.ubar_gamma, d.eps_glue, d.u_trapped}) EXPECT_GT(v, 0.0);
}

TEST(Regime, MassWithoutDip) {
  auto p = RegimeParameters{};
  p.o1 = 0.0;
  const auto d = derive(p);
  const double direct = std::pow(d.b, p.mu) * std::sqrt(p.a) * p.lambda_lo * d.delta / 4.0;
  EXPECT_NEAR(d.m0 / direct, 1.0, 1e-13);
}

TEST(Regime, DeriveIsPure) {
  const auto a = derive(RegimeParameters{});
  const auto b = derive(RegimeParameters{});
  EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
}

TEST(Regime, CoupledMuWithinUlps) {
  for (double kappa : {0.55, 0.6, 0.75, 0.9})
    for (double y : {4.0, 7.0, 10.0, 13.0})
      for (double t : {0.1, 0.3, 0.45}) {
        RegimeParameters p;
        p.kappa = kappa;
        p.y = y;
        p.t = t;
        p.couple();
        const double lhs = p.kappa * p.mu + 0.5, rhs = (0.5 + t) * y;
        EXPECT_LE(std::abs(lhs - rhs), 4 * std::numeric_limits<double>::epsilon() * rhs);
        EXPECT_TRUE(validate(p).find("penrose_coupling")->pass);
      }
}

TEST(Regime, CouplingMismatchFlagged) {
  RegimeParameters p;
  p.mu = 12.6;
  EXPECT_FALSE(validate(p).find("penrose_coupling")->pass);
  EXPECT_THROW(derive(p), ConstraintError);
}

TEST(Regime, MalformedInput) {
  RegimeParameters p;
  p.a = std::nan("");
  EXPECT_THROW(validate(p), MalformedParameters);
  p.a = -1.0;
  EXPECT_THROW(validate(p), MalformedParameters);
}
