#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "motslab/errors.hpp"
#include "motslab/horizon.hpp"
#include "motslab/penrose.hpp"
#include "motslab/shear.hpp"

using namespace motslab;

namespace {

const Regime& regime() {
  static const Regime r = make_regime(RegimeParameters{});
  return r;
}

}  // namespace

TEST(Penrose, AdmMass) {
  const auto& d = regime().derived;
  const auto m = adm_mass(regime());
  EXPECT_NEAR(m.hi - d.m0, 1e-18, 4 * std::numeric_limits<double>::epsilon() * d.m0);
  EXPECT_NEAR(d.m0 - m.lo, 1e-18, 4 * std::numeric_limits<double>::epsilon() * d.m0);
  // eps = a^{1/2 - y/2} for C = 1, delta = a^{-y}
  EXPECT_NEAR(d.eps_glue / std::pow(1e4, 0.5 - 5.0), 1.0, 1e-14);
  auto p = regime().params;
  p.C_eps = 0.0;
  const auto z = adm_mass(make_regime(p));
  EXPECT_EQ(z.lo, z.hi);
  EXPECT_EQ(z.lo, d.m0);
}

TEST(Penrose, RelativeGlueError) {
  const auto& p = regime().params;
  const auto& d = regime().derived;
  const double want = std::pow(p.a, 0.5 * p.y - p.kappa * p.mu) * 4 / (p.lambda_lo * (1 + p.o1));
  EXPECT_NEAR((d.eps_glue / d.m0) / want, 1.0, 1e-13);
}

TEST(Penrose, MarginAtWindowStart) {
  const auto& p = regime().params;
  const auto& d = regime().derived;
  const auto m = margin(regime(), {0.0, 0.0}, d.ubar_gamma);
  const double lead = std::pow(p.a, p.kappa * p.mu + 0.5 - p.y) * (p.lambda_lo - p.gamma * std::pow(p.a, 0.5 - p.kappa));
  EXPECT_NEAR(m.analytic.lo / ((0.25 - p.o1) * lead - d.eps_glue), 1.0, 1e-13);
  EXPECT_NEAR(m.analytic.hi / ((0.25 + p.o1) * lead + d.eps_glue), 1.0, 1e-13);
}

TEST(Penrose, MarginStraddlesAtLambdaDelta) {
  const auto m = margin(regime(), {0.0, 0.0}, regime().derived.ubar_lambda);
  EXPECT_LT(m.analytic.lo, 0.0);
  EXPECT_GT(m.analytic.hi, 0.0);
}

TEST(Penrose, NearLambdaDeltaUndetermined) {
  const auto& p = regime().params;
  const auto led = exponent_ledger(p);
  // a^{kappa mu + 1/2 - 3y/2} against c2 a^{1/2 - y/2}
  EXPECT_LT(led["kappa mu+1/2-3y/2"].get<double>(), led["1/2-y/2"].get<double>());
  const auto& d = regime().derived;
  const auto c = classify_regime(p, d.ubar_lambda - std::pow(d.delta, 1.5));
  EXPECT_EQ(c.lower, Verdict::Inconclusive);
  // the same holds one window-width fraction of delta^{1/2} away, where the subtraction is representable
  const auto c2 = classify_regime(p, d.ubar_lambda - 1e-20 * (d.ubar_lambda - d.ubar_gamma));
  EXPECT_EQ(c2.lower, Verdict::Inconclusive);
}

TEST(Penrose, DefaultCertified) {
  const auto c = classify_regime(regime().params, regime().derived.ubar_gamma);
  EXPECT_EQ(c.lower, Verdict::CertifiedPositive);
  // log10(0.05) + 2.5 * 4
  EXPECT_NEAR(c.log10_slack, std::log10(0.05) + 10.0, 1e-12);
}

TEST(Penrose, BoundaryExponentInconclusive) {
  RegimeParameters p;
  p.y = 0.5 / p.t;
  p.couple();
  ASSERT_TRUE(validate(p).ok());
  const auto c = classify_regime(p, derive(p).ubar_gamma);
  EXPECT_EQ(c.lower, Verdict::Inconclusive);
}

TEST(Penrose, CouplingRequired) {
  RegimeParameters p;
  p.penrose_coupling = false;
  EXPECT_THROW(classify_regime(p, 0.0), ConfigError);
}

TEST(Penrose, NeverViolated) {
  for (double y : {2.0, 6.0, 10.0, 14.0})
    for (double t : {0.05, 0.3, 0.45})
      for (double s : {0.0, 0.5, 0.99}) {
        RegimeParameters p;
        p.y = y;
        p.t = t;
        p.couple();
        if (!validate(p).ok()) continue;
        const auto d = derive(p);
        const auto c = classify_regime(p, d.ubar_gamma + s * (d.ubar_lambda - d.ubar_gamma));
        EXPECT_EQ(c.upper, Verdict::ViolatedNever);
        EXPECT_NE(c.lower, Verdict::ViolatedNever);
      }
}

TEST(Penrose, ExponentForm) {
  const auto f = exponent_form_at_gamma(regime());
  EXPECT_TRUE(f.exponents_match);
  EXPECT_TRUE(f.values_match);
  EXPECT_EQ(f.exp_leading_direct, -2.0);
  EXPECT_EQ(f.exp_eps, -4.5);
}

TEST(Penrose, SweepSinglePoint) {
  SweepAxes ax;
  ax.kappa = {0.6};
  ax.y = {10};
  ax.t = {0.3};
  ax.ubar_position = {0.0};
  const auto s = sweep(RegimeParameters{}, ax);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].status, "certified-positive");
}

TEST(Penrose, SweepInvalidEverywhere) {
  SweepAxes ax;
  ax.kappa = {1.0, 1.2};
  ax.y = {6, 10};
  ax.t = {0.3};
  ax.ubar_position = {0.0, 0.5};
  for (const auto& e : sweep(RegimeParameters{}, ax)) EXPECT_EQ(e.status, "invalid");
  SweepAxes empty;
  EXPECT_THROW(sweep(RegimeParameters{}, empty), ConfigError);
}

TEST(Penrose, SweepMonotoneInY) {
  SweepAxes ax;
  ax.kappa = {0.6};
  ax.t = {0.3};
  ax.ubar_position = {0.5};
  for (double y = 1.8; y <= 16.0; y += 0.2) ax.y.push_back(y);
  const auto s = sweep(RegimeParameters{}, ax);
  int transitions = 0;
  bool certified = false;
  for (const auto& e : s) {
    if (e.status == "invalid") continue;
    const bool c = e.status == "certified-positive";
    if (c != certified) ++transitions;
    EXPECT_TRUE(c || !certified) << "lost certification at y = " << e.y;
    certified = c;
  }
  EXPECT_EQ(transitions, 1);
}

TEST(Penrose, NumericIntervalContainsCenter) {
  const ShearModel shear(regime(), ProfileSpec{});
  auto g = make_grid(16, 32);
  const auto& d = regime().derived;
  for (double s : {0.0, 0.25, 0.5, 0.75, 0.95}) {
    const double ub = d.ubar_gamma + s * (d.ubar_lambda - d.ubar_gamma);
    const auto R = sample(g, [&](double t, double p) { return 0.5 * shear.cumulative(ub, t, p); });
    const auto a = area(R, regime().params.f0);
    const auto m = margin(regime(), {a.proxy_lo, a.proxy_hi}, ub);
    EXPECT_LE(m.numeric.lo, m.numeric.hi);
    EXPECT_TRUE(m.numeric.contains(m.center)) << s;
  }
}
