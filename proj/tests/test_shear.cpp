#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "motslab/container.hpp"
#include "motslab/errors.hpp"
#include "motslab/shear.hpp"

using namespace motslab;

namespace {

const ShearProfile& default_profile() {
  static const ShearProfile p = build_profile(make_regime(RegimeParameters{}), ProfileSpec{});
  return p;
}

bool passes(const CheckList& l, const std::string& name) {
  const auto* c = l.find(name);
  EXPECT_NE(c, nullptr) << name;
  return c && c->pass;
}

}  // namespace

TEST(Shear, WindowIdentityAtLambdaDelta) {
  const auto& p = default_profile();
  const auto& d = p.regime.derived;
  const std::size_t k = static_cast<std::size_t>(p.panel_ends[1]);
  ASSERT_DOUBLE_EQ(p.ubar[k], d.ubar_lambda);
  const auto model = p.model();
  // f = 1 and zeta = 1 at lambda delta away from the dip: I = A lambda delta
  for (std::size_t q = 0; q < p.nodes(); ++q) {
    const double th = p.grid->theta_at(q), ph = p.grid->phi_at(q);
    if (!model->in_omega(th, ph)) continue;
    EXPECT_NEAR(p.I[k * p.nodes() + q] / (d.amp * d.ubar_lambda), 1.0, 1e-8);
  }
}

TEST(Shear, PlateauAtLambdaPrime) {
  const auto& p = default_profile();
  const double m4 = 4 * p.regime.derived.m0;
  for (std::size_t k = static_cast<std::size_t>(p.panel_ends[2]); k < p.n_ubar(); ++k)
    for (std::size_t q = 0; q < p.nodes(); ++q) EXPECT_NEAR(p.I[k * p.nodes() + q] / m4, 1.0, 1e-6);
}

TEST(Shear, EmptyAtStart) {
  const auto& p = default_profile();
  for (std::size_t q = 0; q < p.nodes(); ++q) {
    EXPECT_EQ(p.I[q], 0.0);
    EXPECT_EQ(p.amp2[q], 0.0);
  }
}

TEST(Shear, DefaultProfilePassesVerifier) {
  const auto rep = verify_profile(default_profile());
  for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name << " measured " << c.measured;
}

TEST(Shear, SecondRegimePassesVerifier) {
  RegimeParameters r;
  r.kappa = 0.7;
  r.y = 12;
  r.t = 0.25;
  r.couple();
  ProfileSpec s;
  s.n_theta = 16;
  s.n_phi = 32;
  const auto rep = verify_profile(build_profile(make_regime(r), s));
  for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name << " measured " << c.measured;
}

TEST(Shear, StepZetaFlagged) {
  ProfileSpec s;
  s.zeta_step = true;
  const auto rep = verify_profile(build_profile(make_regime(RegimeParameters{}), s));
  EXPECT_FALSE(passes(rep, "endpoint_smoothness"));
}

TEST(Shear, ScaledProfileFlaggedWithRatio) {
  auto p = default_profile();
  for (auto& v : p.I) v *= 1.5;
  for (auto& v : p.amp2) v *= 1.5;
  const auto rep = verify_profile(p);
  EXPECT_FALSE(passes(rep, "total_shear"));
  EXPECT_NEAR(1.0 + rep.find("total_shear")->measured, 1.5, 1e-6);
}

TEST(Shear, FrozenZeroLocusFlagged) {
  auto p = default_profile();
  for (auto& v : p.zero_theta) v = p.zero_theta[p.n_ubar() / 4];
  const auto rep = verify_profile(p);
  EXPECT_FALSE(passes(rep, "zero_locus_moving"));
  EXPECT_FALSE(passes(rep, "zero_locus_present"));
}

TEST(Shear, ZeroWithoutDipIsInfeasible) {
  RegimeParameters r;
  r.o1 = 0.0;
  EXPECT_THROW(build_profile(make_regime(r), ProfileSpec{}), ConstraintError);
}

TEST(Shear, MonotoneCumulative) {
  const auto& p = default_profile();
  for (std::size_t q = 0; q < p.nodes(); ++q)
    for (std::size_t k = 1; k < p.n_ubar(); ++k) ASSERT_GE(p.I[k * p.nodes() + q], p.I[(k - 1) * p.nodes() + q]);
}

TEST(Shear, AngularTotalIndependent) {
  const auto& p = default_profile();
  const auto last = p.slice(p.I, p.n_ubar() - 1);
  EXPECT_LE(last.max() - last.min(), 1e-6 * 4 * p.regime.derived.m0);
}

TEST(Shear, TrapezoidConvergesSecondOrder) {
  auto err = [](int scale) {
    ProfileSpec s;
    s.n_theta = 8;
    s.n_phi = 16;
    s.n_ramp *= scale;
    s.n_window *= scale;
    s.n_transition *= scale;
    s.n_tail *= scale;
    const auto p = build_profile(make_regime(RegimeParameters{}), s);
    double e = 0.0;
    for (std::size_t q = 0; q < p.nodes(); ++q) {
      const auto tr = trapezoid_cumulative(p, q);
      for (std::size_t k = 0; k < p.n_ubar(); ++k) e = std::max(e, std::abs(tr[k] - p.I[k * p.nodes() + q]));
    }
    return e / (4 * p.regime.derived.m0);
  };
  const double e1 = err(1), e2 = err(2);
  EXPECT_GT(e1 / e2, 3.0);
  EXPECT_LT(e1 / e2, 5.0);
}

TEST(Shear, ScaleCriticalNorm) {
  const auto& p = default_profile();
  auto zero = p;
  for (auto& v : zero.amp2) v = 0.0;
  EXPECT_EQ(scale_critical_norm(zero, 2, 2, 1.0).value, 0.0);
  const auto ref = scale_critical_norm(p, 2, 2, 5e19);
  EXPECT_TRUE(ref.pass);
  auto big = p;
  for (auto& v : big.amp2) v *= p.regime.params.a;
  const auto scaled = scale_critical_norm(big, 2, 2, 5e19);
  EXPECT_NEAR(scaled.value / ref.value, std::sqrt(p.regime.params.a), 1e-9 * std::sqrt(p.regime.params.a));
  EXPECT_FALSE(scaled.pass);
  EXPECT_THROW(scale_critical_norm(p, 2, p.grid->lmax() + 1, 1.0), ResolutionError);
}

TEST(Shear, ContainerRoundTrip) {
  const auto& p = default_profile();
  const auto path = std::filesystem::temp_directory_path() / "motslab_profile_roundtrip.mlb";
  write_container(to_container(p), path.string());
  const auto q = profile_from_container(read_container(path.string()));
  std::filesystem::remove(path);
  EXPECT_EQ(q.ubar, p.ubar);
  EXPECT_EQ(q.I, p.I);
  EXPECT_EQ(q.amp2, p.amp2);
  EXPECT_EQ(q.zero_theta, p.zero_theta);
  EXPECT_EQ(q.regime.params.mu, p.regime.params.mu);
  EXPECT_TRUE(q.grid->same_as(*p.grid));
}
