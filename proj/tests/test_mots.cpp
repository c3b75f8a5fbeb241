#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "motslab/container.hpp"
#include "motslab/errors.hpp"
#include "motslab/horizon.hpp"
#include "motslab/mots.hpp"

using namespace motslab;

namespace {

const Regime& regime() {
  static const Regime r = make_regime(RegimeParameters{});
  return r;
}

const ShearModel& shear() {
  static const ShearModel m(regime(), ProfileSpec{});
  return m;
}

double window_ubar(double frac) {
  const auto& d = regime().derived;
  return d.ubar_gamma + frac * (d.ubar_lambda - d.ubar_gamma);
}

double max_abs(const SphereField& f) { return std::max(std::abs(f.min()), std::abs(f.max())); }

// coarse solution evaluated on a finer grid through its harmonic coefficients
SphereField prolong(const SphereField& f, const GridPtr& fine) {
  const auto& c = *f.grid();
  const auto cc = c.analyze(f.values());
  std::vector<double> fc(fine->n_coeffs(), 0.0);
  for (int m = 0; m <= c.mmax(); ++m)
    for (int l = m; l <= c.lmax(); ++l) {
      fc[fine->index(l, m)] = cc[c.index(l, m)];
      fc[fine->index(l, m) + 1] = cc[c.index(l, m) + 1];
    }
  return SphereField(fine, fine->synthesize(fc));
}

}  // namespace

TEST(Mots, ConstantSolutionHasZeroResidual) {
  auto g = make_grid(12, 24);
  const double M = 4 * regime().derived.m0;
  const auto pb = make_constant_problem(g, M);
  EXPECT_LT(max_abs(residual_H(pb, SphereField(g, M / 2))) * M, 1e-12);
}

TEST(Mots, DipoleResidualMatchesClosedForm) {
  auto g = make_grid(16, 32);
  const double M = 2.0, e = 1e-3;
  const auto pb = make_constant_problem(g, M);
  const auto R = sample(g, [&](double t, double) { return M / 2 * (1 + e * std::cos(t)); });
  const auto res = residual_H(pb, R);
  for (std::size_t q = 0; q < g->size(); ++q) {
    const double t = g->theta_at(q), r = R[q];
    const double lap = -2 * (M / 2) * e * std::cos(t), grad = M / 2 * e * std::sin(t);
    const double want = lap / (r * r) - grad * grad / (r * r * r) - 1 / r + M / (2 * r * r);
    EXPECT_NEAR(res[q], want, 1e-12);
  }
}

TEST(Mots, SlowMassVariation) {
  auto g = make_grid(16, 32);
  const double M = 2.0;
  for (double e : {1e-2, 1e-3}) {
    auto pb = make_constant_problem(g, M);
    pb.M0 = sample(g, [&](double t, double p) { return M * (1 + e * std::sin(t) * std::cos(p)); });
    SphereField R = 0.5 * pb.M0;
    const auto res = residual_H(pb, R);
    const auto lap = laplace_beltrami(R, R);
    for (std::size_t q = 0; q < g->size(); ++q) EXPECT_LE(std::abs(res[q] - lap[q]), 2 * e * e);
  }
}

TEST(Mots, FamiliesAgreeAtZero) {
  const auto& d = regime().derived;
  auto g = make_grid(16, 32);
  const auto pb = make_problem(regime(), shear(), g, window_ubar(0.5), PerturbationOptions{});
  for (std::uint64_t s = 1; s <= 5; ++s) {
    auto R = random_smooth_field(g, 4, s);
    for (auto& v : R.values()) v = 0.5 * pb.M_ref * (1 + 0.1 * v);
    const auto diff = residual_FG(pb, R, 0.0, Family::F) - residual_FG(pb, R, 0.0, Family::G);
    EXPECT_LT(max_abs(diff) * pb.M_ref, 1e-14);
  }
  (void)d;
}

TEST(Mots, FamilyGAtOneMatchesH) {
  auto g = make_grid(16, 32);
  const auto pb = make_problem(regime(), shear(), g, window_ubar(0.5), PerturbationOptions{});
  const double S = 0.5 * pb.M_ref;
  const double s_nd = pb.pert_scale / S;
  for (std::uint64_t s = 1; s <= 3; ++s) {
    auto R = random_smooth_field(g, 4, s);
    for (auto& v : R.values()) v = S * (1 + 0.05 * v);
    const auto diff = residual_FG(pb, R, 1.0, Family::G) - residual_H(pb, R);
    // lower-order terms absorbed in the envelope: O(s b^{1/4}) in units of 1/S
    EXPECT_LE(max_abs(diff) * S, 50 * s_nd * pb.bg.b14 + 1e-13);
  }
}

TEST(Mots, ConstantSolveAndNewtonFromBandCenter) {
  auto g = make_grid(64, 128);
  const double m0 = regime().derived.m0;
  const auto pb = make_constant_problem(g, 4 * m0);
  const auto sol = solve_slice(pb, SolverOptions{});
  for (double v : sol.R.values()) EXPECT_LT(std::abs(v / (2 * m0) - 1), 1e-9);

  const auto& p = regime().params;
  const double lo = (1 - 1 / p.c1) * (1 - 1 / p.c2_zeta) * (0.5 - p.o1) * 4 * m0;
  const double hi = (1 + 1 / p.c1) * (1 + 1 / p.c2_zeta) * (0.5 + p.o1) * 4 * m0;
  const auto nr = newton_solve(pb, Family::H, 1.0, SphereField(g, 0.5 * (lo + hi)), SolverOptions{});
  ASSERT_TRUE(nr.converged);
  EXPECT_LE(nr.iterations, 3);
  for (double v : nr.R.values()) EXPECT_LT(std::abs(v / (2 * m0) - 1), 1e-9);
}

TEST(Mots, ConstantSolutionBoundRatios) {
  auto g = make_grid(16, 32);
  const auto pb = make_constant_problem(g, 4 * regime().derived.m0);
  const auto sol = solve_slice(pb, SolverOptions{});
  const auto rep = verify_apriori(sol, pb, regime());
  EXPECT_TRUE(rep.ok());
  for (const char* n : {"w12", "c1", "c2", "weight_h"}) EXPECT_LT(rep.find(n)->measured, 1e-9) << n;
  EXPECT_GT(rep.find("c0_band")->measured, 0.5);
}

TEST(Mots, WindowSlicesWithinBounds) {
  auto g = make_grid(32, 64);
  for (double frac : {0.0, 0.3, 0.7, 1.0}) {
    const auto pb = make_problem(regime(), shear(), g, window_ubar(frac), PerturbationOptions{});
    const auto sol = solve_slice(pb, SolverOptions{});
    EXPECT_LE(sol.residual_norm, 1e-10);
    const auto rep = verify_apriori(sol, pb, regime());
    for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name << " at " << frac << ": " << c.measured;
    EXPECT_LT(rep.find("c1")->measured * 0.1, regime().params.o1);
  }
}

TEST(Mots, UniquenessProbe) {
  auto g = make_grid(24, 48);
  const SolverOptions opt;
  const auto pb = make_problem(regime(), shear(), g, window_ubar(0.5), PerturbationOptions{});
  const auto sol = solve_slice(pb, opt);
  const auto u = uniqueness_probe(pb, sol, regime(), 10, 99, opt);
  EXPECT_EQ(u.converged, 10);
  EXPECT_LE(u.max_deviation, 10 * opt.newton_tol);
}

TEST(Mots, SeparateContinuationPathsAgree) {
  auto g = make_grid(24, 48);
  const auto pb = make_problem(regime(), shear(), g, window_ubar(0.6), PerturbationOptions{});
  SolverOptions a, b;
  b.family = Family::F;
  b.dlambda_init = 0.37;
  const auto s1 = solve_slice(pb, a), s2 = solve_slice(pb, b);
  const double S = 0.5 * pb.M_ref;
  EXPECT_LE(max_abs(s1.R - s2.R) / S, 10 * a.newton_tol);
}

TEST(Mots, PerturbedRadiusFailsC1) {
  auto g = make_grid(16, 32);
  const auto pb = make_problem(regime(), shear(), g, window_ubar(0.5), PerturbationOptions{});
  auto sol = solve_slice(pb, SolverOptions{});
  for (std::size_t q = 0; q < g->size(); ++q) sol.R[q] += 0.3 * sol.R[q] * std::cos(g->theta_at(q));
  sol.diagnostics = diagnose(sol.R);
  const auto rep = verify_apriori(sol, pb, regime());
  EXPECT_FALSE(rep.find("c1")->pass);
}

TEST(Mots, QuadraticNewton) {
  auto g = make_grid(16, 32);
  const auto pb = make_problem(regime(), shear(), g, window_ubar(0.5), PerturbationOptions{});
  SphereField R0 = 0.5 * pb.M0;
  auto e = random_smooth_field(g, 3, 5);
  for (std::size_t q = 0; q < g->size(); ++q) R0[q] *= 1 + 0.05 * e[q];
  SolverOptions opt;
  opt.newton_tol = 1e-13;
  const auto nr = newton_solve(pb, Family::H, 1.0, R0, opt);
  int checked = 0;
  for (std::size_t k = 0; k + 1 < nr.residuals.size(); ++k) {
    const double r = nr.residuals[k], next = nr.residuals[k + 1];
    if (r < 1e-2 && next > 1e-12) {
      EXPECT_LE(next, 10 * r * r) << k;
      ++checked;
    }
  }
  EXPECT_GE(checked, 1);
}

TEST(Mots, ScaleCovariance) {
  auto g = make_grid(16, 32);
  auto pb = make_constant_problem(g, 1.0);
  pb.M0 = sample(g, [](double t, double p) { return 1 + 0.05 * std::sin(t) * std::cos(p) + 0.03 * std::cos(t); });
  const auto s1 = solve_slice(pb, SolverOptions{});
  const double s = 3.7e-9;
  auto pb2 = pb;
  pb2.M0 *= s;
  pb2.M_ref *= s;
  const auto s2 = solve_slice(pb2, SolverOptions{});
  for (std::size_t q = 0; q < g->size(); ++q) EXPECT_NEAR(s2.R[q] / (s * s1.R[q]), 1.0, 1e-12);
}

TEST(Mots, GridConvergence) {
  PerturbationOptions none;
  none.beta = 0.0;
  const double ub = window_ubar(0.5);
  auto solve = [&](int n) {
    auto g = make_grid(n, 2 * n);
    return solve_slice(make_problem(regime(), shear(), g, ub, none), SolverOptions{}).R;
  };
  const auto fine = solve(48);
  const double S = 0.5 * shear().mass_reference(ub);
  const double e8 = max_abs(prolong(solve(8), fine.grid()) - fine) / S;
  const double e16 = max_abs(prolong(solve(16), fine.grid()) - fine) / S;
  // both may sit at the Newton tolerance floor
  EXPECT_LE(e16, e8 + 1e-10);
  EXPECT_LT(e16, 1e-8);
}

TEST(Mots, FailsLoudly) {
  auto g = make_grid(8, 16);
  const auto pb = make_problem(regime(), shear(), g, window_ubar(0.5), PerturbationOptions{});
  SolverOptions opt;
  opt.max_newton = 0;
  EXPECT_THROW(solve_slice(pb, opt), NonConvergence);
  EXPECT_THROW(residual_H(pb, SphereField(g, -1.0)), PositivityError);
  EXPECT_THROW(residual_FG(pb, SphereField(g, 1.0), 1.5, Family::G), DomainError);
  PerturbationOptions bad;
  bad.beta = 2.0;
  EXPECT_THROW(make_problem(regime(), shear(), g, window_ubar(0.5), bad), ConfigError);
}

TEST(Mots, PerturbationNormIsBetaB14) {
  auto g = make_grid(16, 32);
  for (double beta : {1.0, 0.25}) {
    PerturbationOptions o;
    o.beta = beta;
    const auto pb = make_problem(regime(), shear(), g, window_ubar(0.4), o);
    double n1 = 0, n2 = 0, n3 = 0;
    for (std::size_t q = 0; q < g->size(); ++q) {
      n1 = std::max(n1, std::hypot(pb.c1[0][q], pb.c1[1][q]));
      n2 = std::max(n2, std::sqrt(pb.c2[0][q] * pb.c2[0][q] + 2 * pb.c2[1][q] * pb.c2[1][q] +
                                  pb.c2[2][q] * pb.c2[2][q]));
      n3 = std::max(n3, std::abs(pb.c3[q]));
    }
    EXPECT_NEAR(std::max({n1, n2, n3}) / (beta * pb.bg.b14), 1.0, 1e-12);
  }
}

TEST(Mots, ContainerRoundTrip) {
  auto g = make_grid(12, 24);
  const auto pb = make_problem(regime(), shear(), g, window_ubar(0.5), PerturbationOptions{});
  const auto sol = solve_slice(pb, SolverOptions{});
  const auto path = std::filesystem::temp_directory_path() / "motslab_solution_roundtrip.mlb";
  write_container(to_container(sol), path.string());
  const auto back = solution_from_container(read_container(path.string()));
  std::filesystem::remove(path);
  EXPECT_EQ(back.R.values(), sol.R.values());
  EXPECT_EQ(back.ubar, sol.ubar);
  EXPECT_EQ(back.newton_trace, sol.newton_trace);
}
