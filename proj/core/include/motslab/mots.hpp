#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "motslab/checks.hpp"
#include "motslab/container.hpp"
#include "motslab/regime.hpp"
#include "motslab/shear.hpp"
#include "motslab/sphere.hpp"

namespace motslab {

struct PerturbationOptions {
  double beta = 1.0;
  std::uint64_t seed = 20240521;
  double envelope_multiplier = 1.0;
};

// Slab background perturbations (unit-normalized shapes, already scaled so the
// matched coefficients reach frame norm beta b^{1/4}).
struct Background {
  SphereField eta1, eta2, omegab, trchib, lapse, trchi;
  double b14 = 0.0;
  double envelope_multiplier = 1.0;
};

struct MotsProblem {
  GridPtr grid;
  double ubar = 0.0;
  SphereField M0;
  double M_ref = 0.0;  // constant effective mass used by the continuity families
  std::array<SphereField, 2> c1;  // frame components
  std::array<SphereField, 3> c2;  // xx, xy, yy
  SphereField c3;
  double pert_scale = 0.0;  // ubar a^{1/2}
  Background bg;
};

MotsProblem make_problem(const Regime& regime, const ShearModel& shear, const GridPtr& grid, double ubar,
                         const PerturbationOptions& opt);
MotsProblem make_problem(const Regime& regime, const ShearSource& shear, double M_ref, const GridPtr& grid,
                         double ubar, const PerturbationOptions& opt);
MotsProblem make_constant_problem(const GridPtr& grid, double M);

enum class Family { F, G, H };

SphereField residual_H(const MotsProblem& pb, const SphereField& R);
SphereField residual_FG(const MotsProblem& pb, const SphereField& R, double lambda, Family which);

struct SolverOptions {
  double newton_tol = 1e-10;  // on the nondimensional residual norm
  double linear_tol = 1e-10;
  int max_newton = 50;
  int gmres_restart = 40;
  int gmres_max = 400;
  double dlambda_init = 0.1;
  double dlambda_min = 1e-4;
  Family family = Family::G;
};

struct NewtonResult {
  SphereField R;
  bool converged = false;
  int iterations = 0;
  std::vector<double> residuals;  // nondimensional norm per iterate
};

// Newton on one member of a family from an initial guess (dimensional)
NewtonResult newton_solve(const MotsProblem& pb, Family which, double lambda, const SphereField& R0,
                          const SolverOptions& opt);

struct MotsDiagnostics {
  double r_min = 0, r_max = 0, grad_max = 0, hess_max = 0;
};

struct MotsSolution {
  double ubar = 0.0;
  SphereField R;
  double residual_norm = 0.0;  // nondimensional: S * rms(H), S = M_ref / 2
  std::vector<int> newton_trace;
  std::vector<double> lambda_path;
  std::vector<double> final_residuals;
  MotsDiagnostics diagnostics;
};

double residual_norm(const MotsProblem& pb, const SphereField& res_dimensional);
MotsDiagnostics diagnose(const SphereField& R);
MotsSolution solve_slice(const MotsProblem& pb, const SolverOptions& opt);

struct AprioriThresholds {
  double c1_threshold = 0.1;
  double c2_fraction = 0.1;
  double w12_fraction = 0.05;
};

CheckList verify_apriori(const MotsSolution& sol, const MotsProblem& pb, const Regime& regime,
                         const AprioriThresholds& th = {});

// max over nodes of |R_i - R_ref| / S for solves from randomized band guesses
struct UniquenessProbe {
  double max_deviation = 0.0;
  int converged = 0;
  int attempts = 0;
};
UniquenessProbe uniqueness_probe(const MotsProblem& pb, const MotsSolution& sol, const Regime& regime, int n,
                                 std::uint64_t seed, const SolverOptions& opt);

Container to_container(const MotsSolution& s);
MotsSolution solution_from_container(const Container& c);

// deterministic smooth random field of degree <= lmax, max |value| = 1
SphereField random_smooth_field(const GridPtr& grid, int lmax, std::uint64_t seed);

std::string to_string(Family f);

}  // namespace motslab
