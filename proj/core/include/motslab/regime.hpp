#pragma once

#include <string>
#include <vector>

namespace motslab {

struct RegimeParameters {
  double a = 1e4;
  double kappa = 0.6;
  double mu = 12.5;
  double y = 10.0;
  double gamma = 0.1;
  double lambda_lo = 0.85;
  double lambda_hi = 0.88;
  double t = 0.3;
  double c1 = 20.0;
  double c2_zeta = 20.0;
  double c2_unknown_bound = 1.0;
  double o1 = 0.05;
  double d0 = 20.0;
  double f0 = 100.0;
  double C_eps = 1.0;
  bool penrose_coupling = true;

  // mu fixed by kappa*mu + 1/2 = (1/2 + t) y
  static double coupled_mu(double kappa, double y, double t);
  RegimeParameters& couple();
};

struct ConstraintCheck {
  std::string name;
  std::string statement;
  double slack = 0.0;
  bool strict = true;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ConstraintCheck> checks;
  bool ok() const;
  const ConstraintCheck* find(const std::string& name) const;
  std::vector<std::string> failures() const;
};

struct DerivedScalars {
  double b = 0, delta = 0, m0 = 0;
  double amp = 0;  // a^{1/2} b^mu
  double ubar_gamma = 0, ubar_lambda = 0, ubar_lambda_hi = 0, ubar_end = 0;
  double u_trapped = 0;
  double eps_glue = 0;
  // exponents of a (value = coefficient * a^exponent)
  double exp_amp = 0, exp_delta = 0, exp_m0 = 0, exp_eps = 0, exp_ubar_gamma = 0;
};

ValidationReport validate(const RegimeParameters& p);
DerivedScalars derive(const RegimeParameters& p);

struct Regime {
  RegimeParameters params;
  DerivedScalars derived;
};

Regime make_regime(const RegimeParameters& p);

}  // namespace motslab
