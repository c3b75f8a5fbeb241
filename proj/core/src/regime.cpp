#include "motslab/regime.hpp"

#include <cmath>
#include <limits>

#include "motslab/errors.hpp"

namespace motslab {

double RegimeParameters::coupled_mu(double kappa, double y, double t) {
  return ((0.5 + t) * y - 0.5) / kappa;
}

RegimeParameters& RegimeParameters::couple() {
  mu = coupled_mu(kappa, y, t);
  penrose_coupling = true;
  return *this;
}

bool ValidationReport::ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const ConstraintCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<std::string> ValidationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.pass) out.push_back(c.name);
  return out;
}

namespace {

void require_finite(const RegimeParameters& p) {
  const double v[] = {p.a, p.kappa, p.mu, p.y, p.gamma, p.lambda_lo, p.lambda_hi, p.t,
                      p.c1, p.c2_zeta, p.c2_unknown_bound, p.o1, p.d0, p.f0, p.C_eps};
  for (double x : v)
    if (!std::isfinite(x)) throw MalformedParameters("regime: non-finite parameter");
  if (p.a <= 0.0) throw MalformedParameters("regime: a must be positive");
}

void add(ValidationReport& r, std::string name, std::string statement, double slack,
         bool strict = true) {
  ConstraintCheck c{std::move(name), std::move(statement), slack, strict, false};
  c.pass = strict ? slack > 0.0 : slack >= 0.0;
  r.checks.push_back(std::move(c));
}

}  // namespace

ValidationReport validate(const RegimeParameters& p) {
  require_finite(p);
  ValidationReport r;
  const double la = std::log10(p.a);
  add(r, "amplitude", "a > 1", la);
  add(r, "kappa_lower", "kappa > 1/2 (b > a^1/2)", p.kappa - 0.5);
  add(r, "kappa_upper", "kappa < 1", 1.0 - p.kappa);
  add(r, "mu_lower", "mu > 1", p.mu - 1.0);
  add(r, "y_positive", "y > 0", p.y);
  add(r, "exponent_balance", "kappa*mu - y + 1/2 < 0 (delta a^1/2 b^mu < 1)",
      -(p.kappa * p.mu - p.y + 0.5));
  // log10 of 1/(delta a^1/2 b)
  add(r, "slab_extent", "delta a^1/2 b < 1", (p.y - 0.5 - p.kappa) * la);
  add(r, "gamma_range", "0 < gamma < 1", std::min(p.gamma, 1.0 - p.gamma));
  const double gw = p.gamma * std::pow(p.a, 0.5 - p.kappa);
  add(r, "gamma_window", "gamma a^1/2 / b < lambda", p.lambda_lo - gw);
  add(r, "lambda_positive", "lambda > 0", p.lambda_lo);
  add(r, "lambda_order", "lambda < lambda'", p.lambda_hi - p.lambda_lo);
  add(r, "lambda_budget", "lambda' < 1 - o1", 1.0 - p.o1 - p.lambda_hi);
  add(r, "t_range", "0 < t < 1/2", std::min(p.t, 0.5 - p.t));
  add(r, "c1_min", "c1 >= 20", p.c1 - 20.0, false);
  add(r, "c2_min", "c2 >= 20", p.c2_zeta - 20.0, false);
  add(r, "o1_range", "0 <= o1 < 1", std::min(p.o1, 1.0 - p.o1 - 1e-300), false);
  add(r, "d0_positive", "d0 > 0", p.d0);
  add(r, "f0_large", "f0 > 1", p.f0 - 1.0);
  add(r, "C_nonnegative", "C >= 0", p.C_eps, false);
  add(r, "c2_bound_positive", "c2 bound > 0", p.c2_unknown_bound);
  if (p.penrose_coupling) {
    const double lhs = p.kappa * p.mu + 0.5;
    const double rhs = (0.5 + p.t) * p.y;
    const double tol = 8.0 * std::numeric_limits<double>::epsilon() *
                       std::max({std::abs(lhs), std::abs(rhs), 1.0});
    add(r, "penrose_coupling", "kappa*mu + 1/2 = (1/2 + t) y", tol - std::abs(lhs - rhs), false);
  }
  return r;
}

DerivedScalars derive(const RegimeParameters& p) {
  const auto rep = validate(p);
  if (!rep.ok()) {
    const auto* c = rep.find(rep.failures().front());
    throw ConstraintError("regime: constraint '" + c->name + "' violated (" + c->statement + ")");
  }
  DerivedScalars d;
  d.b = std::pow(p.a, p.kappa);
  d.delta = std::pow(p.a, -p.y);
  d.exp_amp = 0.5 + p.kappa * p.mu;
  d.exp_delta = -p.y;
  d.exp_m0 = d.exp_amp - p.y;
  d.exp_eps = 0.5 - 0.5 * p.y;
  d.exp_ubar_gamma = 0.5 - p.kappa - p.y;
  d.amp = std::pow(p.a, d.exp_amp);
  d.m0 = std::pow(p.a, d.exp_m0) * p.lambda_lo * (1.0 + p.o1) / 4.0;
  d.ubar_gamma = p.gamma * std::pow(p.a, d.exp_ubar_gamma);
  d.ubar_lambda = p.lambda_lo * d.delta;
  d.ubar_lambda_hi = p.lambda_hi * d.delta;
  d.ubar_end = 2.0 * d.delta;
  d.u_trapped = std::pow(p.a, p.kappa + 0.5 - p.y);
  d.eps_glue = p.C_eps * std::pow(p.a, d.exp_eps);
  return d;
}

Regime make_regime(const RegimeParameters& p) { return Regime{p, derive(p)}; }

}  // namespace motslab
