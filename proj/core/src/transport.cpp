#include "motslab/transport.hpp"

#include <cmath>

#include "motslab/errors.hpp"

namespace motslab {

namespace {

// d trchi / d ubar = -1/2 trchi^2 - |chi0|^2, Omega = 1, omega = 0
struct Rk4Run {
  std::vector<std::vector<double>> rows;
  std::vector<double> ubar;
};

Rk4Run run_rk4(const ShearSource& shear, const SphereGrid& g, int steps, double span, int store_every) {
  const std::size_t n = g.size();
  std::vector<double> th(n), ph(n);
  for (std::size_t q = 0; q < n; ++q) {
    th[q] = g.theta_at(q);
    ph[q] = g.phi_at(q);
  }
  std::vector<double> y(n, 2.0);
  Rk4Run out;
  out.rows.push_back(y);
  out.ubar.push_back(0.0);
  const double h = span / steps;
  const double blowup = 1e12;
  for (int s = 0; s < steps; ++s) {
    const double u = s * h;
    for (std::size_t q = 0; q < n; ++q) {
      auto rhs = [&](double uu, double v) { return -0.5 * v * v - shear.amp2(uu, th[q], ph[q]); };
      const double v = y[q];
      const double k1 = rhs(u, v);
      const double k2 = rhs(u + 0.5 * h, v + 0.5 * h * k1);
      const double k3 = rhs(u + 0.5 * h, v + 0.5 * h * k2);
      const double k4 = rhs(u + h, v + h * k3);
      y[q] = v + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
      if (!std::isfinite(y[q]) || y[q] < -blowup)
        throw FocusingError("integrate_data_cone: trchi diverges near ubar = " + std::to_string(u + h), u + h);
    }
    if ((s + 1) % store_every == 0 || s + 1 == steps) {
      out.rows.push_back(y);
      out.ubar.push_back(s + 1 == steps ? span : (s + 1) * h);
    }
  }
  return out;
}

}  // namespace

ConeState integrate_data_cone(const ShearSource& shear, const GridPtr& grid, const ConeOptions& opt,
                              double delta) {
  if (opt.steps < 1 || opt.store_every < 1) throw ConfigError("integrate_data_cone: steps must be positive");
  const double span = opt.span > 0.0 ? opt.span : 2.0 * delta;
  auto run = run_rk4(shear, *grid, opt.steps, span, opt.store_every);
  ConeState st;
  st.grid = grid;
  st.ubar = run.ubar;
  for (auto& r : run.rows) st.trchi.emplace_back(grid, std::move(r));
  if (opt.estimate_error) {
    auto fine = run_rk4(shear, *grid, 2 * opt.steps, span, 2 * opt.steps);
    const auto& a = st.trchi.back().values();
    const auto& b = fine.rows.back();
    double e = 0.0;
    for (std::size_t q = 0; q < a.size(); ++q) e = std::max(e, std::abs(a[q] - b[q]));
    st.error_estimate = e / 15.0;
  }
  return st;
}

ModelTrchi model_trchi(const SlabModel& slab, double u, double ubar) {
  const auto& d = slab.regime.derived;
  const double umin = d.delta * std::sqrt(slab.regime.params.a) * d.b;
  const double tol = 1e-12;
  if (u < umin * (1 - tol) || u > 1.0 * (1 + tol) || ubar < 0.0 || ubar > d.delta * (1 + tol))
    throw DomainError("model_trchi: (u, ubar) outside the slab");
  ModelTrchi m{SphereField(slab.grid), 0.0};
  for (std::size_t q = 0; q < slab.grid->size(); ++q) {
    const double I = slab.shear->cumulative(ubar, slab.grid->theta_at(q), slab.grid->phi_at(q));
    m.leading[q] = 2.0 / std::abs(u) - I / (u * u);
  }
  m.envelope = slab.envelope_multiplier * ubar * std::sqrt(slab.regime.params.a) * std::pow(d.b, 0.25) / (u * u);
  return m;
}

std::string to_string(TrapStatus s) {
  switch (s) {
    case TrapStatus::CertifiedTrapped: return "certified-trapped";
    case TrapStatus::NominallyTrapped: return "nominally-trapped";
    case TrapStatus::Untrapped: return "untrapped";
    case TrapStatus::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

TrapStatus detect_trapped(const SlabModel& slab, double u, double ubar) {
  const auto m = model_trchi(slab, u, ubar);
  const double hi = m.leading.max(), lo = m.leading.min();
  if (hi + m.envelope < 0.0) return TrapStatus::CertifiedTrapped;
  if (lo - m.envelope > 0.0) return TrapStatus::Untrapped;
  if (hi < 0.0) return TrapStatus::NominallyTrapped;
  return TrapStatus::Indeterminate;
}

}  // namespace motslab
