#include "motslab/horizon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "motslab/errors.hpp"

namespace motslab {

std::vector<double> slice_grid(const Regime& regime, const SliceLayout& L) {
  if (L.n_window < 2 || L.n_transition < 1 || L.n_tail < 1) throw ConfigError("slice layout needs n_window >= 2 and at least one transition and tail slice");
  const auto& d = regime.derived;
  std::vector<double> u;
  for (int k = 0; k < L.n_window; ++k)
    u.push_back(k == L.n_window - 1 ? d.ubar_lambda
                                    : d.ubar_gamma + (d.ubar_lambda - d.ubar_gamma) * k / (L.n_window - 1));
  for (int k = 1; k <= L.n_transition; ++k)
    u.push_back(k == L.n_transition ? d.ubar_lambda_hi
                                    : d.ubar_lambda + (d.ubar_lambda_hi - d.ubar_lambda) * k / L.n_transition);
  for (int k = 1; k <= L.n_tail; ++k)
    u.push_back(k == L.n_tail ? d.ubar_end : d.ubar_lambda_hi + (d.ubar_end - d.ubar_lambda_hi) * k / L.n_tail);
  return u;
}

std::vector<SphereField> ubar_derivative(const std::vector<double>& u, const std::vector<SphereField>& R) {
  const std::size_t n = u.size();
  if (n < 3) throw ResolutionError("ubar_derivative: need at least three slices");
  std::vector<SphereField> out;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t c = std::clamp<std::size_t>(k, 1, n - 2);
    const double x0 = u[c - 1], x1 = u[c], x2 = u[c + 1], x = u[k];
    // derivative of the quadratic through the three points, at x
    const double w0 = ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2));
    const double w1 = ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2));
    const double w2 = ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
    SphereField d(R[k].grid());
    for (std::size_t q = 0; q < d.size(); ++q) d[q] = w0 * R[c - 1][q] + w1 * R[c][q] + w2 * R[c + 1][q];
    out.push_back(std::move(d));
  }
  return out;
}

HorizonAssembly assemble_from(const Regime& regime, const ShearModel& shear, std::vector<MotsSolution> slices,
                              bool disc_hypothesis) {
  (void)regime;
  HorizonAssembly h;
  for (std::size_t k = 0; k < slices.size(); ++k) {
    if (k > 0 && !(slices[k].ubar > slices[k - 1].ubar)) throw ConfigError("assemble: slices must be strictly ordered in ubar");
    h.ubar.push_back(slices[k].ubar);
  }
  h.slices = std::move(slices);
  std::vector<SphereField> Rs;
  for (const auto& s : h.slices) {
    const GridPtr& g = s.R.grid();
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t q = 0; q < g->size(); ++q) {
      const double m = shear.cumulative(s.ubar, g->theta_at(q), g->phi_at(q));
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    h.M0_min.push_back(lo);
    h.M0_max.push_back(hi);
    h.M_ref.push_back(shear.mass_reference(s.ubar));
    Rs.push_back(s.R);
    if (disc_hypothesis) h.h_field.emplace_back(0.5 * shear.mass_reference_u(s.ubar));
    else h.h_field.emplace_back(std::nullopt);
  }
  h.dR_dubar = ubar_derivative(h.ubar, Rs);
  return h;
}

HorizonAssembly assemble(const Regime& regime, const ShearModel& shear, const GridPtr& grid,
                         const std::vector<double>& ubars, const PerturbationOptions& pert,
                         const SolverOptions& solver, bool disc_hypothesis) {
  std::vector<MotsSolution> sols;
  for (std::size_t k = 0; k < ubars.size(); ++k) {
    try {
      const auto pb = make_problem(regime, shear, grid, ubars[k], pert);
      sols.push_back(solve_slice(pb, solver));
    } catch (const Error& e) {
      throw AssemblyError("assemble: slice " + std::to_string(k) + " (ubar = " + std::to_string(ubars[k]) +
                              ") failed: " + e.what(),
                          static_cast<int>(k));
    }
  }
  return assemble_from(regime, shear, std::move(sols), disc_hypothesis);
}

AreaReport area(const SphereField& R, double f0) {
  AreaReport a;
  std::vector<double> r2(R.size());
  for (std::size_t q = 0; q < r2.size(); ++q) r2[q] = R[q] * R[q];
  a.area = R.grid()->integrate_unit(r2);
  a.area_lo = (1.0 - 1.0 / f0) * a.area;
  a.area_hi = (1.0 + 1.0 / f0) * a.area;
  const double k = 16.0 * std::numbers::pi;
  a.radius_proxy = std::sqrt(a.area / k);
  a.proxy_lo = std::sqrt(a.area_lo / k);
  a.proxy_hi = std::sqrt(a.area_hi / k);
  return a;
}

AreaReport area(const HorizonAssembly& h, std::size_t slice, double f0) { return area(h.slices.at(slice).R, f0); }

SpacelikeResult spacelike_check(const SphereField& R, std::optional<double> h, double o1, int samples,
                                std::uint64_t seed) {
  SpacelikeResult res;
  if (!h) {
    res.reason = "disc hypothesis disabled";
    return res;
  }
  const double hh = *h * (1.0 - o1);
  if (!(hh > 0.0)) {
    res.reason = "degenerate transverse direction (h <= 0)";
    return res;
  }
  const auto& g = *R.grid();
  const auto d = g.derivatives(R.values());
  std::mt19937_64 rng(seed);
  auto unif = [&] { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; };
  std::vector<std::array<double, 3>> dirs;
  for (int s = 0; s < samples; ++s) dirs.push_back({unif(), unif(), unif()});
  double vmin = INFINITY;
  for (std::size_t q = 0; q < g.size(); ++q) {
    const double th = g.theta_at(q), s = std::sin(th);
    const double g11 = R[q] * R[q], g22 = g11 * s * s;
    const double d1 = d.d_theta[q], d2 = d.d_phi[q] * s;  // coordinate derivatives
    auto form = [&](double l1, double l2, double l3) {
      const double v = l1 * l1 * g11 + l2 * l2 * g22 + 4 * l1 * l3 * d1 + 4 * l2 * l3 * d2 + l3 * l3 * hh;
      return v / (l1 * l1 + l2 * l2 + l3 * l3);
    };
    // minimizer over the tangential components at unit transverse component
    vmin = std::min(vmin, form(-2 * d1 / g11, -2 * d2 / g22, 1.0));
    for (const auto& v : dirs) vmin = std::min(vmin, form(v[0] * R[q], v[1] * R[q] * s, v[2]));
  }
  res.min_value = vmin;
  if (vmin > 0.0) {
    res.status = Spacelike::Spacelike;
    res.reason = "positive on all sampled directions";
  } else {
    res.reason = "form not positive on a sampled direction";
  }
  return res;
}

SpacelikeResult spacelike_check(const HorizonAssembly& h, std::size_t slice, double o1, int samples,
                                std::uint64_t seed) {
  return spacelike_check(h.slices.at(slice).R, h.h_field.at(slice), o1, samples, seed);
}

nlohmann::json horizon_report(const HorizonAssembly& h, const Regime& regime, int samples, std::uint64_t seed) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t k = 0; k < h.slices.size(); ++k) {
    const auto& s = h.slices[k];
    const auto a = area(h, k, regime.params.f0);
    const auto sp = spacelike_check(h, k, regime.params.o1, samples, seed + k);
    const auto& dr = h.dR_dubar[k];
    double mean = 0.0;
    for (double v : dr.values()) mean += v;
    mean /= static_cast<double>(dr.size());
    nlohmann::json e = {
        {"ubar", s.ubar},
        {"ubar_over_delta", s.ubar / regime.derived.delta},
        {"R_min", s.diagnostics.r_min},
        {"R_max", s.diagnostics.r_max},
        {"M0_min", h.M0_min[k]},
        {"M0_max", h.M0_max[k]},
        {"M_ref", h.M_ref[k]},
        {"area", {{"lo", a.area_lo}, {"center", a.area}, {"hi", a.area_hi}}},
        {"radius_proxy", {{"lo", a.proxy_lo}, {"center", a.radius_proxy}, {"hi", a.proxy_hi}}},
        {"dR_dubar", {{"min", dr.min()}, {"max", dr.max()}, {"mean", mean}}},
        {"spacelike", {{"status", sp.status == Spacelike::Spacelike ? "spacelike" : "not-certified"},
                       {"reason", sp.reason}, {"min_form", sp.min_value}}},
        {"residual_norm", s.residual_norm},
        {"newton_trace", s.newton_trace}};
    if (h.h_field[k]) e["h"] = *h.h_field[k];
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace motslab
