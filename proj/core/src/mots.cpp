#include "motslab/mots.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "motslab/dual.hpp"
#include "motslab/errors.hpp"
#include "motslab/gmres.hpp"

namespace motslab {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// per-node data in units where S = M_ref / 2 = 1
struct Node {
  double M0, Mbar, s;
  double c1x, c1y, cxx, cxy, cyy, c3;
  double eta1, eta2, omb, trb, lapse, trchi, b14, env;
};

std::vector<Node> scaled_nodes(const MotsProblem& pb) {
  const double S = 0.5 * pb.M_ref;
  std::vector<Node> nd(pb.grid->size());
  const bool has_bg = pb.bg.eta1.size() == pb.grid->size();
  for (std::size_t q = 0; q < nd.size(); ++q) {
    Node& n = nd[q];
    n.M0 = pb.M0[q] / S;
    n.Mbar = pb.M_ref / S;
    n.s = pb.pert_scale / S;
    n.c1x = pb.c1[0][q];
    n.c1y = pb.c1[1][q];
    n.cxx = pb.c2[0][q];
    n.cxy = pb.c2[1][q];
    n.cyy = pb.c2[2][q];
    n.c3 = pb.c3[q];
    if (has_bg) {
      n.eta1 = pb.bg.eta1[q];
      n.eta2 = pb.bg.eta2[q];
      n.omb = pb.bg.omegab[q];
      n.trb = pb.bg.trchib[q];
      n.lapse = pb.bg.lapse[q];
      n.trchi = pb.bg.trchi[q];
    } else {
      n.eta1 = n.eta2 = n.omb = n.trb = n.lapse = n.trchi = 0.0;
    }
    n.b14 = pb.bg.b14;
    n.env = pb.bg.envelope_multiplier;
  }
  return nd;
}

template <class T>
T kernel(Family fam, double lambda, const Node& n, const T& r, const T& g1, const T& g2, const T& L) {
  const T r2 = r * r;
  const T gg = g1 * g1 + g2 * g2;
  if (fam == Family::H) {
    const T pert = (n.c1x * g1 + n.c1y * g2) / (r2 * r) +
                   (n.cxx * g1 * g1 + 2.0 * n.cxy * g1 * g2 + n.cyy * g2 * g2) / (r2 * r2) + n.c3 / r2;
    return L / r2 - gg / (r2 * r) - 1.0 / r + n.M0 / (2.0 * r2) + n.s * pert;
  }
  const T grad2 = gg / r2;
  const T Om = 1.0 + n.s * n.b14 * n.lapse / r;
  const T trb = -2.0 / r + n.s * n.trb / r2;
  const T common = L / r2 + 0.5 * Om * trb * grad2 - 1.0 / r;
  if (fam == Family::F) return common + (n.Mbar / (2.0 * r2)) * (1.0 + (n.M0 / n.Mbar - 1.0) * lambda);
  const T eta_dot = n.s * (n.eta1 * g1 + n.eta2 * g2) / (r2 * r);
  const T omb = n.s * n.omb / r2;
  const T trchi = 2.0 / r - n.M0 / r2 + n.env * n.s * n.b14 * n.trchi / r2;
  const T extra = 2.0 * eta_dot + 4.0 * Om * omb * grad2 - trchi / (2.0 * Om) + 1.0 / r - n.Mbar / (2.0 * r2);
  return common + n.Mbar / (2.0 * r2) + lambda * extra;
}

std::vector<double> residual_nd(const SphereGrid& g, const std::vector<Node>& nd, Family fam, double lambda,
                                const std::vector<double>& r) {
  const auto d = g.derivatives(r);
  std::vector<double> out(r.size());
  for (std::size_t q = 0; q < r.size(); ++q)
    out[q] = kernel<double>(fam, lambda, nd[q], r[q], d.d_theta[q], d.d_phi[q], d.lap[q]);
  return out;
}

double rms(const SphereGrid& g, const std::vector<double>& v) {
  std::vector<double> sq(v.size());
  for (std::size_t q = 0; q < v.size(); ++q) sq[q] = v[q] * v[q];
  return std::sqrt(g.integrate_unit(sq) / (4.0 * std::numbers::pi));
}

struct Coeffs {
  std::vector<double> a, b1, b2, k;
};

Coeffs linearize(const SphereGrid& g, const std::vector<Node>& nd, Family fam, double lambda,
                 const std::vector<double>& r) {
  using D = Dual<4>;
  const auto d = g.derivatives(r);
  Coeffs c;
  const std::size_t n = r.size();
  c.a.resize(n);
  c.b1.resize(n);
  c.b2.resize(n);
  c.k.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    const D v = kernel<D>(fam, lambda, nd[q], D::var(r[q], 0), D::var(d.d_theta[q], 1), D::var(d.d_phi[q], 2),
                          D::var(d.lap[q], 3));
    c.k[q] = v.d[0];
    c.b1[q] = v.d[1];
    c.b2[q] = v.d[2];
    c.a[q] = v.d[3];
  }
  return c;
}

bool positive(const std::vector<double>& r) {
  return std::all_of(r.begin(), r.end(), [](double x) { return x > 0.0 && std::isfinite(x); });
}

struct NdNewton {
  std::vector<double> r;
  bool converged = false;
  int iterations = 0;
  std::vector<double> residuals;
};

NdNewton newton_nd(const SphereGrid& g, const std::vector<Node>& nd, Family fam, double lambda,
                   std::vector<double> r, const SolverOptions& opt) {
  NdNewton out;
  const std::size_t n = r.size();
  std::vector<double> w(n);
  for (std::size_t q = 0; q < n; ++q) w[q] = g.weight(q);
  if (!positive(r)) {
    out.r = std::move(r);
    return out;
  }
  auto F = residual_nd(g, nd, fam, lambda, r);
  double norm = rms(g, F);
  out.residuals.push_back(norm);
  while (true) {
    if (norm <= opt.newton_tol) {
      out.converged = true;
      break;
    }
    if (out.iterations >= opt.max_newton || !std::isfinite(norm)) break;
    const Coeffs c = linearize(g, nd, fam, lambda, r);
    double abar = 0.0, kbar = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
      abar += w[q] * c.a[q];
      kbar += w[q] * c.k[q];
    }
    abar /= 4.0 * std::numbers::pi;
    kbar /= 4.0 * std::numbers::pi;
    if (!(abar > 0.0)) abar = 1.0;
    kbar = std::min(kbar, -0.5 * abar);

    LinearOp J = [&](const std::vector<double>& v) {
      const auto d = g.derivatives(v);
      std::vector<double> o(n);
      for (std::size_t q = 0; q < n; ++q)
        o[q] = c.a[q] * d.lap[q] + c.b1[q] * d.d_theta[q] + c.b2[q] * d.d_phi[q] + c.k[q] * v[q];
      return o;
    };
    LinearOp P = [&](const std::vector<double>& v) {
      auto coef = g.analyze(v);
      const auto proj = g.synthesize(coef);
      for (int m = 0; m <= g.mmax(); ++m)
        for (int l = m; l <= g.lmax(); ++l) {
          const std::size_t i = g.index(l, m);
          const double den = -abar * l * (l + 1.0) + kbar;
          coef[i] /= den;
          coef[i + 1] /= den;
        }
      auto o = g.synthesize(coef);
      for (std::size_t q = 0; q < n; ++q) o[q] += (v[q] - proj[q]) / kbar;
      return o;
    };
    std::vector<double> rhs(n);
    for (std::size_t q = 0; q < n; ++q) rhs[q] = -F[q];
    const auto lin = gmres(J, P, rhs, w, opt.linear_tol, opt.gmres_restart, opt.gmres_max);
    if (!lin.converged && lin.relative_residual > 1e-3) break;

    double alpha = 1.0;
    bool accepted = false;
    std::vector<double> trial(n), Ft;
    double tnorm = 0.0;
    for (int ls = 0; ls < 12; ++ls) {
      for (std::size_t q = 0; q < n; ++q) trial[q] = r[q] + alpha * lin.x[q];
      if (positive(trial)) {
        Ft = residual_nd(g, nd, fam, lambda, trial);
        tnorm = rms(g, Ft);
        if (std::isfinite(tnorm) && tnorm <= (1.0 - 1e-4 * alpha) * norm) {
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    ++out.iterations;
    if (!accepted) break;
    r = trial;
    F = std::move(Ft);
    norm = tnorm;
    out.residuals.push_back(norm);
  }
  out.r = std::move(r);
  return out;
}

void check_positive(const SphereField& R) {
  for (double v : R.values())
    if (!(v > 0.0)) throw PositivityError("MOTS radius must be positive at every node");
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::F: return "F";
    case Family::G: return "G";
    case Family::H: return "H";
  }
  return "?";
}

SphereField random_smooth_field(const GridPtr& grid, int lmax, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> c(grid->n_coeffs(), 0.0);
  lmax = std::min(lmax, grid->lmax());
  for (int l = 0; l <= lmax; ++l)
    for (int m = 0; m <= std::min(l, grid->mmax()); ++m) {
      const std::size_t i = grid->index(l, m);
      c[i] = 2.0 * uniform01(rng) - 1.0;
      c[i + 1] = m > 0 ? 2.0 * uniform01(rng) - 1.0 : 0.0;
    }
  SphereField f(grid, grid->synthesize(c));
  double mx = 0.0;
  for (double v : f.values()) mx = std::max(mx, std::abs(v));
  if (mx > 0.0) f *= 1.0 / mx;
  return f;
}

MotsProblem make_constant_problem(const GridPtr& grid, double M) {
  MotsProblem pb;
  pb.grid = grid;
  pb.M0 = SphereField(grid, M);
  pb.M_ref = M;
  pb.c1 = {SphereField(grid), SphereField(grid)};
  pb.c2 = {SphereField(grid), SphereField(grid), SphereField(grid)};
  pb.c3 = SphereField(grid);
  pb.bg = Background{SphereField(grid), SphereField(grid), SphereField(grid), SphereField(grid),
                     SphereField(grid), SphereField(grid), 0.0, 1.0};
  return pb;
}

MotsProblem make_problem(const Regime& regime, const ShearModel& shear, const GridPtr& grid, double ubar,
                         const PerturbationOptions& opt) {
  return make_problem(regime, shear, shear.mass_reference(ubar), grid, ubar, opt);
}

MotsProblem make_problem(const Regime& regime, const ShearSource& shear, double M_ref, const GridPtr& grid,
                         double ubar, const PerturbationOptions& opt) {
  if (!(opt.beta >= 0.0 && opt.beta <= 1.0)) throw ConfigError("perturbation beta must lie in [0,1]");
  MotsProblem pb = make_constant_problem(grid, M_ref);
  pb.ubar = ubar;
  for (std::size_t q = 0; q < grid->size(); ++q) pb.M0[q] = shear.cumulative(ubar, grid->theta_at(q), grid->phi_at(q));
  if (!(pb.M0.min() > 0.0)) throw PositivityError("effective mass must be positive on the slice");
  pb.pert_scale = ubar * std::sqrt(regime.params.a);
  const double b14 = std::pow(regime.derived.b, 0.25);
  pb.bg.b14 = b14;
  pb.bg.envelope_multiplier = opt.envelope_multiplier;

  const std::uint64_t base = mix(opt.seed, std::bit_cast<std::uint64_t>(ubar / regime.derived.delta));
  const int deg = 3;
  Background& bg = pb.bg;
  bg.eta1 = random_smooth_field(grid, deg, mix(base, 1));
  bg.eta2 = random_smooth_field(grid, deg, mix(base, 2));
  double vmax = 0.0;
  for (std::size_t q = 0; q < grid->size(); ++q) vmax = std::max(vmax, std::hypot(bg.eta1[q], bg.eta2[q]));
  bg.eta1 *= 1.0 / vmax;
  bg.eta2 *= 1.0 / vmax;
  bg.omegab = random_smooth_field(grid, deg, mix(base, 3));
  bg.trchib = random_smooth_field(grid, deg, mix(base, 4));
  bg.lapse = random_smooth_field(grid, deg, mix(base, 5));
  bg.trchi = random_smooth_field(grid, deg, mix(base, 6));

  // coefficients of the expanded G(., 1) frozen at R = M_ref / 2
  auto matched = [&](double scale) {
    for (std::size_t q = 0; q < grid->size(); ++q) {
      pb.c1[0][q] = scale * 2.0 * bg.eta1[q];
      pb.c1[1][q] = scale * 2.0 * bg.eta2[q];
      const double iso = scale * (0.5 * bg.trchib[q] - b14 * bg.lapse[q] + 4.0 * bg.omegab[q]);
      pb.c2[0][q] = iso;
      pb.c2[1][q] = 0.0;
      pb.c2[2][q] = iso;
      pb.c3[q] = scale * b14 *
                 (-0.5 * opt.envelope_multiplier * bg.trchi[q] + bg.lapse[q] * (1.0 - pb.M0[q] / M_ref));
    }
  };
  matched(1.0);
  double n1 = 0, n2 = 0, n3 = 0;
  for (std::size_t q = 0; q < grid->size(); ++q) {
    n1 = std::max(n1, std::hypot(pb.c1[0][q], pb.c1[1][q]));
    n2 = std::max(n2, std::sqrt(pb.c2[0][q] * pb.c2[0][q] + 2 * pb.c2[1][q] * pb.c2[1][q] + pb.c2[2][q] * pb.c2[2][q]));
    n3 = std::max(n3, std::abs(pb.c3[q]));
  }
  const double scale = opt.beta * b14 / std::max({n1, n2, n3});
  for (SphereField* f : {&bg.eta1, &bg.eta2, &bg.omegab, &bg.trchib, &bg.lapse, &bg.trchi}) *f *= scale;
  matched(1.0);
  return pb;
}

SphereField residual_H(const MotsProblem& pb, const SphereField& R) {
  check_positive(R);
  const double S = 0.5 * pb.M_ref;
  const auto nd = scaled_nodes(pb);
  std::vector<double> r(R.values());
  for (double& x : r) x /= S;
  auto out = residual_nd(*pb.grid, nd, Family::H, 1.0, r);
  for (double& x : out) x /= S;
  return SphereField(pb.grid, std::move(out));
}

SphereField residual_FG(const MotsProblem& pb, const SphereField& R, double lambda, Family which) {
  if (which == Family::H) throw ConfigError("residual_FG: family must be F or G");
  if (lambda < 0.0 || lambda > 1.0) throw DomainError("residual_FG: lambda outside [0,1]");
  check_positive(R);
  const double S = 0.5 * pb.M_ref;
  const auto nd = scaled_nodes(pb);
  std::vector<double> r(R.values());
  for (double& x : r) x /= S;
  auto out = residual_nd(*pb.grid, nd, which, lambda, r);
  for (double& x : out) x /= S;
  return SphereField(pb.grid, std::move(out));
}

double residual_norm(const MotsProblem& pb, const SphereField& res) {
  const double S = 0.5 * pb.M_ref;
  return S * rms(*pb.grid, res.values());
}

NewtonResult newton_solve(const MotsProblem& pb, Family which, double lambda, const SphereField& R0,
                          const SolverOptions& opt) {
  const double S = 0.5 * pb.M_ref;
  const auto nd = scaled_nodes(pb);
  std::vector<double> r(R0.values());
  for (double& x : r) x /= S;
  auto res = newton_nd(*pb.grid, nd, which, lambda, std::move(r), opt);
  for (double& x : res.r) x *= S;
  return NewtonResult{SphereField(pb.grid, std::move(res.r)), res.converged, res.iterations, res.residuals};
}

MotsDiagnostics diagnose(const SphereField& R) {
  const auto d = R.grid()->derivatives(R.values(), true);
  MotsDiagnostics out;
  out.r_min = R.min();
  out.r_max = R.max();
  for (std::size_t q = 0; q < R.size(); ++q) {
    out.grad_max = std::max(out.grad_max, std::hypot(d.d_theta[q], d.d_phi[q]) / R[q]);
    out.hess_max = std::max({out.hess_max, std::abs(d.h_tt[q]), std::abs(d.h_tp[q]), std::abs(d.h_pp[q])});
  }
  return out;
}

MotsSolution solve_slice(const MotsProblem& pb, const SolverOptions& opt) {
  const double S = 0.5 * pb.M_ref;
  if (!(S > 0.0)) throw PositivityError("solve_slice: reference mass must be positive");
  const auto nd = scaled_nodes(pb);
  const SphereGrid& g = *pb.grid;
  std::vector<double> r(g.size(), 1.0);
  MotsSolution sol;
  sol.ubar = pb.ubar;
  sol.lambda_path.push_back(0.0);
  sol.newton_trace.push_back(0);
  if (opt.family != Family::H) {
    double lambda = 0.0, dl = opt.dlambda_init;
    int streak = 0;
    while (lambda < 1.0) {
      const double target = std::min(1.0, lambda + dl);
      auto step = newton_nd(g, nd, opt.family, target, r, opt);
      if (step.converged) {
        r = std::move(step.r);
        lambda = target;
        sol.lambda_path.push_back(lambda);
        sol.newton_trace.push_back(step.iterations);
        if (++streak >= 2) {
          dl *= 2.0;
          streak = 0;
        }
      } else {
        dl *= 0.5;
        streak = 0;
        if (dl < opt.dlambda_min)
          throw NonConvergence("solve_slice: continuation stalled at lambda = " + std::to_string(lambda) +
                               " for ubar = " + std::to_string(pb.ubar));
      }
    }
  }
  auto fin = newton_nd(g, nd, Family::H, 1.0, r, opt);
  if (!fin.converged)
    throw NonConvergence("solve_slice: final Newton on H failed for ubar = " + std::to_string(pb.ubar) +
                         " (residual " + std::to_string(fin.residuals.back()) + ")");
  sol.newton_trace.push_back(fin.iterations);
  sol.final_residuals = fin.residuals;
  sol.residual_norm = fin.residuals.back();
  for (double& x : fin.r) x *= S;
  sol.R = SphereField(pb.grid, std::move(fin.r));
  sol.diagnostics = diagnose(sol.R);
  return sol;
}

CheckList verify_apriori(const MotsSolution& sol, const MotsProblem& pb, const Regime& regime,
                         const AprioriThresholds& th) {
  const auto& p = regime.params;
  CheckList rep;
  const double Mmin = pb.M0.min(), Mmax = pb.M0.max();
  const double lo = (1 - 1 / p.c1) * (1 - 1 / p.c2_zeta) * (0.5 - p.o1) * Mmin;
  const double hi = (1 + 1 / p.c1) * (1 + 1 / p.c2_zeta) * (0.5 + p.o1) * Mmax;
  const auto& dg = sol.diagnostics;
  const double c0 = std::max(lo / dg.r_min, dg.r_max / hi);
  rep.add("c0_band", c0, 1.0, dg.r_min >= lo && dg.r_max <= hi,
          "max(lower/min R, max R/upper); band [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");

  const auto d = pb.grid->derivatives(sol.R.values(), false);
  std::vector<double> gg(sol.R.size());
  for (std::size_t q = 0; q < gg.size(); ++q) gg[q] = d.d_theta[q] * d.d_theta[q] + d.d_phi[q] * d.d_phi[q];
  // integral of |grad R|^2 dA over the round radius-R sphere, per pi M_ref^2
  const double w12 = pb.grid->integrate_unit(gg) / (std::numbers::pi * pb.M_ref * pb.M_ref);
  rep.add("w12", w12 / th.w12_fraction, 1.0, w12 <= th.w12_fraction, "int |grad R|^2 dA / (pi Mbar^2) over its threshold");
  rep.add("c1", dg.grad_max / th.c1_threshold, 1.0, dg.grad_max <= th.c1_threshold, "max |grad R| over c1 threshold");
  const double c2lim = th.c2_fraction * pb.M_ref;
  rep.add("c2", dg.hess_max / c2lim, 1.0, dg.hess_max <= c2lim, "max |Hess R| over fraction of Mbar");

  double hmin = INFINITY, hmax = 0.0;
  for (double R : sol.R.values()) {
    const double dev = R - 0.5 * pb.M_ref;
    const double h = 1.0 + 8.0 * dev * dev / (pb.M_ref * pb.M_ref);
    hmin = std::min(hmin, h);
    hmax = std::max(hmax, h);
  }
  rep.add("weight_h", hmax - 1.0, 1.0, hmin >= 1.0 && std::isfinite(hmax), "max h(R) - 1; h >= 1 required");

  // zeroth-order coefficient of the linearized H against 64 / (81 Mbar^2)
  double numin = INFINITY;
  for (std::size_t q = 0; q < sol.R.size(); ++q) {
    const double R = sol.R[q];
    const double g2 = gg[q];
    const double nu = -(1.0 / (R * R) - pb.M0[q] / (R * R * R) - 2.0 * d.lap[q] / (R * R * R) + 3.0 * g2 / (R * R * R * R));
    numin = std::min(numin, nu);
  }
  const double nu_lim = 64.0 / (81.0 * pb.M_ref * pb.M_ref);
  rep.add("uniqueness_nu", nu_lim / numin, 1.0, numin >= nu_lim, "64/(81 Mbar^2) over min nu");
  return rep;
}

UniquenessProbe uniqueness_probe(const MotsProblem& pb, const MotsSolution& sol, const Regime& regime, int n,
                                 std::uint64_t seed, const SolverOptions& opt) {
  const auto& p = regime.params;
  const double lo = (1 - 1 / p.c1) * (1 - 1 / p.c2_zeta) * (0.5 - p.o1) * pb.M0.min();
  const double hi = (1 + 1 / p.c1) * (1 + 1 / p.c2_zeta) * (0.5 + p.o1) * pb.M0.max();
  const double center = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  const double S = 0.5 * pb.M_ref;
  UniquenessProbe out;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i) {
    const double amp = 0.6 * half * (2.0 * uniform01(rng) - 1.0);
    const double shift = 0.3 * half * (2.0 * uniform01(rng) - 1.0);
    auto e = random_smooth_field(pb.grid, 4, mix(seed, static_cast<std::uint64_t>(i) + 17));
    SphereField guess(pb.grid);
    for (std::size_t q = 0; q < guess.size(); ++q)
      guess[q] = center + shift + amp * e[q];
    ++out.attempts;
    auto r = newton_solve(pb, Family::H, 1.0, guess, opt);
    if (!r.converged) {
      out.max_deviation = INFINITY;
      continue;
    }
    ++out.converged;
    for (std::size_t q = 0; q < guess.size(); ++q)
      out.max_deviation = std::max(out.max_deviation, std::abs(r.R[q] - sol.R[q]) / S);
  }
  return out;
}

Container to_container(const MotsSolution& s) {
  Container c;
  c.header["kind"] = "mots_solution";
  c.header["ubar"] = s.ubar;
  c.header["residual_norm"] = s.residual_norm;
  c.header["newton_trace"] = s.newton_trace;
  c.header["lambda_path"] = s.lambda_path;
  c.header["final_residuals"] = s.final_residuals;
  c.header["diagnostics"] = {{"r_min", s.diagnostics.r_min}, {"r_max", s.diagnostics.r_max},
                             {"grad_max", s.diagnostics.grad_max}, {"hess_max", s.diagnostics.hess_max}};
  c.header["grid"] = {{"n_theta", s.R.grid()->n_theta()}, {"n_phi", s.R.grid()->n_phi()}};
  c.header["units"] = {{"R", "length"}};
  c.put("R", s.R.values(), {s.R.size()});
  return c;
}

MotsSolution solution_from_container(const Container& c) {
  if (c.header.value("kind", "") != "mots_solution") throw ShapeError("container does not hold a MOTS solution");
  MotsSolution s;
  auto grid = make_grid(c.header.at("grid").at("n_theta"), c.header.at("grid").at("n_phi"));
  s.ubar = c.header.at("ubar");
  s.residual_norm = c.header.at("residual_norm");
  s.newton_trace = c.header.at("newton_trace").get<std::vector<int>>();
  s.lambda_path = c.header.at("lambda_path").get<std::vector<double>>();
  s.final_residuals = c.header.at("final_residuals").get<std::vector<double>>();
  s.R = SphereField(grid, c.get("R"));
  const auto& d = c.header.at("diagnostics");
  s.diagnostics = {d.at("r_min"), d.at("r_max"), d.at("grad_max"), d.at("hess_max")};
  return s;
}

}  // namespace motslab
