#include "motslab/shear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "motslab/errors.hpp"

namespace motslab {

namespace {

constexpr double kPi = std::numbers::pi;

double bump(double x) { return std::abs(x) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - x * x)) : 0.0; }
double bump_d(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  const double q = 1.0 - x * x;
  return bump(x) * (-2.0 * x / (q * q));
}

double edge(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double edge_d(double x) { return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }

// C-infinity step from 0 at x<=0 to 1 at x>=1
double step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double e0 = edge(x), e1 = edge(1.0 - x);
  return e0 / (e0 + e1);
}
double step_d(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double e0 = edge(x), e1 = edge(1.0 - x);
  const double s = e0 + e1;
  return (edge_d(x) * e1 + e0 * edge_d(1.0 - x)) / (s * s);
}

double smooth5(double x) { return x * x * x * (10.0 - 15.0 * x + 6.0 * x * x); }
double smooth5_d(double x) { return 30.0 * x * x * (1.0 - x) * (1.0 - x); }

double wrap(double d) {
  d = std::fmod(d + kPi, 2.0 * kPi);
  if (d < 0) d += 2.0 * kPi;
  return d - kPi;
}

double Yang(double th, double ph) { return (std::cos(th) + std::sin(th) * std::cos(ph)) / std::numbers::sqrt2; }
double Wang(double th) {
  const double c = std::cos(th);
  return 0.5 * (3.0 * c * c - 1.0);
}

}  // namespace

ShearModel::ShearModel(const Regime& regime, const ProfileSpec& spec) : regime_(regime), spec_(spec) {
  const auto& p = regime.params;
  const auto& d = regime.derived;
  if (p.c1 < 20.0) throw ConstraintError("shear: angular bound on f needs c1 >= 20");
  if (p.c2_zeta < 20.0) throw ConstraintError("shear: angular bound on zeta needs c2 >= 20");
  if (!(p.o1 > 0.0))
    throw ConstraintError("shear: dominant contribution needs 4 m0 above the window mass (o1 > 0)");
  if (!(spec.zero_width > 0.0 && spec.zero_width < 0.5))
    throw ConstraintError("shear: zero-locus bump width must lie in (0, 0.5)");
  A_ = d.amp;
  m4_ = 4.0 * d.m0;
  ug_ = d.ubar_gamma;
  ul_ = d.ubar_lambda;
  uh_ = d.ubar_lambda_hi;
  c1_ = p.c1;
  c2_ = p.c2_zeta;
  o1_ = p.o1;
  w_ = spec.zero_width;

  // monotone transition needs f ubar <= lambda delta (1 + o1) on [lambda delta, lambda' delta]
  double worst = 0.0;
  for (int k = 0; k <= 4000; ++k) {
    const double u = ul_ + (uh_ - ul_) * k / 4000.0;
    worst = std::max(worst, u * (1.0 + std::abs(std::sin(kPi * u / ul_)) / c1_));
  }
  if (worst > ul_ * (1.0 + o1_))
    throw ConstraintError("shear: monotone cut-off interval violated (lambda' too far above lambda for o1)");

  auto r = boost::math::tools::brent_find_minima([](double x) { return -bump_d(x); }, -0.999, 0.0, 52);
  xstar_ = r.first;
  bprime_max_ = bump_d(xstar_);
  theta_speed_ = 2.0 * o1_ / uh_;
  wt_ = w_ / theta_speed_;
  theta_start_ = kPi / 2.0 - o1_ - w_ * xstar_;
}

double ShearModel::f(double u, double th, double ph) const {
  return 1.0 + std::sin(kPi * u / ul_) * Yang(th, ph) / c1_;
}
double ShearModel::f_u(double u, double th, double ph) const {
  return (kPi / ul_) * std::cos(kPi * u / ul_) * Yang(th, ph) / c1_;
}

double ShearModel::zeta_mean(double u) const {
  if (spec_.zeta_step) return u < 0.5 * (ul_ + uh_) ? 1.0 : 0.0;
  if (u <= ul_) return 1.0;
  if (u >= uh_) return 0.0;
  return smooth5((uh_ - u) / (uh_ - ul_));
}
double ShearModel::zeta_mean_u(double u) const {
  if (spec_.zeta_step || u <= ul_ || u >= uh_) return 0.0;
  return -smooth5_d((uh_ - u) / (uh_ - ul_)) / (uh_ - ul_);
}

double ShearModel::zeta(double u, double th, double) const {
  const double s = zeta_mean(u);
  return s * (1.0 + 4.0 * s * (1.0 - s) * Wang(th) / c2_);
}
double ShearModel::zeta_u(double u, double th, double) const {
  const double s = zeta_mean(u);
  return zeta_mean_u(u) * (1.0 + (8.0 * s - 12.0 * s * s) * Wang(th) / c2_);
}

double ShearModel::base(double T, double th, double ph) const {
  if (T <= 0.0) return 0.0;
  if (T <= ul_) return A_ * f(T, th, ph) * T * step(T / ug_);
  const double z = zeta(T, th, ph);
  if (spec_.zeta_step ? z == 0.0 : T >= uh_) return m4_;
  return A_ * f(T, th, ph) * z * T + (1.0 - z) * m4_;
}

double ShearModel::base_rate(double T, double th, double ph) const {
  if (T <= 0.0) return 0.0;
  const double fv = f(T, th, ph), fu = f_u(T, th, ph);
  if (T <= ul_) return A_ * ((fv + T * fu) * step(T / ug_) + fv * T * step_d(T / ug_) / ug_);
  const double z = zeta(T, th, ph);
  if (spec_.zeta_step ? z == 0.0 : T >= uh_) return 0.0;
  const double zu = zeta_u(T, th, ph);
  return A_ * ((fu * z + fv * zu) * T + fv * z) - zu * m4_;
}

std::pair<double, double> ShearModel::warp(double u, double th, double ph) const {
  const double dphi = wrap(ph - spec_.zero_phi);
  const double Phi = bump(dphi / w_);
  if (Phi == 0.0) return {u, 1.0};
  const double x = (th - (theta_start_ + theta_speed_ * u)) / w_;
  const double P = bump(x) / bprime_max_;
  const double Pd = bump_d(x) / bprime_max_;
  return {u + wt_ * Phi * P, 1.0 - Phi * Pd};
}

std::pair<double, double> ShearModel::zero_point(double u) const {
  return {theta_start_ + theta_speed_ * u + w_ * xstar_, spec_.zero_phi};
}

bool ShearModel::in_omega(double th, double ph) const {
  if (std::abs(wrap(ph - spec_.zero_phi)) >= w_) return true;
  const double lo = theta_start_ - w_, hi = theta_start_ + theta_speed_ * 2.0 * regime_.derived.delta + w_;
  return th <= lo || th >= hi;
}

double ShearModel::amp2(double u, double th, double ph) const {
  if (u <= 0.0) return 0.0;
  const auto [T, Tu] = warp(u, th, ph);
  return base_rate(T, th, ph) * Tu;
}

double ShearModel::cumulative(double u, double th, double ph) const {
  if (u <= 0.0) return 0.0;
  return base(warp(u, th, ph).first, th, ph);
}

double ShearModel::mass_reference(double u) const {
  const double z = zeta_mean(u);
  return A_ * u * z + (1.0 - z) * m4_;
}
double ShearModel::mass_reference_u(double u) const {
  const double z = zeta_mean(u), zu = zeta_mean_u(u);
  return A_ * (z + u * zu) - zu * m4_;
}

SphereField ShearProfile::slice(const std::vector<double>& arr, std::size_t k) const {
  const std::size_t n = nodes();
  return SphereField(grid, std::vector<double>(arr.begin() + k * n, arr.begin() + (k + 1) * n));
}

std::unique_ptr<ShearModel> ShearProfile::model() const { return std::make_unique<ShearModel>(regime, spec); }

ShearProfile build_profile(const Regime& regime, const ProfileSpec& spec) {
  for (int n : {spec.n_ramp, spec.n_window, spec.n_transition, spec.n_tail})
    if (n < 2 || n % 2 != 0) throw ConstraintError("shear: u-bar panel interval counts must be even and >= 2");
  ShearModel model(regime, spec);
  ShearProfile p;
  p.regime = regime;
  p.spec = spec;
  p.grid = make_grid(spec.n_theta, spec.n_phi);
  const auto& d = regime.derived;
  const double bp[] = {0.0, d.ubar_gamma, d.ubar_lambda, d.ubar_lambda_hi, d.ubar_end};
  const int counts[] = {spec.n_ramp, spec.n_window, spec.n_transition, spec.n_tail};
  p.ubar.push_back(0.0);
  for (int s = 0; s < 4; ++s) {
    for (int k = 1; k <= counts[s]; ++k)
      p.ubar.push_back(k == counts[s] ? bp[s + 1] : bp[s] + (bp[s + 1] - bp[s]) * k / counts[s]);
    p.panel_ends.push_back(static_cast<int>(p.ubar.size()) - 1);
  }
  const std::size_t n = p.grid->size(), nu = p.ubar.size();
  p.I.resize(nu * n);
  p.amp2.resize(nu * n);
  p.f.resize(nu * n);
  p.zeta.resize(nu * n);
  for (std::size_t k = 0; k < nu; ++k) {
    const double u = p.ubar[k];
    for (std::size_t q = 0; q < n; ++q) {
      const double th = p.grid->theta_at(q), ph = p.grid->phi_at(q);
      p.I[k * n + q] = model.cumulative(u, th, ph);
      p.amp2[k * n + q] = model.amp2(u, th, ph);
      p.f[k * n + q] = model.f(u, th, ph);
      p.zeta[k * n + q] = model.zeta(u, th, ph);
    }
    const auto [zt, zp] = model.zero_point(u);
    p.zero_theta.push_back(zt);
    p.zero_phi.push_back(zp);
  }
  return p;
}

double simpson_total(const ShearProfile& p, std::size_t node) {
  const std::size_t n = p.nodes();
  double total = 0.0;
  int start = 0;
  for (int end : p.panel_ends) {
    const int m = end - start;
    const double h = (p.ubar[end] - p.ubar[start]) / m;
    double s = p.amp2[start * n + node] + p.amp2[end * n + node];
    for (int k = 1; k < m; ++k) s += (k % 2 ? 4.0 : 2.0) * p.amp2[(start + k) * n + node];
    total += s * h / 3.0;
    start = end;
  }
  return total;
}

std::vector<double> trapezoid_cumulative(const ShearProfile& p, std::size_t node) {
  const std::size_t n = p.nodes();
  std::vector<double> out(p.n_ubar(), 0.0);
  for (std::size_t k = 1; k < p.n_ubar(); ++k)
    out[k] = out[k - 1] + 0.5 * (p.ubar[k] - p.ubar[k - 1]) * (p.amp2[k * n + node] + p.amp2[(k - 1) * n + node]);
  return out;
}

CheckList verify_profile(const ShearProfile& p, double total_tol, double identity_tol, double dominance_tol) {
  CheckList rep;
  const auto model = p.model();
  const auto& d = p.regime.derived;
  const auto& rp = p.regime.params;
  const double m4 = 4.0 * d.m0, A = d.amp;
  const std::size_t n = p.nodes(), nu = p.n_ubar();
  auto at = [&](const std::vector<double>& arr, std::size_t k, std::size_t q) { return arr[k * n + q]; };
  std::vector<char> omega(n);
  for (std::size_t q = 0; q < n; ++q) omega[q] = model->in_omega(p.grid->theta_at(q), p.grid->phi_at(q));

  double peak = 0.0, amp_min = 0.0;
  for (double v : p.amp2) {
    peak = std::max(peak, v);
    amp_min = std::min(amp_min, v);
  }

  double tot_err = 0.0, tot_lo = INFINITY, tot_hi = -INFINITY;
  for (std::size_t q = 0; q < n; ++q) {
    const double t = simpson_total(p, q);
    const double rel = std::abs(t - m4) / m4;
    tot_err = std::max(tot_err, omega[q] ? rel : std::max(0.0, rel - rp.o1));
    tot_lo = std::min(tot_lo, at(p.I, nu - 1, q));
    tot_hi = std::max(tot_hi, at(p.I, nu - 1, q));
  }
  rep.add("total_shear", tot_err, total_tol, tot_err <= total_tol, "max relative error of the u-bar quadrature of amp2 against 4 m0");
  const double spread = (tot_hi - tot_lo) / m4;
  rep.add("angular_total", spread, total_tol, spread <= total_tol, "spread of I(2 delta) over the sphere relative to 4 m0");

  double i0 = 0.0;
  for (std::size_t q = 0; q < n; ++q) i0 = std::max({i0, std::abs(at(p.I, 0, q)), std::abs(at(p.amp2, 0, q))});
  rep.add("initial_zero", i0, 0.0, i0 == 0.0, "I and amp2 at u-bar = 0");

  double dec = 0.0;
  for (std::size_t k = 1; k < nu; ++k)
    for (std::size_t q = 0; q < n; ++q) dec = std::max(dec, at(p.I, k - 1, q) - at(p.I, k, q));
  rep.add("monotone", dec / m4, 1e-14, dec / m4 <= 1e-14, "largest decrease of I between u-bar nodes over 4 m0");
  rep.add("amp2_nonnegative", -amp_min, 0.0, amp_min >= 0.0);

  double win = 0.0, trans = 0.0, plateau = 0.0;
  for (std::size_t k = 0; k < nu; ++k) {
    const double u = p.ubar[k];
    for (std::size_t q = 0; q < n; ++q) {
      const double I = at(p.I, k, q), fv = at(p.f, k, q), z = at(p.zeta, k, q);
      const double slackless = omega[q] ? 0.0 : rp.o1;
      if (u >= d.ubar_gamma && u <= d.ubar_lambda) {
        const double ref = A * fv * u;
        win = std::max(win, std::max(0.0, std::abs(I - ref) / ref - slackless));
      } else if (u > d.ubar_lambda && u < d.ubar_lambda_hi) {
        const double ref = A * fv * z * u + (1.0 - z) * m4;
        trans = std::max(trans, std::max(0.0, std::abs(I - ref) / m4 - slackless));
      } else if (u >= d.ubar_lambda_hi) {
        plateau = std::max(plateau, std::abs(I - m4) / m4);
      }
    }
  }
  rep.add("window_identity", win, identity_tol, win <= identity_tol, "I = A f ubar on the window");
  rep.add("transition_identity", trans, identity_tol, trans <= identity_tol, "I = A f zeta ubar + (1 - zeta) 4 m0 on the cut-off interval");
  rep.add("plateau", plateau, identity_tol, plateau <= identity_tol, "I = 4 m0 beyond lambda' delta");

  double fdev = 0.0, zdev = 0.0;
  for (std::size_t k = 0; k < nu; ++k) {
    const double zm = model->zeta_mean(p.ubar[k]);
    for (std::size_t q = 0; q < n; ++q) {
      fdev = std::max(fdev, std::abs(at(p.f, k, q) - 1.0) * rp.c1);
      const double z = at(p.zeta, k, q);
      if (zm > 0) zdev = std::max(zdev, std::abs(z / zm - 1.0) * rp.c2_zeta);
      else zdev = std::max(zdev, std::abs(z) > 0 ? 2.0 : 0.0);
    }
  }
  rep.add("f_bounds", fdev, 1.0, fdev <= 1.0 + 1e-12, "c1 |f - 1|");
  rep.add("zeta_bounds", zdev, 1.0, zdev <= 1.0 + 1e-12, "c2 |zeta / zeta(ubar) - 1|");

  // dominance: M* = I(lambda delta), N = I(lambda' delta) - M*
  auto index_of = [&](double u) {
    std::size_t best = 0;
    for (std::size_t k = 0; k < nu; ++k)
      if (std::abs(p.ubar[k] - u) < std::abs(p.ubar[best] - u)) best = k;
    return best;
  };
  const std::size_t kl = index_of(d.ubar_lambda), kh = index_of(d.ubar_lambda_hi);
  double dom = 0.0;
  for (std::size_t q = 0; q < n; ++q) {
    const double Ms = at(p.I, kl, q), N = at(p.I, kh, q) - Ms;
    const double ratio = N > 0 ? Ms / N : INFINITY;
    dom = std::max(dom, std::abs(ratio / rp.d0 - 1.0));
  }
  rep.add("dominance", dom, dominance_tol, dom <= dominance_tol, "max |M*/N / d0 - 1|");

  // endpoints of the support of amp2
  std::vector<double> rowmax(nu, 0.0);
  for (std::size_t k = 0; k < nu; ++k)
    for (std::size_t q = 0; q < n; ++q) rowmax[k] = std::max(rowmax[k], std::abs(at(p.amp2, k, q)));
  std::size_t last = 0;
  for (std::size_t k = 0; k < nu; ++k)
    if (rowmax[k] > 0.0) last = k;
  const std::size_t end = std::min(last + 1, nu - 1);
  const double at_ends = std::max(rowmax[0], end > last ? rowmax[end] : rowmax[last]) / peak;
  const double near_ends = std::max(rowmax[1], rowmax[end - 1]) / peak;
  const double slope = std::max(rowmax[1] / (p.ubar[1] - p.ubar[0]),
                                std::abs(rowmax[end] - rowmax[end - 1]) / (p.ubar[end] - p.ubar[end - 1])) *
                       d.delta / peak;
  const bool smooth_ok = at_ends <= 1e-10 && near_ends <= 0.05;
  rep.add("endpoint_smoothness", near_ends, 0.05, smooth_ok,
          "amp2 next to each end of its support over peak; delta-scaled slope " + std::to_string(slope));

  double zero_val = 0.0;
  double zmin = INFINITY, zmax = -INFINITY;
  for (std::size_t k = 0; k < nu; ++k) {
    const double u = p.ubar[k];
    if (!(u > 0.0 && u < d.delta)) continue;
    zero_val = std::max(zero_val, std::max(0.0, model->amp2(u, p.zero_theta[k], p.zero_phi[k])) / peak);
    zmin = std::min(zmin, p.zero_theta[k]);
    zmax = std::max(zmax, p.zero_theta[k]);
  }
  rep.add("zero_locus_present", zero_val, 1e-12, zero_val <= 1e-12, "amp2 at the recorded zero over peak");
  rep.add("zero_locus_moving", zmax - zmin, 0.0, zmax - zmin > 0.0, "colatitude range swept by the zero");
  return rep;
}

namespace {

// Fornberg finite-difference weights for derivative order m at x0
std::vector<double> fd_weights(const std::vector<double>& x, double x0, int m) {
  const int n = static_cast<int>(x.size()) - 1;
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0, c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = c[i][m];
  return w;
}

}  // namespace

NormResult scale_critical_norm(const ShearProfile& p, int j_max, int i_max, double bound) {
  const int nu = static_cast<int>(p.n_ubar());
  if (j_max < 0 || i_max < 0) throw ResolutionError("scale_critical_norm: orders must be nonnegative");
  if (j_max + 3 > nu) throw ResolutionError("scale_critical_norm: too few u-bar points for j_max");
  if (i_max > p.grid->lmax()) throw ResolutionError("scale_critical_norm: i_max exceeds angular resolution");
  const std::size_t n = p.nodes();
  const auto& d = p.regime.derived;
  std::vector<double> g(p.amp2.size());
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = std::sqrt(std::max(0.0, p.amp2[k]));

  NormResult res;
  res.bound = bound;
  const double inv_sqrt_a = 1.0 / std::sqrt(p.regime.params.a);
  for (int k = 0; k < nu; ++k) {
    double total = 0.0;
    for (int j = 0; j <= j_max; ++j) {
      std::vector<double> dj(n, 0.0);
      if (j == 0) {
        std::copy(g.begin() + k * n, g.begin() + (k + 1) * n, dj.begin());
      } else {
        const int width = (j % 2 == 0) ? j + 1 : j + 2;
        int lo = std::clamp(k - width / 2, 0, nu - width);
        std::vector<double> xs(p.ubar.begin() + lo, p.ubar.begin() + lo + width);
        const auto w = fd_weights(xs, p.ubar[k], j);
        for (int s = 0; s < width; ++s)
          for (std::size_t q = 0; q < n; ++q) dj[q] += w[s] * g[(lo + s) * n + q];
      }
      const double scale = std::pow(d.delta, j) * inv_sqrt_a;
      std::vector<double> cur = dj;
      for (int i = 0; i <= i_max; ++i) {
        if (i > 0 && i % 2 == 0) cur = p.grid->laplacian_unit(cur);
        std::vector<double> h2(n);
        if (i % 2 == 0) {
          for (std::size_t q = 0; q < n; ++q) h2[q] = cur[q] * cur[q];
        } else {
          const auto dv = p.grid->derivatives(cur);
          for (std::size_t q = 0; q < n; ++q) h2[q] = dv.d_theta[q] * dv.d_theta[q] + dv.d_phi[q] * dv.d_phi[q];
        }
        total += scale * std::sqrt(p.grid->integrate_unit(h2));
      }
    }
    if (total > res.value) {
      res.value = total;
      res.ubar_at_max = p.ubar[k];
    }
  }
  res.pass = res.value <= bound;
  return res;
}

nlohmann::json to_json(const RegimeParameters& p) {
  return {{"a", p.a}, {"kappa", p.kappa}, {"mu", p.mu}, {"y", p.y}, {"gamma", p.gamma},
          {"lambda", p.lambda_lo}, {"lambda_prime", p.lambda_hi}, {"t", p.t}, {"c1", p.c1},
          {"c2_zeta", p.c2_zeta}, {"c2_unknown_bound", p.c2_unknown_bound}, {"o1", p.o1},
          {"d0", p.d0}, {"f0", p.f0}, {"C_eps", p.C_eps}, {"penrose_coupling", p.penrose_coupling}};
}

RegimeParameters regime_from_json(const nlohmann::json& j) {
  RegimeParameters p;
  p.a = j.at("a"); p.kappa = j.at("kappa"); p.mu = j.at("mu"); p.y = j.at("y");
  p.gamma = j.at("gamma"); p.lambda_lo = j.at("lambda"); p.lambda_hi = j.at("lambda_prime");
  p.t = j.at("t"); p.c1 = j.at("c1"); p.c2_zeta = j.at("c2_zeta");
  p.c2_unknown_bound = j.at("c2_unknown_bound"); p.o1 = j.at("o1"); p.d0 = j.at("d0");
  p.f0 = j.at("f0"); p.C_eps = j.at("C_eps"); p.penrose_coupling = j.at("penrose_coupling");
  return p;
}

nlohmann::json to_json(const ProfileSpec& s) {
  return {{"n_theta", s.n_theta}, {"n_phi", s.n_phi}, {"n_ramp", s.n_ramp}, {"n_window", s.n_window},
          {"n_transition", s.n_transition}, {"n_tail", s.n_tail}, {"zero_width", s.zero_width},
          {"zero_phi", s.zero_phi}, {"zeta_step", s.zeta_step}};
}

ProfileSpec profile_spec_from_json(const nlohmann::json& j) {
  ProfileSpec s;
  s.n_theta = j.at("n_theta"); s.n_phi = j.at("n_phi"); s.n_ramp = j.at("n_ramp");
  s.n_window = j.at("n_window"); s.n_transition = j.at("n_transition"); s.n_tail = j.at("n_tail");
  s.zero_width = j.at("zero_width"); s.zero_phi = j.at("zero_phi"); s.zeta_step = j.at("zeta_step");
  return s;
}

Container to_container(const ShearProfile& p) {
  Container c;
  c.header["kind"] = "shear_profile";
  c.header["regime"] = to_json(p.regime.params);
  c.header["spec"] = to_json(p.spec);
  c.header["grid"] = {{"n_theta", p.grid->n_theta()}, {"n_phi", p.grid->n_phi()},
                      {"colatitude", "gauss-legendre"}, {"node_order", "theta-major"}};
  c.header["panel_ends"] = p.panel_ends;
  c.header["units"] = {{"I", "length"}, {"amp2", "1/length"}, {"ubar", "length"}};
  const std::size_t nu = p.n_ubar(), n = p.nodes();
  c.put("ubar", p.ubar, {nu});
  c.put("I", p.I, {nu, n});
  c.put("amp2", p.amp2, {nu, n});
  c.put("f", p.f, {nu, n});
  c.put("zeta", p.zeta, {nu, n});
  c.put("zero_theta", p.zero_theta, {nu});
  c.put("zero_phi", p.zero_phi, {nu});
  return c;
}

ShearProfile profile_from_container(const Container& c) {
  if (c.header.value("kind", "") != "shear_profile") throw ShapeError("container does not hold a shear profile");
  ShearProfile p;
  p.regime = make_regime(regime_from_json(c.header.at("regime")));
  p.spec = profile_spec_from_json(c.header.at("spec"));
  p.grid = make_grid(c.header.at("grid").at("n_theta"), c.header.at("grid").at("n_phi"));
  p.panel_ends = c.header.at("panel_ends").get<std::vector<int>>();
  p.ubar = c.get("ubar");
  p.I = c.get("I");
  p.amp2 = c.get("amp2");
  p.f = c.get("f");
  p.zeta = c.get("zeta");
  p.zero_theta = c.get("zero_theta");
  p.zero_phi = c.get("zero_phi");
  if (p.I.size() != p.ubar.size() * p.grid->size()) throw ShapeError("shear profile arrays do not match grid");
  return p;
}

}  // namespace motslab
