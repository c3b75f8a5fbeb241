#include "motslab/sphere.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>

#include "motslab/errors.hpp"

namespace motslab {

SphereGrid::SphereGrid(int n_theta, int n_phi) : nt_(n_theta), np_(n_phi) {
  if (n_theta < 4 || n_phi < 8 || n_phi % 2 != 0)
    throw ShapeError("sphere grid: need n_theta >= 4 and even n_phi >= 8");
  lmax_ = nt_ - 1;
  mmax_ = std::min(lmax_, np_ / 2 - 1);
  dphi_ = 2.0 * std::numbers::pi / np_;

  // GSL orders points symmetric about 0; collect both halves and sort by x descending
  gsl_integration_glfixed_table* tab = gsl_integration_glfixed_table_alloc(nt_);
  std::vector<std::pair<double, double>> xw;
  for (int i = 0; i < nt_; ++i) {
    double xi, wi;
    gsl_integration_glfixed_point(-1.0, 1.0, i, &xi, &wi, tab);
    xw.emplace_back(xi, wi);
  }
  gsl_integration_glfixed_table_free(tab);
  std::sort(xw.begin(), xw.end(), [](auto& l, auto& r) { return l.first > r.first; });
  for (auto& [xi, wi] : xw) {
    x_.push_back(xi);
    w_.push_back(wi);
    theta_.push_back(std::acos(xi));
  }
  for (int j = 0; j < np_; ++j) phi_.push_back(j * dphi_);

  lm_offset_.resize(mmax_ + 1);
  nlm_ = 0;
  for (int m = 0; m <= mmax_; ++m) {
    lm_offset_[m] = nlm_;
    nlm_ += static_cast<std::size_t>(lmax_ - m + 1);
  }
  ncoef_ = 2 * nlm_;

  plm_.assign(nt_ * nlm_, 0.0);
  dplm_.assign(nt_ * nlm_, 0.0);
  for (int i = 0; i < nt_; ++i) {
    const double x = x_[i], s = std::sqrt(1.0 - x * x);
    double* p = &plm_[i * nlm_];
    double* dp = &dplm_[i * nlm_];
    double pmm = std::sqrt(0.5);
    for (int m = 0; m <= mmax_; ++m) {
      if (m > 0) pmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
      p[lm(m, m)] = pmm;
      if (m + 1 <= lmax_) p[lm(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * x * pmm;
      for (int l = m + 2; l <= lmax_; ++l) {
        const double ll = l, mm = m;
        const double al = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll - mm * mm));
        const double bl = std::sqrt(((ll - 1) * (ll - 1) - mm * mm) / (4.0 * (ll - 1) * (ll - 1) - 1.0));
        p[lm(l, m)] = al * (x * p[lm(l - 1, m)] - bl * p[lm(l - 2, m)]);
      }
      for (int l = m; l <= lmax_; ++l) {
        const double ll = l, mm = m;
        const double c = (l > m) ? std::sqrt((2 * ll + 1) * (ll * ll - mm * mm) / (2 * ll - 1)) : 0.0;
        const double prev = (l > m) ? p[lm(l - 1, m)] : 0.0;
        dp[lm(l, m)] = (ll * x * p[lm(l, m)] - c * prev) / s;
      }
    }
  }

  cosm_.resize((mmax_ + 1) * np_);
  sinm_.resize((mmax_ + 1) * np_);
  for (int m = 0; m <= mmax_; ++m)
    for (int j = 0; j < np_; ++j) {
      cosm_[m * np_ + j] = std::cos(m * phi_[j]);
      sinm_[m * np_ + j] = std::sin(m * phi_[j]);
    }
}

std::size_t SphereGrid::index(int l, int m) const { return 2 * lm(l, m); }

void SphereGrid::ring_dft(const double* row, std::vector<double>& fc,
                          std::vector<double>& fs) const {
  for (int m = 0; m <= mmax_; ++m) {
    const double* cm = &cosm_[m * np_];
    const double* sm = &sinm_[m * np_];
    double ac = 0, as = 0;
    for (int j = 0; j < np_; ++j) {
      ac += row[j] * cm[j];
      as += row[j] * sm[j];
    }
    const double norm = (m == 0) ? 1.0 / np_ : 2.0 / np_;
    fc[m] = ac * norm;
    fs[m] = as * norm;
  }
}

std::vector<double> SphereGrid::analyze(const std::vector<double>& values) const {
  if (values.size() != size()) throw ShapeError("analyze: field size does not match grid");
  std::vector<double> c(ncoef_, 0.0), fc(mmax_ + 1), fs(mmax_ + 1);
  for (int i = 0; i < nt_; ++i) {
    ring_dft(&values[static_cast<std::size_t>(i) * np_], fc, fs);
    const double* p = &plm_[i * nlm_];
    for (int m = 0; m <= mmax_; ++m) {
      const double wc = w_[i] * fc[m], ws = w_[i] * fs[m];
      for (int l = m; l <= lmax_; ++l) {
        const std::size_t q = lm(l, m);
        c[2 * q] += wc * p[q];
        c[2 * q + 1] += ws * p[q];
      }
    }
  }
  return c;
}

std::vector<double> SphereGrid::synthesize(const std::vector<double>& coeffs) const {
  if (coeffs.size() != ncoef_) throw ShapeError("synthesize: coefficient count mismatch");
  std::vector<double> out(size(), 0.0), fc(mmax_ + 1), fs(mmax_ + 1);
  for (int i = 0; i < nt_; ++i) {
    const double* p = &plm_[i * nlm_];
    for (int m = 0; m <= mmax_; ++m) {
      double ac = 0, as = 0;
      for (int l = m; l <= lmax_; ++l) {
        const std::size_t q = lm(l, m);
        ac += coeffs[2 * q] * p[q];
        as += coeffs[2 * q + 1] * p[q];
      }
      fc[m] = ac;
      fs[m] = as;
    }
    double* row = &out[static_cast<std::size_t>(i) * np_];
    for (int m = 0; m <= mmax_; ++m) {
      const double* cm = &cosm_[m * np_];
      const double* sm = &sinm_[m * np_];
      for (int j = 0; j < np_; ++j) row[j] += fc[m] * cm[j] + fs[m] * sm[j];
    }
  }
  return out;
}

SphereGrid::Derivs SphereGrid::derivatives(const std::vector<double>& values, bool hessian) const {
  return derivatives_from_coeffs(analyze(values), hessian);
}

SphereGrid::Derivs SphereGrid::derivatives_from_coeffs(const std::vector<double>& c,
                                                       bool hessian) const {
  const std::size_t n = size();
  Derivs d;
  d.f.assign(n, 0.0);
  d.d_theta.assign(n, 0.0);
  d.d_phi.assign(n, 0.0);
  d.lap.assign(n, 0.0);
  std::vector<double> dpp, dtp;  // d_phi_phi, d_theta_phi (coordinate)
  if (hessian) {
    dpp.assign(n, 0.0);
    dtp.assign(n, 0.0);
  }
  const int M = mmax_ + 1;
  std::vector<double> Fc(M), Fs(M), Tc(M), Ts(M), Lc(M), Ls(M);
  for (int i = 0; i < nt_; ++i) {
    const double* p = &plm_[i * nlm_];
    const double* dp = &dplm_[i * nlm_];
    for (int m = 0; m <= mmax_; ++m) {
      double fc = 0, fs = 0, tc = 0, ts = 0, lc = 0, ls = 0;
      for (int l = m; l <= lmax_; ++l) {
        const std::size_t q = lm(l, m);
        const double a = c[2 * q], b = c[2 * q + 1];
        const double ev = -static_cast<double>(l) * (l + 1);
        fc += a * p[q];
        fs += b * p[q];
        tc += a * dp[q];
        ts += b * dp[q];
        lc += ev * a * p[q];
        ls += ev * b * p[q];
      }
      Fc[m] = fc; Fs[m] = fs; Tc[m] = tc; Ts[m] = ts; Lc[m] = lc; Ls[m] = ls;
    }
    const double s = std::sin(theta_[i]);
    for (int j = 0; j < np_; ++j) {
      double f = 0, ft = 0, fp = 0, lp = 0, fpp = 0, ftp = 0;
      for (int m = 0; m <= mmax_; ++m) {
        const double cm = cosm_[m * np_ + j], sm = sinm_[m * np_ + j];
        f += Fc[m] * cm + Fs[m] * sm;
        ft += Tc[m] * cm + Ts[m] * sm;
        fp += m * (Fs[m] * cm - Fc[m] * sm);
        lp += Lc[m] * cm + Ls[m] * sm;
        if (hessian) {
          fpp -= static_cast<double>(m) * m * (Fc[m] * cm + Fs[m] * sm);
          ftp += m * (Ts[m] * cm - Tc[m] * sm);
        }
      }
      const std::size_t k = static_cast<std::size_t>(i) * np_ + j;
      d.f[k] = f;
      d.d_theta[k] = ft;
      d.d_phi[k] = fp / s;
      d.lap[k] = lp;
      if (hessian) {
        dpp[k] = fpp;
        dtp[k] = ftp;
      }
    }
  }
  if (hessian) {
    d.h_tt.resize(n);
    d.h_tp.resize(n);
    d.h_pp.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double th = theta_at(k), s = std::sin(th), cot = std::cos(th) / s;
      const double fp_coord = d.d_phi[k] * s;
      d.h_pp[k] = dpp[k] / (s * s) + cot * d.d_theta[k];
      d.h_tt[k] = d.lap[k] - d.h_pp[k];
      d.h_tp[k] = (dtp[k] - cot * fp_coord) / s;
    }
  }
  return d;
}

std::vector<double> SphereGrid::laplacian_unit(const std::vector<double>& values) const {
  return apply_spectral(values, [](int l) { return -static_cast<double>(l) * (l + 1); });
}

double SphereGrid::integrate_unit(const std::vector<double>& values) const {
  if (values.size() != size()) throw ShapeError("integrate: field size does not match grid");
  double total = 0.0;
  for (int i = 0; i < nt_; ++i) {
    double ring = 0.0;
    for (int j = 0; j < np_; ++j) ring += values[static_cast<std::size_t>(i) * np_ + j];
    total += w_[i] * ring;
  }
  return total * dphi_;
}

GridPtr make_grid(int n_theta, int n_phi) { return std::make_shared<const SphereGrid>(n_theta, n_phi); }

SphereField::SphereField(GridPtr g, double fill) : grid_(std::move(g)), v_(grid_->size(), fill) {}

SphereField::SphereField(GridPtr g, std::vector<double> values)
    : grid_(std::move(g)), v_(std::move(values)) {
  if (v_.size() != grid_->size()) throw ShapeError("field: value count does not match grid");
}

double SphereField::min() const { return *std::min_element(v_.begin(), v_.end()); }
double SphereField::max() const { return *std::max_element(v_.begin(), v_.end()); }
bool SphereField::all_finite() const {
  return std::all_of(v_.begin(), v_.end(), [](double x) { return std::isfinite(x); });
}

namespace {
void check_same(const SphereField& a, const SphereField& b) {
  if (!a.grid() || !b.grid() || !a.grid()->same_as(*b.grid()))
    throw ShapeError("sphere fields live on different grids");
}
void check_radius(const SphereField& r) {
  for (double v : r.values())
    if (!(v > 0.0)) throw PositivityError("radius must be positive at every node");
}
}  // namespace

SphereField& SphereField::operator+=(const SphereField& o) {
  check_same(*this, o);
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += o.v_[k];
  return *this;
}
SphereField& SphereField::operator-=(const SphereField& o) {
  check_same(*this, o);
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] -= o.v_[k];
  return *this;
}
SphereField& SphereField::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}
SphereField operator+(SphereField a, const SphereField& b) { return a += b; }
SphereField operator-(SphereField a, const SphereField& b) { return a -= b; }
SphereField operator*(double s, SphereField a) { return a *= s; }

SphereField laplace_beltrami(const SphereField& f, const SphereField& radius) {
  check_same(f, radius);
  check_radius(radius);
  auto lap = f.grid()->laplacian_unit(f.values());
  for (std::size_t k = 0; k < lap.size(); ++k) lap[k] /= radius[k] * radius[k];
  return SphereField(f.grid(), std::move(lap));
}

SphereField laplace_beltrami(const SphereField& f, double radius) {
  return laplace_beltrami(f, SphereField(f.grid(), radius));
}

SphereField gradient_norm_sq(const SphereField& f, const SphereField& radius) {
  check_same(f, radius);
  check_radius(radius);
  const auto d = f.grid()->derivatives(f.values());
  SphereField out(f.grid());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = (d.d_theta[k] * d.d_theta[k] + d.d_phi[k] * d.d_phi[k]) / (radius[k] * radius[k]);
  return out;
}

SphereField gradient_norm_sq(const SphereField& f, double radius) {
  return gradient_norm_sq(f, SphereField(f.grid(), radius));
}

double integrate(const SphereField& f, const SphereField& radius) {
  check_same(f, radius);
  check_radius(radius);
  std::vector<double> v(f.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f[k] * radius[k] * radius[k];
  return f.grid()->integrate_unit(v);
}

double integrate(const SphereField& f, double radius) {
  if (!(radius > 0.0)) throw PositivityError("radius must be positive");
  return f.grid()->integrate_unit(f.values()) * radius * radius;
}

void write_csv(const SphereField& f, const std::string& path, const std::string& header_comment) {
  std::ofstream os(path);
  if (!header_comment.empty()) os << "# " << header_comment << "\n";
  os << "theta,phi,value\n" << std::setprecision(17);
  for (std::size_t k = 0; k < f.size(); ++k)
    os << f.grid()->theta_at(k) << ',' << f.grid()->phi_at(k) << ',' << f[k] << '\n';
}

}  // namespace motslab
