#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace motslab {

// Gauss-Legendre colatitudes x uniform longitudes, real spherical-harmonic
// transform with triangular truncation.  Node index is i * n_phi + j.
class SphereGrid {
 public:
  SphereGrid(int n_theta, int n_phi);

  int n_theta() const { return nt_; }
  int n_phi() const { return np_; }
  int lmax() const { return lmax_; }
  int mmax() const { return mmax_; }
  std::size_t size() const { return static_cast<std::size_t>(nt_) * np_; }
  std::size_t n_coeffs() const { return ncoef_; }

  double theta(int i) const { return theta_[i]; }
  double phi(int j) const { return phi_[j]; }
  double theta_at(std::size_t k) const { return theta_[k / np_]; }
  double phi_at(std::size_t k) const { return phi_[k % np_]; }
  // unit-sphere quadrature weight of node k
  double weight(std::size_t k) const { return w_[k / np_] * dphi_; }
  const std::vector<double>& thetas() const { return theta_; }

  // coefficient layout: for m = 0..mmax, l = m..lmax, [cos part, sin part]
  std::size_t index(int l, int m) const;
  std::vector<double> analyze(const std::vector<double>& values) const;
  std::vector<double> synthesize(const std::vector<double>& coeffs) const;

  struct Derivs {
    std::vector<double> f, d_theta, d_phi, lap;  // d_phi is (1/sin) d/dphi
    std::vector<double> h_tt, h_tp, h_pp;        // orthonormal-frame Hessian
  };
  // all unit-sphere derivatives from one analysis; hessian optional
  Derivs derivatives(const std::vector<double>& values, bool hessian = false) const;
  Derivs derivatives_from_coeffs(const std::vector<double>& coeffs, bool hessian) const;

  std::vector<double> laplacian_unit(const std::vector<double>& values) const;
  double integrate_unit(const std::vector<double>& values) const;

  // spectral multiplier g(l) applied in coefficient space
  template <class Fn>
  std::vector<double> apply_spectral(const std::vector<double>& values, Fn g) const {
    auto c = analyze(values);
    for (int m = 0; m <= mmax_; ++m)
      for (int l = m; l <= lmax_; ++l) {
        const std::size_t q = index(l, m);
        const double s = g(l);
        c[q] *= s;
        c[q + 1] *= s;
      }
    return synthesize(c);
  }

  bool same_as(const SphereGrid& o) const { return nt_ == o.nt_ && np_ == o.np_; }

 private:
  int nt_, np_, lmax_, mmax_;
  std::size_t ncoef_;
  double dphi_;
  std::vector<double> theta_, x_, w_, phi_;
  std::vector<double> plm_, dplm_;  // [ring][l,m] flattened, size nt * nlm
  std::vector<double> cosm_, sinm_;  // [m][j]
  std::vector<std::size_t> lm_offset_;
  std::size_t nlm_;
  std::size_t lm(int l, int m) const { return lm_offset_[m] + (l - m); }
  void ring_dft(const double* row, std::vector<double>& fc, std::vector<double>& fs) const;
};

using GridPtr = std::shared_ptr<const SphereGrid>;
GridPtr make_grid(int n_theta, int n_phi);

class SphereField {
 public:
  SphereField() = default;
  explicit SphereField(GridPtr g, double fill = 0.0);
  SphereField(GridPtr g, std::vector<double> values);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return v_.size(); }
  double& operator[](std::size_t k) { return v_[k]; }
  double operator[](std::size_t k) const { return v_[k]; }
  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

  double min() const;
  double max() const;
  bool all_finite() const;

  SphereField& operator+=(const SphereField& o);
  SphereField& operator-=(const SphereField& o);
  SphereField& operator*=(double s);

 private:
  GridPtr grid_;
  std::vector<double> v_;
};

SphereField operator+(SphereField a, const SphereField& b);
SphereField operator-(SphereField a, const SphereField& b);
SphereField operator*(double s, SphereField a);

template <class Fn>
SphereField sample(const GridPtr& g, Fn fn) {
  SphereField out(g);
  for (std::size_t k = 0; k < g->size(); ++k) out[k] = fn(g->theta_at(k), g->phi_at(k));
  return out;
}

// round sphere of radius given by a field (pointwise) or a constant
SphereField laplace_beltrami(const SphereField& f, const SphereField& radius);
SphereField laplace_beltrami(const SphereField& f, double radius);
SphereField gradient_norm_sq(const SphereField& f, const SphereField& radius);
SphereField gradient_norm_sq(const SphereField& f, double radius);
double integrate(const SphereField& f, const SphereField& radius);
double integrate(const SphereField& f, double radius);

void write_csv(const SphereField& f, const std::string& path, const std::string& header_comment = "");

}  // namespace motslab
