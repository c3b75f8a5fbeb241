#include <cmath>
#include <random>

#include <boost/math/special_functions/spherical_harmonic.hpp>
#include <gtest/gtest.h>

#include "motslab/errors.hpp"
#include "motslab/sphere.hpp"

using namespace motslab;

namespace {

// finite-difference Laplace-Beltrami of an analytic function on a radius-r sphere
template <class Fn>
double fd_laplacian(Fn f, double th, double ph, double r) {
  const double h = 1e-4;
  auto dth = [&](double t) { return (f(t + h, ph) - f(t - h, ph)) / (2 * h); };
  const double radial = (std::sin(th + h) * dth(th + h) - std::sin(th - h) * dth(th - h)) / (2 * h * std::sin(th));
  const double az = (f(th, ph + h) - 2 * f(th, ph) + f(th, ph - h)) / (h * h * std::sin(th) * std::sin(th));
  return (radial + az) / (r * r);
}

template <class Fn>
double fd_grad_sq(Fn f, double th, double ph, double r) {
  const double h = 1e-6;
  const double gt = (f(th + h, ph) - f(th - h, ph)) / (2 * h);
  const double gp = (f(th, ph + h) - f(th, ph - h)) / (2 * h * std::sin(th));
  return (gt * gt + gp * gp) / (r * r);
}

double ylm(int l, int m, double th, double ph) {
  return m >= 0 ? boost::math::spherical_harmonic_r(l, m, th, ph) : boost::math::spherical_harmonic_i(l, -m, th, ph);
}

}  // namespace

TEST(Sphere, ConstantIsHarmonic) {
  auto g = make_grid(16, 32);
  const auto out = laplace_beltrami(SphereField(g, 3.7), 2.0);
  EXPECT_LT(std::max(std::abs(out.min()), std::abs(out.max())), 1e-12);
  const auto gr = gradient_norm_sq(SphereField(g, 3.7), 2.0);
  EXPECT_LT(gr.max(), 1e-24);
}

TEST(Sphere, UnitLaplacianOfCos) {
  auto g = make_grid(12, 24);
  const auto f = sample(g, [](double t, double) { return std::cos(t); });
  const auto out = laplace_beltrami(f, 1.0);
  for (std::size_t k = 0; k < g->size(); ++k) EXPECT_NEAR(out[k], -2.0 * f[k], 1e-12);
}

TEST(Sphere, ScaledLaplacianMatchesFiniteDifferences) {
  auto g = make_grid(24, 48);
  const double r = 3.5;
  auto fn = [](double t, double p) { return std::cos(t) + 0.3 * std::sin(t) * std::sin(t) * std::cos(2 * p); };
  const auto out = laplace_beltrami(sample(g, fn), r);
  for (std::size_t k = 0; k < g->size(); ++k)
    EXPECT_NEAR(out[k], fd_laplacian(fn, g->theta_at(k), g->phi_at(k), r), 1e-6);
  const auto c = laplace_beltrami(sample(g, [](double t, double) { return std::cos(t); }), r);
  for (std::size_t k = 0; k < g->size(); ++k) EXPECT_NEAR(c[k], -2.0 * std::cos(g->theta_at(k)) / (r * r), 1e-11 * 2.0 / (r * r));
}

TEST(Sphere, GradientNormOfCos) {
  auto g = make_grid(16, 32);
  const auto f = sample(g, [](double t, double) { return std::cos(t); });
  for (double r : {1.0, 0.25, 7.0}) {
    const auto gr = gradient_norm_sq(f, r);
    for (std::size_t k = 0; k < g->size(); ++k) {
      const double s = std::sin(g->theta_at(k));
      EXPECT_NEAR(gr[k], s * s / (r * r), 1e-12 / (r * r));
      EXPECT_GE(gr[k], 0.0);
    }
  }
  auto fn = [](double t, double p) { return std::sin(t) * std::cos(p) + 0.2 * std::cos(t) * std::cos(t); };
  const auto gr = gradient_norm_sq(sample(g, fn), 2.0);
  for (std::size_t k = 0; k < g->size(); ++k)
    EXPECT_NEAR(gr[k], fd_grad_sq(fn, g->theta_at(k), g->phi_at(k), 2.0), 1e-8);
}

TEST(Sphere, Integrals) {
  auto g = make_grid(16, 32);
  for (double r : {1.0, 2.5}) {
    EXPECT_NEAR(integrate(SphereField(g, 1.0), r), 4 * M_PI * r * r, 1e-12 * r * r);
    EXPECT_NEAR(integrate(sample(g, [](double t, double) { return std::cos(t); }), r), 0.0, 1e-13);
  }
  EXPECT_NEAR(integrate(sample(g, [](double t, double) { return std::cos(t) * std::cos(t); }), 1.0), 4 * M_PI / 3,
              1e-13);
}

TEST(Sphere, HarmonicEigenvalues) {
  for (int n : {12, 16, 24}) {
    auto g = make_grid(n, 2 * n);
    double worst = 0.0;
    for (int l = 0; l <= 8; ++l)
      for (int m = -l; m <= l; ++m) {
        const auto y = sample(g, [&](double t, double p) { return ylm(l, m, t, p); });
        const auto out = laplace_beltrami(y, 1.0);
        for (std::size_t k = 0; k < g->size(); ++k) worst = std::max(worst, std::abs(out[k] + l * (l + 1) * y[k]));
      }
    EXPECT_LT(worst, 1e-11) << "grid " << n;
  }
}

TEST(Sphere, IntegrationByParts) {
  auto g = make_grid(20, 40);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  auto random_field = [&] {
    std::vector<double> c(g->n_coeffs(), 0.0);
    for (int m = 0; m <= 6; ++m)
      for (int l = m; l <= 6; ++l) {
        c[g->index(l, m)] = nd(rng);
        if (m > 0) c[g->index(l, m) + 1] = nd(rng);
      }
    return SphereField(g, g->synthesize(c));
  };
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_field(), h = random_field();
    const double r = 1.7;
    auto prod = [&](const SphereField& a, const SphereField& b) {
      SphereField p(g);
      for (std::size_t k = 0; k < g->size(); ++k) p[k] = a[k] * b[k];
      return integrate(p, r);
    };
    const double lhs = prod(f, laplace_beltrami(h, r)), rhs = prod(h, laplace_beltrami(f, r));
    const double norm = std::sqrt(prod(f, f) * prod(h, h));
    EXPECT_LT(std::abs(lhs - rhs), 1e-12 * norm);
  }
}

TEST(Sphere, RoundTripAndHessianTrace) {
  auto g = make_grid(16, 32);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ud(-1, 1);
  std::vector<double> c(g->n_coeffs(), 0.0);
  for (int m = 0; m <= g->mmax(); ++m)
    for (int l = m; l <= g->lmax(); ++l) {
      c[g->index(l, m)] = ud(rng);
      if (m > 0) c[g->index(l, m) + 1] = ud(rng);
    }
  const auto back = g->analyze(g->synthesize(c));
  for (std::size_t q = 0; q < c.size(); ++q) EXPECT_NEAR(back[q], c[q], 1e-12);
  const auto d = g->derivatives(g->synthesize(c), true);
  for (std::size_t k = 0; k < g->size(); ++k) EXPECT_NEAR(d.h_tt[k] + d.h_pp[k], d.lap[k], 1e-9 * (1 + std::abs(d.lap[k])));
}

TEST(Sphere, HessianOfCos) {
  // cos theta: Hessian in the orthonormal frame is diag(-cos, -cos)
  auto g = make_grid(12, 24);
  const auto d = g->derivatives(sample(g, [](double t, double) { return std::cos(t); }).values(), true);
  for (std::size_t k = 0; k < g->size(); ++k) {
    const double c = std::cos(g->theta_at(k));
    EXPECT_NEAR(d.h_tt[k], -c, 1e-12);
    EXPECT_NEAR(d.h_pp[k], -c, 1e-12);
    EXPECT_NEAR(d.h_tp[k], 0.0, 1e-12);
  }
}

TEST(Sphere, Errors) {
  auto a = make_grid(8, 16), b = make_grid(10, 20);
  EXPECT_THROW(laplace_beltrami(SphereField(a, 1.0), SphereField(b, 1.0)), ShapeError);
  EXPECT_THROW(laplace_beltrami(SphereField(a, 1.0), 0.0), PositivityError);
  EXPECT_THROW(integrate(SphereField(a, 1.0), SphereField(a, -1.0)), PositivityError);
  EXPECT_THROW(make_grid(3, 16), ShapeError);
  EXPECT_THROW(SphereField(a, std::vector<double>(5)), ShapeError);
}
