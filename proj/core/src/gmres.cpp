#include "motslab/gmres.hpp"

#include <cmath>

namespace motslab {

namespace {
double dot(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * a[i] * b[i];
  return s;
}
}  // namespace

GmresResult gmres(const LinearOp& A, const LinearOp& Minv, const std::vector<double>& b,
                  const std::vector<double>& w, double rtol, int restart, int max_iter) {
  const std::size_t n = b.size();
  GmresResult res;
  res.x.assign(n, 0.0);
  const double bnorm = std::sqrt(dot(b, b, w));
  if (bnorm == 0.0) {
    res.converged = true;
    return res;
  }
  std::vector<double> r = b;
  double beta = bnorm;
  while (res.iterations < max_iter) {
    std::vector<std::vector<double>> V(1, r), Z;
    for (double& v : V[0]) v /= beta;
    std::vector<std::vector<double>> H(restart + 1, std::vector<double>(restart, 0.0));
    std::vector<double> cs(restart), sn(restart), g(restart + 1, 0.0);
    g[0] = beta;
    int k = 0;
    for (; k < restart && res.iterations < max_iter; ++k, ++res.iterations) {
      Z.push_back(Minv(V[k]));
      auto v = A(Z[k]);
      for (int i = 0; i <= k; ++i) {
        H[i][k] = dot(v, V[i], w);
        for (std::size_t q = 0; q < n; ++q) v[q] -= H[i][k] * V[i][q];
      }
      H[k + 1][k] = std::sqrt(dot(v, v, w));
      if (H[k + 1][k] > 0.0)
        for (double& x : v) x /= H[k + 1][k];
      V.push_back(std::move(v));
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * H[i][k] + sn[i] * H[i + 1][k];
        H[i + 1][k] = -sn[i] * H[i][k] + cs[i] * H[i + 1][k];
        H[i][k] = t;
      }
      const double den = std::hypot(H[k][k], H[k + 1][k]);
      cs[k] = H[k][k] / den;
      sn[k] = H[k + 1][k] / den;
      H[k][k] = den;
      H[k + 1][k] = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      if (std::abs(g[k + 1]) <= rtol * bnorm) {
        ++k;
        ++res.iterations;
        break;
      }
    }
    std::vector<double> y(k);
    for (int i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (int j = i + 1; j < k; ++j) s -= H[i][j] * y[j];
      y[i] = s / H[i][i];
    }
    for (int i = 0; i < k; ++i)
      for (std::size_t q = 0; q < n; ++q) res.x[q] += y[i] * Z[i][q];
    const auto Ax = A(res.x);
    for (std::size_t q = 0; q < n; ++q) r[q] = b[q] - Ax[q];
    beta = std::sqrt(dot(r, r, w));
    res.relative_residual = beta / bnorm;
    if (res.relative_residual <= rtol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace motslab
