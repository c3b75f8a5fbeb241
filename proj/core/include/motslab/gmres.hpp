#pragma once

#include <functional>
#include <vector>

namespace motslab {

using LinearOp = std::function<std::vector<double>(const std::vector<double>&)>;

struct GmresResult {
  std::vector<double> x;
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

// restarted GMRES with right preconditioning, inner product weighted by w
GmresResult gmres(const LinearOp& A, const LinearOp& Minv, const std::vector<double>& b,
                  const std::vector<double>& w, double rtol, int restart, int max_iter);

}  // namespace motslab
