#ifndef LSMCMC_OPTIMIZE_HPP
#define LSMCMC_OPTIMIZE_HPP

#include "lsmcmc/core.hpp"

#include <functional>

namespace lsmcmc {

struct SimplexResult {
  VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead minimization inside a box. Every trial point is projected
/// onto [lower, upper] before evaluation; non-finite objective values are
/// treated as +inf.
SimplexResult nelder_mead(const std::function<double(const VectorXd &)> &f,
                          const VectorXd &x0, const VectorXd &step,
                          const VectorXd &lower, const VectorXd &upper,
                          int max_iterations, double ftol = 1e-10);

} // namespace lsmcmc

#endif
