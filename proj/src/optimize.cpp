#include "lsmcmc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace lsmcmc {

SimplexResult nelder_mead(const std::function<double(const VectorXd &)> &f,
                          const VectorXd &x0, const VectorXd &step,
                          const VectorXd &lower, const VectorXd &upper,
                          int max_iterations, double ftol) {
  const Index n = x0.size();
  require(step.size() == n && lower.size() == n && upper.size() == n,
          "nelder_mead: dimension mismatch");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const auto project = [&](const VectorXd &x) -> VectorXd {
    return x.cwiseMax(lower).cwiseMin(upper);
  };
  const auto eval = [&](const VectorXd &x) {
    const double v = f(x);
    return std::isfinite(v) ? v : kInf;
  };

  std::vector<VectorXd> pts;
  std::vector<double> vals;
  pts.push_back(project(x0));
  for (Index i = 0; i < n; ++i) {
    VectorXd x = pts.front();
    x[i] += step[i];
    // Step inward if the push lands on the wall.
    if (x[i] > upper[i])
      x[i] = pts.front()[i] - step[i];
    pts.push_back(project(x));
  }
  for (const auto &p : pts)
    vals.push_back(eval(p));

  std::vector<std::size_t> order(pts.size());
  SimplexResult res;
  int it = 0;
  for (; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(),
                      second = order[order.size() - 2];
    if (std::isfinite(vals[worst]) &&
        std::abs(vals[worst] - vals[best]) <=
            ftol * (1.0 + std::abs(vals[best]))) {
      res.converged = true;
      break;
    }

    VectorXd centroid = VectorXd::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != worst)
        centroid += pts[i];
    centroid /= static_cast<double>(n);

    const VectorXd xr = project(centroid + (centroid - pts[worst]));
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const VectorXd xe = project(centroid + 2.0 * (centroid - pts[worst]));
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const VectorXd xc = outside
                            ? project(centroid + 0.5 * (xr - centroid))
                            : project(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    // shrink toward the best vertex
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best)
        continue;
      pts[i] = project(pts[best] + 0.5 * (pts[i] - pts[best]));
      vals[i] = eval(pts[i]);
    }
  }
  const auto best = static_cast<std::size_t>(
      std::min_element(vals.begin(), vals.end()) - vals.begin());
  res.x = pts[best];
  res.value = vals[best];
  res.iterations = it;
  return res;
}

} // namespace lsmcmc
