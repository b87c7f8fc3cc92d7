#ifndef LSMCMC_TARGETS_HPP
#define LSMCMC_TARGETS_HPP

#include "lsmcmc/core.hpp"
#include "lsmcmc/design.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace lsmcmc {

/// Two Gaussian bumps: height 1 at (2,2) and height 2 at (-2,-2).
template <typename S> S two_bump(S t1, S t2) {
  using std::exp;
  const S a = (t1 - S(2)) * (t1 - S(2)) + (t2 - S(2)) * (t2 - S(2));
  const S b = (t1 + S(2)) * (t1 + S(2)) + (t2 + S(2)) * (t2 + S(2));
  return exp(-a) + S(2) * exp(-b);
}

/// Goldstein-Price test function; minimum 3 at (0,-1).
template <typename S> S goldstein_price(S t1, S t2) {
  const S s = t1 + t2 + S(1);
  const S p = S(19) - S(14) * t1 + S(3) * t1 * t1 - S(14) * t2 +
              S(6) * t1 * t2 + S(3) * t2 * t2;
  const S u = S(2) * t1 - S(3) * t2;
  const S q = S(18) - S(32) * t1 + S(12) * t1 * t1 + S(48) * t2 -
              S(36) * t1 * t2 + S(27) * t2 * t2;
  return (S(1) + s * s * p) * (S(30) + u * u * q);
}

/// Unnormalized 100-input Gaussian kernel scaled to peak 10000 at
/// mu = (1, 2, ..., 100).
///
/// Covariance: 50 on the diagonal, +30 between inputs 1 and 2, -40 between
/// inputs 5 and 10. Input labels are 1-based; storage index = label - 1.
/// The precision matrix is factorized once at construction.
class Gauss100 {
public:
  static constexpr Index kDims = 100;
  static constexpr double kPeak = 10000.0;

  Gauss100();

  double operator()(const VectorXd &theta) const;

  /// Squared Mahalanobis distance (theta - mu)^T Sigma^{-1} (theta - mu).
  double mahalanobis2(const VectorXd &theta) const;

  const VectorXd &mean() const noexcept { return mu_; }
  const MatrixXd &covariance() const noexcept { return cov_; }
  const MatrixXd &precision() const noexcept { return precision_; }

  /// Storage index for a 1-based input label.
  static constexpr Index index_of(Index label) noexcept { return label - 1; }

private:
  VectorXd mu_;
  MatrixXd cov_;
  MatrixXd precision_;
};

double gauss100(const VectorXd &theta);

/// Three smooth responses on [0,1]^3 standing in for a multi-output
/// simulator:
///   r1 = t1 + t2 + t3
///   r2 = t1 - t2 + t3^2 / 2
///   r3 = t3 + t1 t2 / 2
VectorXd synthetic3(const VectorXd &theta);

/// A registered benchmark: evaluation contract plus its canonical box.
struct Benchmark {
  std::string name;
  EvaluationInterface f;
  Bounds bounds;
};

/// Names: two_bump, goldstein_price, gauss100, synthetic3, twin_linear.
/// twin_linear maps (t1, t2) to (t1, t1) on [0,1]^2; two copies of one
/// response make conflicting targets easy to pose.
Benchmark benchmark(const std::string &name);

std::vector<std::string> benchmark_names();

} // namespace lsmcmc

#endif
