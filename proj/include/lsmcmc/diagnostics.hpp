#ifndef LSMCMC_DIAGNOSTICS_HPP
#define LSMCMC_DIAGNOSTICS_HPP

#include "lsmcmc/core.hpp"
#include "lsmcmc/design.hpp"
#include "lsmcmc/sampler.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lsmcmc {

struct ChainSummary {
  double acceptance_rate = 0.0;
  Index n_unique = 0;
  VectorXd coverage_2sigma;
  VectorXd response_mean;
  VectorXd response_std;
};

/// Per response, the post-burn-in fraction with |response - c| <= 2 sqrt(tol).
VectorXd tolerance_coverage(const Chain &chain, const TargetSpec &target,
                            Index burn_in);

/// Pearson correlation of theta columns i and j (0-based) after burn-in.
double empirical_correlation(const Chain &chain, Index i, Index j,
                             Index burn_in);

/// Straddle acquisition score 1.96 sigma - |f - t|.
inline double straddle(double sigma_hat, double f_hat, double t) {
  require(sigma_hat >= 0.0, "straddle: sigma must be non-negative");
  return 1.96 * sigma_hat - std::abs(f_hat - t);
}

struct SobolIndices {
  VectorXd first_order; // clamped to [0, 1]
  VectorXd raw;
  double variance = 0.0;
};

/// First-order indices by the Jansen pick-freeze estimator on uniform
/// samples within `bounds`. Uses the first response of `f`.
SobolIndices sobol_first_order(const EvaluationInterface &f,
                               const Bounds &bounds, Index n,
                               std::uint64_t seed);

double normal_cdf(double x, double mean, double var);

/// One-sample Kolmogorov-Smirnov statistic against N(mean, var).
double ks_statistic(std::vector<double> samples, double mean, double var);

/// Distinct theta rows in the whole chain.
Index count_unique(const MatrixXd &rows);

ChainSummary summarize(const Chain &chain, const TargetSpec &target,
                       Index burn_in);

/// Batch-means standard error of the mean of an autocorrelated series.
double batch_means_se(const VectorXd &series, Index n_batches = 50);

struct Histogram {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<long long> count;
};

/// Equal-width bins over [min, max] of `values`.
Histogram histogram(const VectorXd &values, Index bins);
void write_histogram_csv(std::ostream &out, const Histogram &h);
void write_histogram_csv(const std::string &path, const Histogram &h);

} // namespace lsmcmc

#endif
