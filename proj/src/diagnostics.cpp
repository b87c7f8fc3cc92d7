#include "lsmcmc/diagnostics.hpp"
#include "lsmcmc/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

namespace lsmcmc {

VectorXd tolerance_coverage(const Chain &chain, const TargetSpec &target,
                            Index burn_in) {
  require(burn_in >= 0 && burn_in < chain.size(),
          "tolerance_coverage: burn-in must be smaller than the chain length");
  require(chain.response_dims() == target.dims(),
          "tolerance_coverage: response and target dimensions differ");
  const Index n = chain.size() - burn_in;
  const auto post = chain.responses.bottomRows(n);
  VectorXd cov(target.dims());
  for (Index i = 0; i < target.dims(); ++i) {
    const double half = 2.0 * std::sqrt(target.tol_diag[i]);
    cov[i] = static_cast<double>(
                 ((post.col(i).array() - target.c[i]).abs() <= half).count()) /
             static_cast<double>(n);
  }
  return cov;
}

double empirical_correlation(const Chain &chain, Index i, Index j,
                             Index burn_in) {
  require(i >= 0 && i < chain.dims() && j >= 0 && j < chain.dims(),
          "empirical_correlation: index out of range");
  require(burn_in >= 0 && chain.size() - burn_in >= 2,
          "empirical_correlation: need at least 2 post-burn-in rows");
  const Index n = chain.size() - burn_in;
  const VectorXd a = chain.theta.col(i).tail(n);
  const VectorXd b = chain.theta.col(j).tail(n);
  const VectorXd ac = a.array() - a.mean();
  const VectorXd bc = b.array() - b.mean();
  const double saa = ac.squaredNorm(), sbb = bc.squaredNorm();
  if (saa == 0.0 || sbb == 0.0)
    throw Error(ErrorKind::Numerical,
                "empirical_correlation: zero variance in a column");
  if (i == j)
    return 1.0;
  return std::clamp(ac.dot(bc) / std::sqrt(saa * sbb), -1.0, 1.0);
}

SobolIndices sobol_first_order(const EvaluationInterface &f,
                               const Bounds &bounds, Index n,
                               std::uint64_t seed) {
  require(n >= 100, "sobol_first_order: n must be >= 100");
  require(f.dims_in == bounds.dims(),
          "sobol_first_order: function and bounds dimensions differ");
  const Index d = bounds.dims();
  Rng rng(seed);
  const auto draw = [&] {
    MatrixXd m(n, d);
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < d; ++c)
        m(r, c) = rng.uniform(bounds.lower()[c], bounds.upper()[c]);
    return m;
  };
  const MatrixXd a = draw(), b = draw();
  const auto eval_rows = [&](const MatrixXd &m) {
    VectorXd y(n);
    for (Index r = 0; r < n; ++r)
      y[r] = f(m.row(r).transpose())[0];
    return y;
  };
  const VectorXd fa = eval_rows(a), fb = eval_rows(b);
  VectorXd all(2 * n);
  all << fa, fb;
  const double var = (all.array() - all.mean()).square().sum() /
                     static_cast<double>(2 * n - 1);
  if (!(var > 0.0))
    throw Error(ErrorKind::Numerical, "sobol_first_order: zero total variance");

  SobolIndices out;
  out.variance = var;
  out.raw.resize(d);
  for (Index i = 0; i < d; ++i) {
    MatrixXd ab = a;
    ab.col(i) = b.col(i);
    const VectorXd fab = eval_rows(ab);
    const double half_msd =
        (fb - fab).squaredNorm() / (2.0 * static_cast<double>(n));
    out.raw[i] = (var - half_msd) / var;
  }
  out.first_order = out.raw.cwiseMax(0.0).cwiseMin(1.0);
  return out;
}

double normal_cdf(double x, double mean, double var) {
  return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * var));
}

double ks_statistic(std::vector<double> samples, double mean, double var) {
  require(samples.size() >= 10, "ks_statistic: need at least 10 samples");
  require(var > 0.0, "ks_statistic: variance must be positive");
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = normal_cdf(samples[i], mean, var);
    d = std::max({d, static_cast<double>(i + 1) / n - cdf,
                  cdf - static_cast<double>(i) / n});
  }
  return d;
}

Index count_unique(const MatrixXd &rows) {
  std::vector<std::vector<double>> v;
  v.reserve(static_cast<std::size_t>(rows.rows()));
  for (Index i = 0; i < rows.rows(); ++i) {
    const Eigen::RowVectorXd r = rows.row(i);
    v.emplace_back(r.data(), r.data() + r.size());
  }
  std::sort(v.begin(), v.end());
  return static_cast<Index>(std::unique(v.begin(), v.end()) - v.begin());
}

ChainSummary summarize(const Chain &chain, const TargetSpec &target,
                       Index burn_in) {
  ChainSummary s;
  s.acceptance_rate = chain.acceptance_rate();
  s.n_unique = count_unique(chain.theta);
  s.coverage_2sigma = tolerance_coverage(chain, target, burn_in);
  const auto post = chain.responses.bottomRows(chain.size() - burn_in);
  s.response_mean = post.colwise().mean().transpose();
  const Index n = post.rows();
  s.response_std.resize(post.cols());
  for (Index j = 0; j < post.cols(); ++j)
    s.response_std[j] =
        n > 1 ? std::sqrt((post.col(j).array() - s.response_mean[j])
                              .square()
                              .sum() /
                          static_cast<double>(n - 1))
              : 0.0;
  return s;
}

double batch_means_se(const VectorXd &series, Index n_batches) {
  require(n_batches >= 2, "batch_means_se: need at least 2 batches");
  const Index len = series.size() / n_batches;
  require(len >= 1, "batch_means_se: series shorter than the batch count");
  VectorXd means(n_batches);
  for (Index b = 0; b < n_batches; ++b)
    means[b] = series.segment(b * len, len).mean();
  const double m = means.mean();
  const double var = (means.array() - m).square().sum() /
                     static_cast<double>(n_batches - 1);
  return std::sqrt(var / static_cast<double>(n_batches));
}

Histogram histogram(const VectorXd &values, Index bins) {
  require(bins >= 1, "histogram: need at least one bin");
  require(values.size() >= 1, "histogram: no values");
  double lo = values.minCoeff(), hi = values.maxCoeff();
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double w = (hi - lo) / static_cast<double>(bins);
  Histogram h;
  h.count.assign(static_cast<std::size_t>(bins), 0);
  for (Index b = 0; b < bins; ++b) {
    h.lo.push_back(lo + w * static_cast<double>(b));
    h.hi.push_back(b + 1 == bins ? hi : lo + w * static_cast<double>(b + 1));
  }
  for (Index i = 0; i < values.size(); ++i) {
    auto b = static_cast<Index>((values[i] - lo) / w);
    b = std::clamp(b, Index{0}, bins - 1);
    ++h.count[static_cast<std::size_t>(b)];
  }
  return h;
}

void write_histogram_csv(std::ostream &out, const Histogram &h) {
  out << "value_bin_lo,value_bin_hi,count\n";
  for (std::size_t b = 0; b < h.count.size(); ++b)
    out << csv::format_double(h.lo[b]) << ',' << csv::format_double(h.hi[b])
        << ',' << h.count[b] << '\n';
}

void write_histogram_csv(const std::string &path, const Histogram &h) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  write_histogram_csv(out, h);
}

} // namespace lsmcmc
