#ifndef LSMCMC_SURROGATE_HPP
#define LSMCMC_SURROGATE_HPP

#include "lsmcmc/core.hpp"
#include "lsmcmc/design.hpp"
#include "lsmcmc/random.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace lsmcmc {

struct GpHyperparams {
  VectorXd lengthscales; // per input, unit-scaled coordinates
  double signal_variance = 1.0;
  double nugget = 0.0;
};

/// Anisotropic squared-exponential covariance.
template <typename DA, typename DB>
typename DA::Scalar kernel(const Eigen::MatrixBase<DA> &a,
                           const Eigen::MatrixBase<DB> &b,
                           const GpHyperparams &hyper) {
  using S = typename DA::Scalar;
  require(a.size() == b.size() && a.size() == hyper.lengthscales.size(),
          "kernel: dimension mismatch");
  const auto r = (a - b).array() / hyper.lengthscales.array().template cast<S>();
  using std::exp;
  return S(hyper.signal_variance) * exp(S(-0.5) * r.square().sum());
}

/// Cross-covariance matrix between the rows of `a` and the rows of `b`.
MatrixXd kernel_matrix(const MatrixXd &a, const MatrixXd &b,
                       const GpHyperparams &hyper);

struct FitSettings {
  int starts = 8;
  int max_iterations = 2000;
  /// Nugget lower bound as a fraction of the signal variance.
  double nugget_floor = 1e-8;
  std::uint64_t seed = 0;
};

struct FitReport {
  std::vector<GpHyperparams> start_hyper;
  std::vector<double> start_lml;
  std::vector<double> final_lml;
  double best_lml = 0.0;
  std::size_t best_start = 0;
};

/// Single-response GP in unit-scaled input space. Immutable after
/// construction; all queries are const and thread-compatible.
class GpSurrogate {
public:
  /// Factorizes K + nugget*I. Throws ErrorKind::Numerical when the matrix is
  /// not positive definite.
  GpSurrogate(MatrixXd unit_points, const VectorXd &responses,
              GpHyperparams hyper);

  double predict_mean(const VectorXd &unit) const;
  double predict_var(const VectorXd &unit) const;
  /// Mean and variance sharing one cross-kernel evaluation.
  std::pair<double, double> predict(const VectorXd &unit) const;
  /// Draw from N(mean, var); returns the mean without touching `rng` when
  /// the variance is zero.
  double sample_marginal(const VectorXd &unit, Rng &rng) const;

  double log_marginal_likelihood() const noexcept { return lml_; }

  const GpHyperparams &hyper() const noexcept { return hyper_; }
  const MatrixXd &train_points() const noexcept { return x_; }
  /// Centered responses; add mean_offset() for natural values.
  const VectorXd &train_responses() const noexcept { return y_; }
  double mean_offset() const noexcept { return offset_; }
  const VectorXd &raw_responses() const noexcept { return raw_; }
  const MatrixXd &chol_factor() const noexcept { return chol_; }
  const VectorXd &alpha() const noexcept { return alpha_; }
  Index dims() const noexcept { return x_.cols(); }

private:
  void check_support(const VectorXd &unit) const;

  GpHyperparams hyper_;
  MatrixXd x_;
  VectorXd y_;
  VectorXd raw_;
  double offset_ = 0.0;
  MatrixXd chol_;
  VectorXd alpha_;
  double lml_ = 0.0;
};

/// Log evidence  -1/2 y^T alpha - sum log diag(L) - n/2 log 2pi  of the
/// centered responses. Throws ErrorKind::Numerical if K + nugget*I cannot
/// be factorized.
double log_marginal_likelihood(const GpHyperparams &hyper,
                               const MatrixXd &unit_points,
                               const VectorXd &responses);
double log_marginal_likelihood(const GpHyperparams &hyper,
                               const Design &unit_design, Index response_col);

/// Multi-start simplex search over log-hyperparameters.
GpSurrogate fit_gp(const MatrixXd &unit_points, const VectorXd &responses,
                   const FitSettings &settings, FitReport *report = nullptr);
GpSurrogate fit_gp(const Design &unit_design, Index response_col,
                   const FitSettings &settings, FitReport *report = nullptr);

/// Per-response GPs plus the box used to scale natural inputs.
class SurrogateModel {
public:
  SurrogateModel(Bounds bounds, std::vector<GpSurrogate> gps,
                 std::vector<std::string> response_names = {});

  Index dims_in() const noexcept { return bounds_.dims(); }
  Index dims_out() const noexcept { return static_cast<Index>(gps_.size()); }
  const Bounds &bounds() const noexcept { return bounds_; }
  const std::vector<GpSurrogate> &gps() const noexcept { return gps_; }
  const std::vector<std::string> &response_names() const noexcept {
    return names_;
  }

  /// Natural-unit queries; throw ErrorKind::OutOfSupport outside the box.
  VectorXd mean(const VectorXd &theta) const;
  VectorXd variance(const VectorXd &theta) const;
  void predict(const VectorXd &theta, VectorXd &mean, VectorXd &var) const;

  EvaluationInterface mean_function() const;

private:
  Bounds bounds_;
  std::vector<GpSurrogate> gps_;
  std::vector<std::string> names_;
};

/// Fits one GP per response column of a natural-unit design.
SurrogateModel fit_surrogate(const Design &design, const Bounds &bounds,
                             const FitSettings &settings,
                             std::vector<FitReport> *reports = nullptr);

/// JSON document: format tag, version, kernel, bounds, unit-scaled training
/// inputs and, per response, hyperparameters and raw training responses.
/// The Cholesky factor is recomputed on load.
std::string model_to_json(const SurrogateModel &model);
SurrogateModel model_from_json(const std::string &text);
void save_model(const std::string &path, const SurrogateModel &model);
SurrogateModel load_model(const std::string &path);

} // namespace lsmcmc

#endif
