#ifndef LSMCMC_SAMPLER_HPP
#define LSMCMC_SAMPLER_HPP

#include "lsmcmc/core.hpp"
#include "lsmcmc/design.hpp"
#include "lsmcmc/random.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

namespace lsmcmc {

/// Desired response vector c and the diagonal of the tolerance covariance.
struct TargetSpec {
  VectorXd c;
  VectorXd tol_diag;

  TargetSpec() = default;
  TargetSpec(VectorXd c_, VectorXd tol_diag_);
  static TargetSpec scalar(double c, double tol_variance);

  Index dims() const noexcept { return c.size(); }
};

enum class ProposalMode { Joint, Componentwise };

/// Gaussian random-walk proposal with diagonal covariance.
struct ProposalSpec {
  VectorXd pro_diag;
  ProposalMode mode = ProposalMode::Joint;

  ProposalSpec() = default;
  ProposalSpec(VectorXd pro_diag_, ProposalMode mode_ = ProposalMode::Joint);

  Index dims() const noexcept { return pro_diag.size(); }
};

/// Sampled states. Row 0 is the starting state; row n (n >= 1) is the
/// state after iteration n, so a run of n_iter iterations has n_iter + 1
/// rows.
struct Chain {
  MatrixXd theta;
  MatrixXd responses;
  /// Row n moved away from row n-1. Always false for row 0. In
  /// componentwise mode a row counts as accepted if any component moved.
  Eigen::Array<bool, Eigen::Dynamic, 1> accepted;
  /// Target/surrogate evaluations made for proposals. The evaluation of
  /// the starting state is not counted.
  long long n_evals = 0;
  long long n_proposals = 0;
  long long n_moves_accepted = 0;

  Index size() const noexcept { return theta.rows(); }
  Index dims() const noexcept { return theta.cols(); }
  Index response_dims() const noexcept { return responses.cols(); }
  /// accepted rows / (size - 1)
  double acceptance_rate() const;
};

/// Rows [burn_in, N) taken every `thin`-th row.
MatrixXd post_process(const MatrixXd &rows, Index burn_in, Index thin = 1);

/// Sum of univariate normal log densities.
template <typename DX, typename DM, typename DV>
typename DX::Scalar mvn_diag_logpdf(const Eigen::MatrixBase<DX> &x,
                                    const Eigen::MatrixBase<DM> &mean,
                                    const Eigen::MatrixBase<DV> &var_diag) {
  using S = typename DX::Scalar;
  require(x.size() == mean.size() && x.size() == var_diag.size(),
          "mvn_diag_logpdf: length mismatch");
  require((var_diag.array() > S(0)).all(),
          "mvn_diag_logpdf: variances must be positive");
  using std::log;
  const auto v = var_diag.array();
  const auto r = x.array() - mean.array();
  return (S(-0.5) * (S(2) * S(std::numbers::pi) * v).log() -
          r.square() / (S(2) * v))
      .sum();
}

/// min{1, exp(log_ratio)}; zero for -inf or NaN ratios.
inline double acceptance_probability(double log_ratio) {
  if (!(log_ratio == log_ratio) || log_ratio == -std::numeric_limits<double>::infinity())
    return 0.0;
  return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

/// Metropolis-Hastings acceptance for a move cur -> next:
///   min{1, pi(next) q(cur|next) / (pi(cur) q(next|cur))}
inline double acceptance_probability(double log_pi_cur, double log_pi_next,
                                     double log_q_forward,
                                     double log_q_reverse) {
  if (log_pi_next == -std::numeric_limits<double>::infinity())
    return 0.0;
  return acceptance_probability(log_pi_next - log_pi_cur + log_q_reverse -
                                log_q_forward);
}

bool in_support(const Bounds &bounds, const VectorXd &theta);

using LogDensity = std::function<double(const VectorXd &)>;
using Simulator = std::function<VectorXd(const VectorXd &, Rng &)>;

/// Predictive mean and variance per response, natural-unit inputs.
struct Predictive {
  Index dims_in = 0;
  Index dims_out = 0;
  std::function<void(const VectorXd &, VectorXd &mean, VectorXd &var)> eval;
};

/// Generic random-walk Metropolis-Hastings on `log_target`. Responses hold
/// the log target of each state.
Chain run_mh(const LogDensity &log_target, const ProposalSpec &proposal,
             const VectorXd &theta0, Index n_iter, Rng &rng);

/// ABC within Metropolis-Hastings with the hard indicator
/// ||s - s_obs||_2 <= epsilon. Proposals outside the prior support are not
/// simulated. Responses carry the accepted summary statistics.
Chain run_abc_mcmc_hard(const LogDensity &prior_logpdf,
                        const Simulator &simulator, const VectorXd &s_obs,
                        double epsilon, const ProposalSpec &proposal,
                        const VectorXd &theta0, Index n_iter, Rng &rng);

/// Level-set MCMC with smoothed ABC: the proposed response is a draw from
/// the surrogate's predictive marginal, scored by N(s | c, Sigma_tol).
/// Responses carry the sampled S values.
Chain run_lsmcmc_smoothed(const Predictive &surrogate, const TargetSpec &target,
                          const ProposalSpec &proposal, const Bounds &bounds,
                          const VectorXd &theta0, Index n_iter, Rng &rng);

/// Level-set MCMC on a deterministic response (surrogate mean or the raw
/// function), scored by N(f(theta) | c, Sigma_tol). Handles m >= 1
/// responses and both proposal modes. Responses carry f at each state.
Chain run_lsmcmc_mean(const EvaluationInterface &f_mean,
                      const TargetSpec &target, const ProposalSpec &proposal,
                      const Bounds &bounds, const VectorXd &theta0,
                      Index n_iter, Rng &rng);

/// Metropolis-Hastings targeting N(theta | c, Sigma_tol) directly on the
/// input space, unbounded. Responses equal theta.
Chain run_generalized_mcmc(const TargetSpec &target,
                           const ProposalSpec &proposal, const VectorXd &theta0,
                           Index n_iter, Rng &rng);

} // namespace lsmcmc

#endif
