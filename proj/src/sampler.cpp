#include "lsmcmc/sampler.hpp"

#include <optional>

namespace lsmcmc {

TargetSpec::TargetSpec(VectorXd c_, VectorXd tol_diag_)
    : c(std::move(c_)), tol_diag(std::move(tol_diag_)) {
  require(c.size() >= 1, "target: c must be non-empty");
  require(c.size() == tol_diag.size(), "target: c and tolerance lengths differ");
  require((tol_diag.array() > 0.0).all(),
          "target: tolerance variances must be positive");
}

TargetSpec TargetSpec::scalar(double c, double tol_variance) {
  return TargetSpec(VectorXd::Constant(1, c),
                    VectorXd::Constant(1, tol_variance));
}

ProposalSpec::ProposalSpec(VectorXd pro_diag_, ProposalMode mode_)
    : pro_diag(std::move(pro_diag_)), mode(mode_) {
  require(pro_diag.size() >= 1, "proposal: variance vector must be non-empty");
  require((pro_diag.array() > 0.0).all(),
          "proposal: variances must be positive");
}

double Chain::acceptance_rate() const {
  if (size() < 2)
    return 0.0;
  return static_cast<double>(accepted.tail(size() - 1).count()) /
         static_cast<double>(size() - 1);
}

MatrixXd post_process(const MatrixXd &rows, Index burn_in, Index thin) {
  require(burn_in >= 0 && burn_in < rows.rows(),
          "burn-in must be smaller than the chain length");
  require(thin >= 1, "thinning must be >= 1");
  const Index n = (rows.rows() - burn_in + thin - 1) / thin;
  MatrixXd out(n, rows.cols());
  for (Index i = 0; i < n; ++i)
    out.row(i) = rows.row(burn_in + i * thin);
  return out;
}

bool in_support(const Bounds &bounds, const VectorXd &theta) {
  return bounds.contains(theta);
}

namespace {

/// A scored state: the recorded response and the log target weight that
/// enters the acceptance ratio.
struct Scored {
  VectorXd response;
  double log_weight;
};

/// Returns nullopt when the candidate is rejected without an evaluation
/// (outside the support).
using Scorer = std::function<std::optional<Scored>(const VectorXd &, Rng &)>;

/// Shared random-walk loop. Draw order per proposal: the proposal normals,
/// then whatever the scorer consumes, then one uniform, which is drawn even
/// when the candidate is rejected outright.
Chain drive(const ProposalSpec &proposal, const VectorXd &theta0,
            Scored start, Index n_iter, Rng &rng, const Scorer &score) {
  require(n_iter >= 1, "n_iter must be >= 1");
  const Index d = theta0.size();
  require(proposal.dims() == d,
          "proposal dimension does not match the starting point");

  Chain chain;
  chain.theta.resize(n_iter + 1, d);
  chain.responses.resize(n_iter + 1, start.response.size());
  chain.accepted.setConstant(n_iter + 1, false);

  VectorXd theta = theta0;
  Scored cur = std::move(start);
  chain.theta.row(0) = theta.transpose();
  chain.responses.row(0) = cur.response.transpose();

  const VectorXd sd = proposal.pro_diag.cwiseSqrt();
  const auto try_move = [&](const VectorXd &cand, double log_q_fwd,
                            double log_q_rev) {
    ++chain.n_proposals;
    auto scored = score(cand, rng);
    double alpha = 0.0;
    if (scored) {
      ++chain.n_evals;
      alpha = acceptance_probability(cur.log_weight, scored->log_weight,
                                     log_q_fwd, log_q_rev);
    }
    const double u = rng.uniform();
    if (u < alpha) {
      theta = cand;
      cur = std::move(*scored);
      ++chain.n_moves_accepted;
      return true;
    }
    return false;
  };

  for (Index n = 1; n <= n_iter; ++n) {
    bool moved = false;
    if (proposal.mode == ProposalMode::Joint) {
      VectorXd cand(d);
      for (Index k = 0; k < d; ++k)
        cand[k] = theta[k] + sd[k] * rng.normal();
      const double fwd = mvn_diag_logpdf(cand, theta, proposal.pro_diag);
      const double rev = mvn_diag_logpdf(theta, cand, proposal.pro_diag);
      moved = try_move(cand, fwd, rev);
    } else {
      for (Index k = 0; k < d; ++k) {
        VectorXd cand = theta;
        cand[k] += sd[k] * rng.normal();
        const auto var = proposal.pro_diag.segment(k, 1);
        const double fwd = mvn_diag_logpdf(cand.segment(k, 1), theta.segment(k, 1), var);
        const double rev = mvn_diag_logpdf(theta.segment(k, 1), cand.segment(k, 1), var);
        moved = try_move(cand, fwd, rev) || moved;
      }
    }
    chain.theta.row(n) = theta.transpose();
    chain.responses.row(n) = cur.response.transpose();
    chain.accepted[n] = moved;
  }
  return chain;
}

Error invalid_start(const std::string &what) {
  return Error(ErrorKind::InvalidStart, what);
}

void check_start_in(const Bounds &bounds, const VectorXd &theta0) {
  require(theta0.size() == bounds.dims(),
          "starting point dimension does not match bounds");
  if (!bounds.contains(theta0))
    throw invalid_start("starting point lies outside the bounds");
}

/// Draw from independent normals; components with zero variance return the
/// mean and consume nothing from the generator.
VectorXd sample_normal_diag(const VectorXd &mean, const VectorXd &var,
                            Rng &rng) {
  VectorXd s = mean;
  for (Index i = 0; i < s.size(); ++i)
    if (var[i] > 0.0)
      s[i] += std::sqrt(var[i]) * rng.normal();
  return s;
}

} // namespace

Chain run_mh(const LogDensity &log_target, const ProposalSpec &proposal,
             const VectorXd &theta0, Index n_iter, Rng &rng) {
  const double lp0 = log_target(theta0);
  if (!(lp0 > -std::numeric_limits<double>::infinity()))
    throw invalid_start("log target is -inf at the starting point");
  Scored start{VectorXd::Constant(1, lp0), lp0};
  return drive(proposal, theta0, std::move(start), n_iter, rng,
               [&](const VectorXd &cand, Rng &) -> std::optional<Scored> {
                 const double lp = log_target(cand);
                 return Scored{VectorXd::Constant(1, lp), lp};
               });
}

Chain run_abc_mcmc_hard(const LogDensity &prior_logpdf,
                        const Simulator &simulator, const VectorXd &s_obs,
                        double epsilon, const ProposalSpec &proposal,
                        const VectorXd &theta0, Index n_iter, Rng &rng) {
  require(epsilon > 0.0, "abc: epsilon must be positive");
  const double lp0 = prior_logpdf(theta0);
  if (!(lp0 > -std::numeric_limits<double>::infinity()))
    throw invalid_start("starting point outside the prior support");
  VectorXd s0 = simulator(theta0, rng);
  require(s0.size() == s_obs.size(),
          "abc: simulator output does not match s_obs");
  // The indicator multiplies only the proposal's weight, so the current
  // state keeps its prior density whether or not s0 is within epsilon.
  Scored start{std::move(s0), lp0};
  return drive(proposal, theta0, std::move(start), n_iter, rng,
               [&](const VectorXd &cand, Rng &r) -> std::optional<Scored> {
                 const double lp = prior_logpdf(cand);
                 if (lp == -std::numeric_limits<double>::infinity())
                   return std::nullopt;
                 VectorXd s = simulator(cand, r);
                 const bool inside = (s - s_obs).norm() <= epsilon;
                 return Scored{std::move(s),
                               inside ? lp
                                      : -std::numeric_limits<double>::infinity()};
               });
}

Chain run_lsmcmc_smoothed(const Predictive &surrogate, const TargetSpec &target,
                          const ProposalSpec &proposal, const Bounds &bounds,
                          const VectorXd &theta0, Index n_iter, Rng &rng) {
  require(surrogate.dims_out == target.dims(),
          "surrogate output dimension does not match target");
  require(surrogate.dims_in == bounds.dims(),
          "surrogate input dimension does not match bounds");
  check_start_in(bounds, theta0);
  VectorXd mean, var;
  const auto draw = [&](const VectorXd &theta, Rng &r) {
    surrogate.eval(theta, mean, var);
    VectorXd s = sample_normal_diag(mean, var, r);
    const double lw = mvn_diag_logpdf(s, target.c, target.tol_diag);
    return Scored{std::move(s), lw};
  };
  Scored start = draw(theta0, rng);
  return drive(proposal, theta0, std::move(start), n_iter, rng,
               [&](const VectorXd &cand, Rng &r) -> std::optional<Scored> {
                 if (!bounds.contains(cand))
                   return std::nullopt;
                 return draw(cand, r);
               });
}

Chain run_lsmcmc_mean(const EvaluationInterface &f_mean,
                      const TargetSpec &target, const ProposalSpec &proposal,
                      const Bounds &bounds, const VectorXd &theta0,
                      Index n_iter, Rng &rng) {
  require(f_mean.dims_out == target.dims(),
          "function output dimension (" + std::to_string(f_mean.dims_out) +
              ") does not match target (" + std::to_string(target.dims()) + ")");
  require(f_mean.dims_in == bounds.dims(),
          "function input dimension does not match bounds");
  check_start_in(bounds, theta0);
  const auto score = [&](const VectorXd &theta) {
    VectorXd y = f_mean(theta);
    require(y.size() == target.dims(), "function returned wrong length");
    const double lw = mvn_diag_logpdf(y, target.c, target.tol_diag);
    return Scored{std::move(y), lw};
  };
  Scored start = score(theta0);
  return drive(proposal, theta0, std::move(start), n_iter, rng,
               [&](const VectorXd &cand, Rng &) -> std::optional<Scored> {
                 if (!bounds.contains(cand))
                   return std::nullopt;
                 return score(cand);
               });
}

Chain run_generalized_mcmc(const TargetSpec &target,
                           const ProposalSpec &proposal, const VectorXd &theta0,
                           Index n_iter, Rng &rng) {
  require(theta0.size() == target.dims(),
          "starting point dimension does not match target");
  const auto score = [&](const VectorXd &theta) {
    return Scored{theta, mvn_diag_logpdf(theta, target.c, target.tol_diag)};
  };
  return drive(proposal, theta0, score(theta0), n_iter, rng,
               [&](const VectorXd &cand, Rng &) -> std::optional<Scored> {
                 return score(cand);
               });
}

} // namespace lsmcmc
