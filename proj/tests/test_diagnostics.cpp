#include "lsmcmc/diagnostics.hpp"
#include "lsmcmc/targets.hpp"

#include "support.hpp"

#include <sstream>

using namespace lsmcmc;

namespace {

Chain chain_from(const MatrixXd &theta, const MatrixXd &resp,
                 std::vector<bool> acc) {
  Chain c;
  c.theta = theta;
  c.responses = resp;
  c.accepted.resize(static_cast<Index>(acc.size()));
  for (std::size_t i = 0; i < acc.size(); ++i)
    c.accepted[static_cast<Index>(i)] = acc[i];
  return c;
}

} // namespace

TEST_CASE("straddle score") {
  CHECK(straddle(0.0, 0.7, 0.7) == 0.0);
  CHECK(straddle(1.0, 0.6, 0.6) == doctest::Approx(1.96).epsilon(1e-15));
  CHECK(std::abs(straddle(0.5, 1.0, 0.6) - 0.58) < 1e-12);
  CHECK_ERROR_KIND(straddle(-1.0, 0.0, 0.0), ErrorKind::InvalidArgument);
}

TEST_CASE("normal cdf and KS statistic") {
  CHECK(normal_cdf(0.0, 0.0, 1.0) == 0.5);
  CHECK(std::abs(normal_cdf(1.96, 0.0, 1.0) - 0.9750021) < 1e-7);
  CHECK(ks_statistic(std::vector<double>(50, 3.0), 3.0, 2.0) == 0.5);

  Rng rng(4);
  std::vector<double> shifted(1000);
  for (auto &x : shifted)
    x = rng.normal(5.0, 1.0);
  CHECK(ks_statistic(shifted, 0.0, 1.0) > 0.9);

  int good = 0;
  for (int rep = 0; rep < 20; ++rep) {
    Rng r = Rng(100).split(rep);
    std::vector<double> s(100000);
    for (auto &x : s)
      x = r.normal(2.0, 0.5);
    good += ks_statistic(s, 2.0, 0.25) < 0.01;
  }
  CHECK(good >= 19);
  CHECK_ERROR_KIND(ks_statistic({1.0, 2.0}, 0.0, 1.0), ErrorKind::InvalidArgument);
}

TEST_CASE("summary of trivial chains") {
  const TargetSpec t = TargetSpec::scalar(0.6, 0.01);
  SUBCASE("all rejected") {
    const Chain c = chain_from(MatrixXd::Zero(5, 2), MatrixXd::Constant(5, 1, 0.6),
                               {false, false, false, false, false});
    const auto s = summarize(c, t, 0);
    CHECK(s.acceptance_rate == 0.0);
    CHECK(s.n_unique == 1);
    CHECK(s.coverage_2sigma[0] == 1.0);
  }
  SUBCASE("all accepted, distinct") {
    MatrixXd th(5, 1);
    th << 0, 1, 2, 3, 4;
    const Chain c = chain_from(th, th, {false, true, true, true, true});
    const auto s = summarize(c, t, 0);
    CHECK(s.acceptance_rate == 1.0);
    CHECK(s.n_unique == 5);
    CHECK(s.response_mean[0] == 2.0);
  }
  SUBCASE("burn-in must leave rows") {
    const Chain c = chain_from(MatrixXd::Zero(3, 1), MatrixXd::Zero(3, 1),
                               {false, false, false});
    CHECK_ERROR_KIND(summarize(c, t, 3), ErrorKind::InvalidArgument);
  }
}

TEST_CASE("empirical correlation") {
  MatrixXd th(4, 3);
  th << 1, 2, 0, 2, 4, 0, 3, 6, 0, 4, 8, 0;
  const Chain c = chain_from(th, th.col(0), {false, true, true, true});
  CHECK(empirical_correlation(c, 0, 0, 0) == 1.0);
  CHECK(std::abs(empirical_correlation(c, 0, 1, 0) - 1.0) < 1e-12);
  CHECK_ERROR_KIND(empirical_correlation(c, 0, 2, 0), ErrorKind::Numerical);
}

TEST_CASE("generalized chain coverage matches the stationary normal") {
  Rng rng(31);
  const TargetSpec t((VectorXd(2) << 1.0, -3.0).finished(),
                     (VectorXd(2) << 0.5, 2.0).finished());
  const Chain c = run_generalized_mcmc(t, ProposalSpec((VectorXd(2) << 1.0, 4.0).finished()),
                                       t.c, 100000, rng);
  const VectorXd cov = tolerance_coverage(c, t, 1000);
  for (Index i = 0; i < 2; ++i) {
    CHECK(cov[i] >= 0.93);
    CHECK(cov[i] <= 0.97);
  }
}

TEST_CASE("Sobol first-order indices on analytic functions") {
  const Bounds unit = Bounds::uniform(2, 0.0, 1.0);
  const EvaluationInterface only_first{2, 1, [](const VectorXd &t) {
                                         return VectorXd::Constant(1, t[0]).eval();
                                       }};
  const auto s1 = sobol_first_order(only_first, unit, 10000, 1);
  CHECK(std::abs(s1.first_order[0] - 1.0) < 0.05);
  CHECK(std::abs(s1.first_order[1]) < 0.05);

  const EvaluationInterface additive{2, 1, [](const VectorXd &t) {
                                       return VectorXd::Constant(1, t[0] + t[1]).eval();
                                     }};
  const auto s2 = sobol_first_order(additive, unit, 10000, 2);
  CHECK(std::abs(s2.first_order[0] - 0.5) < 0.05);
  CHECK(std::abs(s2.first_order[1] - 0.5) < 0.05);

  // On [-1,1]^2 the product has zero main effects: all variance is
  // interaction.
  const EvaluationInterface product{2, 1, [](const VectorXd &t) {
                                      return VectorXd::Constant(1, t[0] * t[1]).eval();
                                    }};
  const auto s3 = sobol_first_order(product, Bounds::uniform(2, -1.0, 1.0), 10000, 3);
  CHECK(s3.first_order.sum() < 0.05);
  CHECK(std::abs(s3.variance - 1.0 / 9.0) < 0.01);

  const EvaluationInterface flat{2, 1, [](const VectorXd &) {
                                   return VectorXd::Ones(1).eval();
                                 }};
  CHECK_ERROR_KIND(sobol_first_order(flat, unit, 1000, 4), ErrorKind::Numerical);
}

TEST_CASE("batch means standard error") {
  Rng rng(8);
  VectorXd iid(100000);
  for (Index i = 0; i < iid.size(); ++i)
    iid[i] = rng.normal();
  CHECK(std::abs(batch_means_se(iid) / (1.0 / std::sqrt(1e5)) - 1.0) < 0.3);

  // AR(1) with phi = 0.9 inflates the variance of the mean by (1+phi)/(1-phi).
  VectorXd ar(100000);
  ar[0] = 0;
  for (Index i = 1; i < ar.size(); ++i)
    ar[i] = 0.9 * ar[i - 1] + rng.normal();
  const double expected = std::sqrt(1.0 / (1 - 0.81) * 19.0 / 1e5);
  CHECK(std::abs(batch_means_se(ar) / expected - 1.0) < 0.35);
}

TEST_CASE("histogram bins and CSV") {
  const VectorXd v = (VectorXd(5) << 0.0, 0.1, 0.5, 0.9, 1.0).finished();
  const Histogram h = histogram(v, 2);
  REQUIRE(h.count.size() == 2);
  CHECK(h.count[0] == 2);
  CHECK(h.count[1] == 3);
  CHECK(h.lo[0] == 0.0);
  CHECK(h.hi[1] == 1.0);
  std::ostringstream out;
  write_histogram_csv(out, h);
  CHECK(out.str().rfind("value_bin_lo,value_bin_hi,count\n", 0) == 0);

  const Histogram flat = histogram(VectorXd::Constant(3, 2.0), 4);
  long long total = 0;
  for (auto c : flat.count)
    total += c;
  CHECK(total == 3);
}
