#include "lsmcmc/targets.hpp"

#include <algorithm>
#include <memory>

namespace lsmcmc {

Gauss100::Gauss100()
    : mu_(VectorXd::LinSpaced(kDims, 1.0, static_cast<double>(kDims))),
      cov_(MatrixXd::Identity(kDims, kDims) * 50.0) {
  const auto set = [this](Index a, Index b, double v) {
    cov_(index_of(a), index_of(b)) = v;
    cov_(index_of(b), index_of(a)) = v;
  };
  set(1, 2, 30.0);
  set(5, 10, -40.0);

  Eigen::LLT<MatrixXd> llt(cov_);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::Numerical,
                "gauss100 covariance is not positive definite");
  precision_ = llt.solve(MatrixXd::Identity(kDims, kDims));
  precision_ = (0.5 * (precision_ + precision_.transpose())).eval();
}

double Gauss100::mahalanobis2(const VectorXd &theta) const {
  require(theta.size() == kDims, "gauss100 expects 100 inputs, got " +
                                     std::to_string(theta.size()));
  const VectorXd delta = theta - mu_;
  return delta.dot(precision_ * delta);
}

double Gauss100::operator()(const VectorXd &theta) const {
  return kPeak * std::exp(-0.5 * mahalanobis2(theta));
}

double gauss100(const VectorXd &theta) {
  static const Gauss100 g;
  return g(theta);
}

VectorXd synthetic3(const VectorXd &t) {
  require(t.size() == 3, "synthetic3 expects 3 inputs");
  VectorXd r(3);
  r << t[0] + t[1] + t[2], t[0] - t[1] + 0.5 * t[2] * t[2],
      t[2] + 0.5 * t[0] * t[1];
  return r;
}

namespace {

EvaluationInterface scalar2(double (*fn)(double, double)) {
  return {2, 1, [fn](const VectorXd &t) {
            require(t.size() == 2, "expected 2 inputs");
            return VectorXd::Constant(1, fn(t[0], t[1]));
          }};
}

} // namespace

Benchmark benchmark(const std::string &name) {
  if (name == "two_bump")
    return {name, scalar2(&two_bump<double>), Bounds::uniform(2, -4.0, 4.0)};
  if (name == "goldstein_price")
    return {name, scalar2(&goldstein_price<double>),
            Bounds::uniform(2, -2.0, 2.0)};
  if (name == "gauss100") {
    auto g = std::make_shared<const Gauss100>();
    // Box of +-50 around each centre; the 1000-level set lies well inside.
    Bounds box(g->mean().array() - 50.0, g->mean().array() + 50.0);
    return {name,
            {Gauss100::kDims, 1,
             [g](const VectorXd &t) { return VectorXd::Constant(1, (*g)(t)); }},
            box};
  }
  if (name == "synthetic3")
    return {name, {3, 3, &synthetic3}, Bounds::uniform(3, 0.0, 1.0)};
  if (name == "twin_linear")
    return {name,
            {2, 2,
             [](const VectorXd &t) {
               require(t.size() == 2, "expected 2 inputs");
               return VectorXd::Constant(2, t[0]);
             }},
            Bounds::uniform(2, 0.0, 1.0)};
  std::string known;
  for (const auto &n : benchmark_names())
    known += (known.empty() ? "" : ", ") + n;
  throw invalid_argument("unknown target function '" + name +
                         "' (known: " + known + ")");
}

std::vector<std::string> benchmark_names() {
  return {"two_bump", "goldstein_price", "gauss100", "synthetic3",
          "twin_linear"};
}

} // namespace lsmcmc
