#ifndef LSMCMC_DESIGN_HPP
#define LSMCMC_DESIGN_HPP

#include "lsmcmc/core.hpp"
#include "lsmcmc/random.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lsmcmc {

/// Closed box [lower, upper] in natural units.
class Bounds {
public:
  Bounds() = default;
  Bounds(VectorXd lower, VectorXd upper);

  /// Same interval [lo, hi] on every one of `dims` axes.
  static Bounds uniform(Index dims, double lo, double hi);

  Index dims() const noexcept { return lower_.size(); }
  const VectorXd &lower() const noexcept { return lower_; }
  const VectorXd &upper() const noexcept { return upper_; }
  VectorXd width() const { return upper_ - lower_; }

  bool contains(const VectorXd &theta) const;

private:
  VectorXd lower_;
  VectorXd upper_;
};

/// Design points (rows, natural units) plus optional responses.
struct Design {
  MatrixXd points;
  std::optional<MatrixXd> responses;
  std::vector<std::string> input_names;
  std::vector<std::string> response_names;

  Index size() const noexcept { return points.rows(); }
  Index dims() const noexcept { return points.cols(); }
  bool has_responses() const noexcept { return responses.has_value(); }
};

/// Deterministic vector-valued function on natural-unit inputs.
struct EvaluationInterface {
  Index dims_in = 0;
  Index dims_out = 0;
  std::function<VectorXd(const VectorXd &)> eval;

  VectorXd operator()(const VectorXd &theta) const { return eval(theta); }
};

/// Randomized Latin hypercube: one point per stratum per axis, jittered
/// uniformly inside each stratum.
Design latin_hypercube(Index n, const Bounds &bounds, Rng &rng);
Design latin_hypercube(Index n, const Bounds &bounds, std::uint64_t seed);

VectorXd scale_to_unit(const VectorXd &theta, const Bounds &bounds);
VectorXd unscale_from_unit(const VectorXd &unit, const Bounds &bounds);

/// Row-wise versions, without the support check.
MatrixXd scale_rows_to_unit(const MatrixXd &points, const Bounds &bounds);

Design evaluate_design(const Design &design, const EvaluationInterface &f);

void write_design_csv(std::ostream &out, const Design &design);
void write_design_csv(const std::string &path, const Design &design);

/// Header is theta_1..theta_d then response_1..response_m. Columns whose
/// name starts with `response` are read as responses, all others as inputs.
Design read_design_csv(std::istream &in);
Design read_design_csv(const std::string &path);

} // namespace lsmcmc

#endif
