#ifndef LSMCMC_CORE_HPP
#define LSMCMC_CORE_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lsmcmc {

template <typename S> using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Vec<double>;
using MatrixXd = Matrix<double>;
using Index = Eigen::Index;

/// Error categories. Each maps to a distinct CLI exit code.
enum class ErrorKind {
  InvalidArgument,
  OutOfSupport,
  InvalidStart,
  Numerical,
  Evaluation,
  Io,
  Format,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

inline Error invalid_argument(const std::string &what) {
  return Error(ErrorKind::InvalidArgument, what);
}

inline void require(bool cond, const std::string &what) {
  if (!cond)
    throw invalid_argument(what);
}

/// Raised when evaluating a design row fails; carries the offending row.
class EvaluationError : public Error {
public:
  EvaluationError(Index row, const std::string &what)
      : Error(ErrorKind::Evaluation,
              "evaluation failed at row " + std::to_string(row) + ": " + what),
        row_(row) {}

  Index row() const noexcept { return row_; }

private:
  Index row_;
};

} // namespace lsmcmc

#endif
