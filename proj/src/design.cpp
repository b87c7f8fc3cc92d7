#include "lsmcmc/design.hpp"
#include "lsmcmc/csv.hpp"

#include <fstream>
#include <numeric>
#include <ostream>

namespace lsmcmc {

Bounds::Bounds(VectorXd lower, VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  require(lower_.size() >= 1, "bounds need at least one dimension");
  require(lower_.size() == upper_.size(),
          "bounds lower/upper length mismatch");
  for (Index i = 0; i < lower_.size(); ++i)
    require(lower_[i] < upper_[i],
            "bounds: lower[" + std::to_string(i) + "] must be < upper");
}

Bounds Bounds::uniform(Index dims, double lo, double hi) {
  return Bounds(VectorXd::Constant(dims, lo), VectorXd::Constant(dims, hi));
}

bool Bounds::contains(const VectorXd &theta) const {
  require(theta.size() == dims(), "dimension mismatch against bounds");
  return (theta.array() >= lower_.array()).all() &&
         (theta.array() <= upper_.array()).all();
}

Design latin_hypercube(Index n, const Bounds &bounds, Rng &rng) {
  require(n >= 1, "latin_hypercube: n must be positive");
  const Index d = bounds.dims();
  MatrixXd unit(n, d);
  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (Index j = 0; j < d; ++j) {
    std::iota(perm.begin(), perm.end(), Index{0});
    // Fisher-Yates on our own generator so the permutation is portable.
    for (Index i = n - 1; i > 0; --i) {
      const auto k = static_cast<Index>(rng.below(static_cast<std::uint64_t>(i + 1)));
      std::swap(perm[i], perm[k]);
    }
    for (Index i = 0; i < n; ++i)
      unit(i, j) = (static_cast<double>(perm[i]) + rng.uniform_open()) /
                   static_cast<double>(n);
  }
  Design design;
  design.points.resize(n, d);
  for (Index i = 0; i < n; ++i)
    design.points.row(i) = unscale_from_unit(unit.row(i).transpose(), bounds);
  return design;
}

Design latin_hypercube(Index n, const Bounds &bounds, std::uint64_t seed) {
  Rng rng(seed);
  return latin_hypercube(n, bounds, rng);
}

VectorXd scale_to_unit(const VectorXd &theta, const Bounds &bounds) {
  if (!bounds.contains(theta))
    throw Error(ErrorKind::OutOfSupport, "scale_to_unit: point outside bounds");
  return ((theta - bounds.lower()).array() / bounds.width().array()).matrix();
}

VectorXd unscale_from_unit(const VectorXd &unit, const Bounds &bounds) {
  require(unit.size() == bounds.dims(), "dimension mismatch against bounds");
  VectorXd theta = bounds.lower().array() + unit.array() * bounds.width().array();
  // Keep the image inside the box despite rounding at the upper edge.
  return theta.cwiseMax(bounds.lower()).cwiseMin(bounds.upper());
}

MatrixXd scale_rows_to_unit(const MatrixXd &points, const Bounds &bounds) {
  require(points.cols() == bounds.dims(), "dimension mismatch against bounds");
  MatrixXd out = points.rowwise() - bounds.lower().transpose();
  return out.array().rowwise() / bounds.width().transpose().array();
}

Design evaluate_design(const Design &design, const EvaluationInterface &f) {
  require(design.dims() == f.dims_in,
          "evaluate_design: design has " + std::to_string(design.dims()) +
              " inputs, function expects " + std::to_string(f.dims_in));
  MatrixXd responses(design.size(), f.dims_out);
  for (Index i = 0; i < design.size(); ++i) {
    VectorXd y;
    try {
      y = f(design.points.row(i).transpose());
    } catch (const std::exception &e) {
      throw EvaluationError(i, e.what());
    }
    if (y.size() != f.dims_out)
      throw EvaluationError(i, "wrong number of responses");
    if (!y.allFinite())
      throw EvaluationError(i, "non-finite response");
    responses.row(i) = y.transpose();
  }
  Design out = design;
  out.responses = std::move(responses);
  return out;
}

namespace {

std::vector<std::string> default_names(const std::string &prefix, Index n) {
  std::vector<std::string> names;
  for (Index i = 1; i <= n; ++i)
    names.push_back(prefix + std::to_string(i));
  return names;
}

} // namespace

void write_design_csv(std::ostream &out, const Design &design) {
  const Index m = design.has_responses() ? design.responses->cols() : 0;
  auto inputs = design.input_names.size() == static_cast<std::size_t>(design.dims())
                    ? design.input_names
                    : default_names("theta_", design.dims());
  auto outputs = design.response_names.size() == static_cast<std::size_t>(m)
                     ? design.response_names
                     : default_names("response_", m);
  std::string sep;
  for (const auto &h : inputs) {
    out << sep << h;
    sep = ",";
  }
  for (const auto &h : outputs)
    out << "," << h;
  out << "\n";
  for (Index i = 0; i < design.size(); ++i) {
    for (Index j = 0; j < design.dims(); ++j)
      out << (j ? "," : "") << csv::format_double(design.points(i, j));
    for (Index j = 0; j < m; ++j)
      out << "," << csv::format_double((*design.responses)(i, j));
    out << "\n";
  }
}

void write_design_csv(const std::string &path, const Design &design) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  write_design_csv(out, design);
  if (!out)
    throw Error(ErrorKind::Io, "write failed: " + path);
}

Design read_design_csv(std::istream &in) {
  const auto table = csv::read(in);
  std::vector<std::size_t> in_cols, out_cols;
  Design design;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (table.header[c].rfind("response", 0) == 0) {
      out_cols.push_back(c);
      design.response_names.push_back(table.header[c]);
    } else {
      if (!out_cols.empty())
        throw Error(ErrorKind::Format,
                    "design CSV: input column after response columns");
      in_cols.push_back(c);
      design.input_names.push_back(table.header[c]);
    }
  }
  if (in_cols.empty())
    throw Error(ErrorKind::Format, "design CSV has no input columns");
  if (table.rows.empty())
    throw Error(ErrorKind::Format, "design CSV has no data rows");
  const auto n = static_cast<Index>(table.rows.size());
  design.points.resize(n, static_cast<Index>(in_cols.size()));
  for (Index i = 0; i < n; ++i)
    for (std::size_t j = 0; j < in_cols.size(); ++j)
      design.points(i, static_cast<Index>(j)) = table.rows[i][in_cols[j]];
  if (!out_cols.empty()) {
    MatrixXd r(n, static_cast<Index>(out_cols.size()));
    for (Index i = 0; i < n; ++i)
      for (std::size_t j = 0; j < out_cols.size(); ++j)
        r(i, static_cast<Index>(j)) = table.rows[i][out_cols[j]];
    design.responses = std::move(r);
  }
  return design;
}

Design read_design_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::Io, "cannot open " + path);
  return read_design_csv(in);
}

} // namespace lsmcmc
