#include "lsmcmc/surrogate.hpp"
#include "lsmcmc/optimize.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace lsmcmc {

namespace {

constexpr double kLogLsMin = -5.0;
constexpr double kLogLsMax = 3.0;
constexpr double kLogSvSpan = 6.0;

std::string condition_note(const MatrixXd &k) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(k, Eigen::EigenvaluesOnly);
  const auto &ev = es.eigenvalues();
  std::ostringstream os;
  os << "eigenvalue range [" << ev.minCoeff() << ", " << ev.maxCoeff()
     << "], condition estimate " << ev.maxCoeff() / std::abs(ev.minCoeff());
  return os.str();
}

struct Factorization {
  MatrixXd chol;
  VectorXd alpha;
  double lml;
};

Factorization factorize(const GpHyperparams &hyper, const MatrixXd &x,
                        const VectorXd &y_centered) {
  const Index n = x.rows();
  MatrixXd k = kernel_matrix(x, x, hyper);
  k.diagonal().array() += hyper.nugget;
  Eigen::LLT<MatrixXd> llt(k);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::Numerical,
                "kernel matrix not positive definite: " + condition_note(k));
  Factorization f;
  f.chol = llt.matrixL();
  f.alpha = llt.solve(y_centered);
  f.lml = -0.5 * y_centered.dot(f.alpha) -
          f.chol.diagonal().array().log().sum() -
          0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  if (!std::isfinite(f.lml))
    throw Error(ErrorKind::Numerical,
                "non-finite log marginal likelihood: " + condition_note(k));
  return f;
}

void check_hyper(const GpHyperparams &hyper, Index dims) {
  require(hyper.lengthscales.size() == dims,
          "hyperparameters: lengthscale count does not match inputs");
  require((hyper.lengthscales.array() > 0.0).all(),
          "hyperparameters: lengthscales must be positive");
  require(hyper.signal_variance > 0.0,
          "hyperparameters: signal variance must be positive");
  require(hyper.nugget >= 0.0, "hyperparameters: nugget must be >= 0");
}

// Search coordinates: log lengthscales, log signal variance, log of the
// nugget relative to the signal variance.
GpHyperparams from_search(const VectorXd &p) {
  const Index d = p.size() - 2;
  GpHyperparams h;
  h.lengthscales = p.head(d).array().exp();
  h.signal_variance = std::exp(p[d]);
  h.nugget = h.signal_variance * std::exp(p[d + 1]);
  return h;
}

} // namespace

MatrixXd kernel_matrix(const MatrixXd &a, const MatrixXd &b,
                       const GpHyperparams &hyper) {
  require(a.cols() == b.cols() && a.cols() == hyper.lengthscales.size(),
          "kernel_matrix: dimension mismatch");
  const Eigen::RowVectorXd inv_ls = hyper.lengthscales.cwiseInverse().transpose();
  const MatrixXd as = a.array().rowwise() * inv_ls.array();
  const MatrixXd bs = b.array().rowwise() * inv_ls.array();
  MatrixXd k(a.rows(), b.rows());
  for (Index j = 0; j < b.rows(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      k(i, j) = hyper.signal_variance *
                std::exp(-0.5 * (as.row(i) - bs.row(j)).squaredNorm());
  return k;
}

GpSurrogate::GpSurrogate(MatrixXd unit_points, const VectorXd &responses,
                         GpHyperparams hyper)
    : hyper_(std::move(hyper)), x_(std::move(unit_points)) {
  require(x_.rows() >= 1, "GP needs at least one training point");
  require(responses.size() == x_.rows(),
          "GP: response count does not match point count");
  check_hyper(hyper_, x_.cols());
  raw_ = responses;
  offset_ = responses.mean();
  y_ = responses.array() - offset_;
  auto f = factorize(hyper_, x_, y_);
  chol_ = std::move(f.chol);
  alpha_ = std::move(f.alpha);
  lml_ = f.lml;
}

void GpSurrogate::check_support(const VectorXd &unit) const {
  require(unit.size() == dims(), "GP query dimension mismatch");
  if ((unit.array() < 0.0).any() || (unit.array() > 1.0).any())
    throw Error(ErrorKind::OutOfSupport,
                "GP query outside the unit box of the training design");
}

std::pair<double, double> GpSurrogate::predict(const VectorXd &unit) const {
  check_support(unit);
  const VectorXd k = kernel_matrix(x_, unit.transpose(), hyper_);
  const double mean = k.dot(alpha_) + offset_;
  const VectorXd v = chol_.triangularView<Eigen::Lower>().solve(k);
  const double var = hyper_.signal_variance + hyper_.nugget - v.squaredNorm();
  return {mean, std::max(var, 0.0)};
}

double GpSurrogate::predict_mean(const VectorXd &unit) const {
  check_support(unit);
  const VectorXd k = kernel_matrix(x_, unit.transpose(), hyper_);
  return k.dot(alpha_) + offset_;
}

double GpSurrogate::predict_var(const VectorXd &unit) const {
  return predict(unit).second;
}

double GpSurrogate::sample_marginal(const VectorXd &unit, Rng &rng) const {
  const auto [mean, var] = predict(unit);
  if (var == 0.0)
    return mean;
  return mean + std::sqrt(var) * rng.normal();
}

double log_marginal_likelihood(const GpHyperparams &hyper,
                               const MatrixXd &unit_points,
                               const VectorXd &responses) {
  require(unit_points.rows() >= 2,
          "log_marginal_likelihood needs at least 2 points");
  require(responses.size() == unit_points.rows(),
          "response count does not match point count");
  check_hyper(hyper, unit_points.cols());
  const VectorXd y = responses.array() - responses.mean();
  return factorize(hyper, unit_points, y).lml;
}

double log_marginal_likelihood(const GpHyperparams &hyper,
                               const Design &unit_design, Index response_col) {
  require(unit_design.has_responses(), "design has no responses");
  require(response_col >= 0 && response_col < unit_design.responses->cols(),
          "response column out of range");
  return log_marginal_likelihood(hyper, unit_design.points,
                                 unit_design.responses->col(response_col));
}

GpSurrogate fit_gp(const MatrixXd &unit_points, const VectorXd &responses,
                   const FitSettings &settings, FitReport *report) {
  const Index n = unit_points.rows(), d = unit_points.cols();
  require(n >= 2, "fit_gp needs at least 2 points");
  require(responses.size() == n, "response count does not match point count");
  require(settings.starts >= 1, "fit_gp: starts must be >= 1");
  require(settings.nugget_floor > 0.0, "fit_gp: nugget floor must be > 0");

  for (Index i = 0; i < n; ++i)
    require(std::isfinite(responses[i]),
            "fit_gp: response " + std::to_string(i) + " is not finite");
  const double mean = responses.mean();
  const VectorXd yc = responses.array() - mean;
  double yvar = yc.squaredNorm() / static_cast<double>(n);
  if (!std::isfinite(yvar))
    throw Error(ErrorKind::Numerical,
                "fit_gp: response variance overflows; rescale the responses");
  if (!(yvar > 0.0))
    yvar = 1.0;
  const double log_yvar = std::log(yvar);

  VectorXd lo(d + 2), hi(d + 2);
  lo.head(d).setConstant(kLogLsMin);
  hi.head(d).setConstant(kLogLsMax);
  lo[d] = log_yvar - kLogSvSpan;
  hi[d] = log_yvar + kLogSvSpan;
  lo[d + 1] = std::log(settings.nugget_floor);
  hi[d + 1] = 0.0;

  const auto objective = [&](const VectorXd &p) {
    try {
      return -factorize(from_search(p), unit_points, yc).lml;
    } catch (const Error &) {
      return std::numeric_limits<double>::infinity();
    }
  };

  // Start 0 is a fixed heuristic; the rest come from a Latin hypercube
  // over the search box, with the nugget kept in its lower decades.
  std::vector<VectorXd> starts;
  {
    VectorXd p(d + 2);
    p.head(d).setConstant(std::log(0.3));
    p[d] = log_yvar;
    p[d + 1] = std::max(lo[d + 1], std::log(1e-6));
    starts.push_back(p);
  }
  if (settings.starts > 1) {
    VectorXd slo = lo, shi = hi;
    shi[d + 1] = std::max(lo[d + 1] + 1.0, std::log(1e-3));
    const auto lhs = latin_hypercube(settings.starts - 1, Bounds(slo, shi),
                                     splitmix64(settings.seed ^ 0xF17ULL));
    for (Index i = 0; i < lhs.size(); ++i)
      starts.push_back(lhs.points.row(i).transpose());
  }

  FitReport rep;
  const VectorXd step = VectorXd::Constant(d + 2, 0.7);
  double best = std::numeric_limits<double>::infinity();
  VectorXd best_p;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    const double f0 = objective(starts[s]);
    rep.start_hyper.push_back(from_search(starts[s]));
    rep.start_lml.push_back(-f0);
    auto res = nelder_mead(objective, starts[s], step, lo, hi,
                           settings.max_iterations);
    // One restart from the optimum shakes the simplex out of collapse.
    auto res2 = nelder_mead(objective, res.x, 0.5 * step, lo, hi,
                            settings.max_iterations);
    if (res2.value < res.value)
      res = res2;
    rep.final_lml.push_back(-res.value);
    if (res.value < best) {
      best = res.value;
      best_p = res.x;
      rep.best_start = s;
    }
  }
  if (!std::isfinite(best)) {
    // Report the failure at the heuristic start, with its diagnostics.
    factorize(from_search(starts.front()), unit_points, yc);
    throw Error(ErrorKind::Numerical, "fit_gp: no finite likelihood found");
  }
  GpSurrogate gp(unit_points, responses, from_search(best_p));
  rep.best_lml = gp.log_marginal_likelihood();
  if (report)
    *report = std::move(rep);
  return gp;
}

GpSurrogate fit_gp(const Design &unit_design, Index response_col,
                   const FitSettings &settings, FitReport *report) {
  require(unit_design.has_responses(), "fit_gp: design has no responses");
  require(response_col >= 0 && response_col < unit_design.responses->cols(),
          "fit_gp: response column out of range");
  return fit_gp(unit_design.points, unit_design.responses->col(response_col),
                settings, report);
}

SurrogateModel::SurrogateModel(Bounds bounds, std::vector<GpSurrogate> gps,
                               std::vector<std::string> response_names)
    : bounds_(std::move(bounds)), gps_(std::move(gps)),
      names_(std::move(response_names)) {
  require(!gps_.empty(), "surrogate model needs at least one response");
  for (const auto &gp : gps_)
    require(gp.dims() == bounds_.dims(),
            "surrogate model: GP dimension does not match bounds");
  if (names_.size() != gps_.size()) {
    names_.clear();
    for (std::size_t i = 1; i <= gps_.size(); ++i)
      names_.push_back("response_" + std::to_string(i));
  }
}

VectorXd SurrogateModel::mean(const VectorXd &theta) const {
  const VectorXd u = scale_to_unit(theta, bounds_);
  VectorXd out(dims_out());
  for (Index i = 0; i < dims_out(); ++i)
    out[i] = gps_[static_cast<std::size_t>(i)].predict_mean(u);
  return out;
}

VectorXd SurrogateModel::variance(const VectorXd &theta) const {
  VectorXd m, v;
  predict(theta, m, v);
  return v;
}

void SurrogateModel::predict(const VectorXd &theta, VectorXd &mean,
                             VectorXd &var) const {
  const VectorXd u = scale_to_unit(theta, bounds_);
  mean.resize(dims_out());
  var.resize(dims_out());
  for (Index i = 0; i < dims_out(); ++i) {
    const auto [m, v] = gps_[static_cast<std::size_t>(i)].predict(u);
    mean[i] = m;
    var[i] = v;
  }
}

EvaluationInterface SurrogateModel::mean_function() const {
  return {dims_in(), dims_out(),
          [this](const VectorXd &theta) { return mean(theta); }};
}

SurrogateModel fit_surrogate(const Design &design, const Bounds &bounds,
                             const FitSettings &settings,
                             std::vector<FitReport> *reports) {
  require(design.has_responses(), "fit_surrogate: design has no responses");
  require(design.dims() == bounds.dims(),
          "fit_surrogate: design and bounds dimensions differ");
  for (Index i = 0; i < design.size(); ++i)
    if (!bounds.contains(design.points.row(i).transpose()))
      throw Error(ErrorKind::OutOfSupport,
                  "design row " + std::to_string(i) + " lies outside bounds");
  const MatrixXd unit = scale_rows_to_unit(design.points, bounds);
  std::vector<GpSurrogate> gps;
  for (Index c = 0; c < design.responses->cols(); ++c) {
    FitSettings s = settings;
    s.seed = splitmix64(settings.seed + static_cast<std::uint64_t>(c));
    FitReport rep;
    gps.push_back(fit_gp(unit, design.responses->col(c), s, &rep));
    if (reports)
      reports->push_back(std::move(rep));
  }
  return SurrogateModel(bounds, std::move(gps), design.response_names);
}

namespace {

using nlohmann::json;

json vec_json(const VectorXd &v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

VectorXd json_vec(const json &j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Index>(v.size()));
}

constexpr const char *kFormat = "lsmcmc-surrogate";
constexpr int kVersion = 1;

} // namespace

std::string model_to_json(const SurrogateModel &model) {
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["kernel"] = "squared_exponential_ard";
  doc["bounds"] = {{"lower", vec_json(model.bounds().lower())},
                   {"upper", vec_json(model.bounds().upper())}};
  const MatrixXd &x = model.gps().front().train_points();
  json rows = json::array();
  for (Index i = 0; i < x.rows(); ++i)
    rows.push_back(vec_json(x.row(i).transpose()));
  doc["train_points_unit"] = rows;
  json responses = json::array();
  for (std::size_t i = 0; i < model.gps().size(); ++i) {
    const auto &gp = model.gps()[i];
    responses.push_back({{"name", model.response_names()[i]},
                         {"lengthscales", vec_json(gp.hyper().lengthscales)},
                         {"signal_variance", gp.hyper().signal_variance},
                         {"nugget", gp.hyper().nugget},
                         {"log_marginal_likelihood", gp.log_marginal_likelihood()},
                         {"train_responses", vec_json(gp.raw_responses())}});
  }
  doc["responses"] = responses;
  return doc.dump(2);
}

SurrogateModel model_from_json(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception &e) {
    throw Error(ErrorKind::Format, std::string("model JSON: ") + e.what());
  }
  try {
    if (doc.at("format") != kFormat)
      throw Error(ErrorKind::Format, "not a surrogate model document");
    if (doc.at("version").get<int>() != kVersion)
      throw Error(ErrorKind::Format, "unsupported surrogate model version");
    Bounds bounds(json_vec(doc.at("bounds").at("lower")),
                  json_vec(doc.at("bounds").at("upper")));
    const auto &rows = doc.at("train_points_unit");
    MatrixXd x(static_cast<Index>(rows.size()), bounds.dims());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const VectorXd r = json_vec(rows[i]);
      if (r.size() != bounds.dims())
        throw Error(ErrorKind::Format, "training point has wrong dimension");
      x.row(static_cast<Index>(i)) = r.transpose();
    }
    std::vector<GpSurrogate> gps;
    std::vector<std::string> names;
    for (const auto &r : doc.at("responses")) {
      GpHyperparams h{json_vec(r.at("lengthscales")),
                      r.at("signal_variance").get<double>(),
                      r.at("nugget").get<double>()};
      gps.emplace_back(x, json_vec(r.at("train_responses")), h);
      names.push_back(r.value("name", ""));
    }
    return SurrogateModel(std::move(bounds), std::move(gps), std::move(names));
  } catch (const json::exception &e) {
    throw Error(ErrorKind::Format, std::string("model JSON: ") + e.what());
  }
}

void save_model(const std::string &path, const SurrogateModel &model) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  out << model_to_json(model) << "\n";
}

SurrogateModel load_model(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::Io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

} // namespace lsmcmc
