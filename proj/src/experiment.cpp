#include "lsmcmc/experiment.hpp"
#include "lsmcmc/csv.hpp"
#include "lsmcmc/targets.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace lsmcmc {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

VectorXd to_vec(const std::vector<double> &v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Index>(v.size()));
}

ordered_json vec_json(const VectorXd &v) {
  return ordered_json(std::vector<double>(v.data(), v.data() + v.size()));
}


void write_text(const std::string &path, const std::string &text) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  out << text;
  if (!out)
    throw Error(ErrorKind::Io, "write failed: " + path);
}

void ensure_dir(const std::string &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw Error(ErrorKind::Io, "cannot create directory " + dir + ": " +
                                   ec.message());
}

EvaluationInterface select_responses(EvaluationInterface f,
                                     const std::vector<Index> &labels) {
  if (labels.empty())
    return f;
  for (Index l : labels)
    require(l >= 1 && l <= f.dims_out,
            "target.responses: index " + std::to_string(l) +
                " outside 1.." + std::to_string(f.dims_out));
  auto inner = std::move(f.eval);
  return {f.dims_in, static_cast<Index>(labels.size()),
          [inner, labels](const VectorXd &theta) {
            const VectorXd y = inner(theta);
            VectorXd out(static_cast<Index>(labels.size()));
            for (std::size_t i = 0; i < labels.size(); ++i)
              out[static_cast<Index>(i)] = y[labels[i] - 1];
            return out;
          }};
}

} // namespace

std::vector<std::pair<Index, Index>> parse_index_pairs(const std::string &text) {
  std::vector<std::pair<Index, Index>> out;
  for (const auto &item : csv::split(text, ',')) {
    if (item.empty())
      continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw invalid_argument("correlation pair '" + item + "' is not i:j");
    try {
      out.emplace_back(std::stoll(item.substr(0, colon)),
                       std::stoll(item.substr(colon + 1)));
    } catch (const std::exception &) {
      throw invalid_argument("correlation pair '" + item + "' is not i:j");
    }
  }
  return out;
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
  case Algorithm::Mh:
    return "mh";
  case Algorithm::AbcHard:
    return "abc-hard";
  case Algorithm::LsmcmcSmoothed:
    return "lsmcmc-smoothed";
  case Algorithm::LsmcmcMean:
    return "lsmcmc-mean";
  case Algorithm::Generalized:
    return "generalized";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string &name) {
  for (auto a : {Algorithm::Mh, Algorithm::AbcHard, Algorithm::LsmcmcSmoothed,
                 Algorithm::LsmcmcMean, Algorithm::Generalized})
    if (algorithm_name(a) == name)
      return a;
  throw invalid_argument("unknown algorithm '" + name +
                         "' (expected mh, abc-hard, lsmcmc-smoothed, "
                         "lsmcmc-mean or generalized)");
}

std::string ExperimentConfig::path(const std::string &file) const {
  if (file.empty() || fs::path(file).is_absolute())
    return file;
  return (fs::path(out_dir) / file).string();
}

ExperimentConfig parse_experiment(const Config &cfg) {
  ExperimentConfig e;
  e.name = cfg.get("name", e.name);
  e.target_fn = cfg.get("target.function", "");
  if (auto r = cfg.find_vector("target.responses"))
    for (double v : *r)
      e.responses.push_back(static_cast<Index>(v));
  const auto lo = cfg.find_vector("bounds.lower");
  const auto hi = cfg.find_vector("bounds.upper");
  require(lo.has_value() == hi.has_value(),
          "bounds.lower and bounds.upper must be given together");
  if (lo)
    e.bounds = Bounds(to_vec(*lo), to_vec(*hi));

  e.design_n = cfg.get_int("design.n", e.design_n);
  require(e.design_n >= 1, "design.n must be positive");
  e.design_seed = static_cast<std::uint64_t>(cfg.get_int("design.seed", 1));
  e.design_evaluate = cfg.get("design.evaluate", "true") != "false";

  const std::string kernel = cfg.get("fit.kernel", "squared_exponential");
  require(kernel == "squared_exponential",
          "fit.kernel: only squared_exponential is supported");
  e.fit.starts = static_cast<int>(cfg.get_int("fit.starts", e.fit.starts));
  e.fit.max_iterations =
      static_cast<int>(cfg.get_int("fit.max_iterations", e.fit.max_iterations));
  e.fit.nugget_floor = cfg.get_double("fit.nugget_floor", e.fit.nugget_floor);
  e.fit.seed = static_cast<std::uint64_t>(cfg.get_int("fit.seed", 0));
  require(e.fit.starts >= 1, "fit.starts must be >= 1");
  require(e.fit.max_iterations >= 1, "fit.max_iterations must be >= 1");
  require(e.fit.nugget_floor > 0.0, "fit.nugget_floor must be > 0");

  e.algorithm = parse_algorithm(cfg.get("sampler.algorithm", "lsmcmc-mean"));
  if (auto v = cfg.find_vector("target.c"))
    e.c = to_vec(*v);
  if (auto v = cfg.find_vector("target.tolerance"))
    e.tolerance = to_vec(*v);
  if (auto v = cfg.find_vector("sampler.proposal"))
    e.proposal = to_vec(*v);
  e.mode = parse_mode(cfg.get("sampler.mode", "joint"));
  if (auto v = cfg.find_vector("sampler.start"))
    e.start = to_vec(*v);
  if (cfg.has("sampler.epsilon"))
    e.epsilon = cfg.get_double("sampler.epsilon");
  e.n_iter = cfg.get_int("sampler.n_iter", e.n_iter);
  e.burn_in = cfg.get_int("sampler.burn_in", e.burn_in);
  e.thin = cfg.get_int("sampler.thin", e.thin);
  e.seed = static_cast<std::uint64_t>(cfg.get_int("sampler.seed", 1));
  require(e.n_iter >= 1, "sampler.n_iter must be >= 1");
  require(e.burn_in >= 0 && e.burn_in <= e.n_iter,
          "sampler.burn_in must lie in [0, n_iter]");
  require(e.thin >= 1, "sampler.thin must be >= 1");

  e.out_dir = cfg.get("output.dir", e.out_dir);
  e.design_file = cfg.get("output.design", e.design_file);
  e.model_file = cfg.get("output.model", e.model_file);
  e.chain_file = cfg.get("output.chain", e.chain_file);
  e.metadata_file = cfg.get("output.metadata", e.metadata_file);
  e.report_file = cfg.get("output.report", e.report_file);
  e.histogram_file = cfg.get("output.histogram", e.histogram_file);
  e.correlation_pairs = parse_index_pairs(cfg.get("report.pairs", ""));
  e.histogram_bins = cfg.get_int("report.bins", e.histogram_bins);
  require(e.histogram_bins >= 1, "report.bins must be >= 1");
  return e;
}

ResolvedTarget resolve_target(const ExperimentConfig &cfg) {
  ResolvedTarget rt;
  require(!cfg.target_fn.empty(), "target.function is required");
  const std::string prefix = "surrogate:";
  if (cfg.target_fn.rfind(prefix, 0) == 0) {
    auto model = std::make_shared<const SurrogateModel>(
        load_model(cfg.target_fn.substr(prefix.size())));
    rt.name = cfg.target_fn;
    rt.bounds = model->bounds();
    rt.f = select_responses(
        {model->dims_in(), model->dims_out(),
         [model](const VectorXd &t) { return model->mean(t); }},
        cfg.responses);
    rt.model = std::move(model);
  } else {
    auto b = benchmark(cfg.target_fn);
    rt.name = b.name;
    rt.bounds = b.bounds;
    rt.f = select_responses(std::move(b.f), cfg.responses);
  }
  if (cfg.bounds) {
    require(cfg.bounds->dims() == rt.f.dims_in,
            "bounds have " + std::to_string(cfg.bounds->dims()) +
                " dimensions but target.function takes " +
                std::to_string(rt.f.dims_in));
    if (rt.model)
      require((cfg.bounds->lower().array() >= rt.bounds.lower().array()).all() &&
                  (cfg.bounds->upper().array() <= rt.bounds.upper().array()).all(),
              "bounds must lie inside the surrogate's training box");
    rt.bounds = *cfg.bounds;
  }
  return rt;
}

DesignOutcome cmd_design(const ExperimentConfig &cfg) {
  std::optional<ResolvedTarget> rt;
  Bounds bounds;
  if (!cfg.target_fn.empty()) {
    rt = resolve_target(cfg);
    bounds = rt->bounds;
  } else {
    require(cfg.bounds.has_value(),
            "design needs bounds or a target.function with canonical bounds");
    bounds = *cfg.bounds;
  }
  Design design = latin_hypercube(cfg.design_n, bounds, cfg.design_seed);
  if (cfg.design_evaluate && rt)
    design = evaluate_design(design, rt->f);
  ensure_dir(cfg.out_dir);
  DesignOutcome out{std::move(design), cfg.path(cfg.design_file)};
  write_design_csv(out.path, out.design);
  return out;
}

FitOutcome cmd_fit(const ExperimentConfig &cfg, const std::string &design_path) {
  Design design = read_design_csv(design_path);
  if (!design.has_responses())
    throw invalid_argument("design " + design_path +
                           " has no response columns to fit");
  Bounds bounds;
  if (cfg.bounds)
    bounds = *cfg.bounds;
  else if (!cfg.target_fn.empty() && cfg.target_fn.rfind("surrogate:", 0) != 0)
    bounds = benchmark(cfg.target_fn).bounds;
  else
    throw invalid_argument("fit needs bounds.lower/bounds.upper or a "
                           "benchmark target.function");
  require(bounds.dims() == design.dims(),
          "design has " + std::to_string(design.dims()) +
              " inputs but bounds have " + std::to_string(bounds.dims()));
  std::vector<FitReport> reports;
  SurrogateModel model = fit_surrogate(design, bounds, cfg.fit, &reports);
  ensure_dir(cfg.out_dir);
  FitOutcome out{std::move(model), std::move(reports), cfg.path(cfg.model_file)};
  save_model(out.path, out.model);
  return out;
}

SampleOutcome cmd_sample(const ExperimentConfig &cfg) {
  ChainMetadata meta;
  meta.algorithm = algorithm_name(cfg.algorithm);
  meta.seed = cfg.seed;
  meta.n_iter = cfg.n_iter;
  meta.burn_in = cfg.burn_in;
  meta.thin = cfg.thin;

  require(cfg.epsilon.has_value() == (cfg.algorithm == Algorithm::AbcHard),
          cfg.algorithm == Algorithm::AbcHard
              ? "sampler.epsilon is required for abc-hard"
              : "sampler.epsilon is only valid for abc-hard");
  require(cfg.proposal.has_value(), "sampler.proposal is required");
  require(cfg.c.has_value(), "target.c is required");

  std::optional<ResolvedTarget> rt;
  Index d = 0, m = 0;
  if (cfg.algorithm == Algorithm::Generalized) {
    d = m = cfg.c->size();
    meta.target_function = "gaussian(c, tolerance)";
  } else {
    rt = resolve_target(cfg);
    d = rt->f.dims_in;
    m = rt->f.dims_out;
    meta.target_function = rt->name;
    meta.bounds = rt->bounds;
  }

  VectorXd prop = *cfg.proposal;
  if (prop.size() == 1 && d > 1)
    prop = VectorXd::Constant(d, prop[0]);
  require(prop.size() == d, "sampler.proposal has " +
                                std::to_string(prop.size()) +
                                " entries, inputs: " + std::to_string(d));
  meta.proposal = ProposalSpec(prop, cfg.mode);

  require(cfg.c->size() == m, "target.c has " + std::to_string(cfg.c->size()) +
                                  " entries, responses: " + std::to_string(m));
  VectorXd tol;
  if (cfg.tolerance)
    tol = *cfg.tolerance;
  else if (cfg.algorithm == Algorithm::AbcHard)
    tol = VectorXd::Constant(m, *cfg.epsilon * *cfg.epsilon);
  else
    throw invalid_argument("target.tolerance is required");
  require(tol.size() == m, "target.tolerance has " + std::to_string(tol.size()) +
                               " entries, responses: " + std::to_string(m));
  meta.target = TargetSpec(*cfg.c, tol);

  if (cfg.start)
    meta.start = *cfg.start;
  else if (rt)
    meta.start = 0.5 * (rt->bounds.lower() + rt->bounds.upper());
  else
    meta.start = *cfg.c;
  require(meta.start.size() == d, "sampler.start has " +
                                      std::to_string(meta.start.size()) +
                                      " entries, inputs: " + std::to_string(d));
  if (cfg.algorithm == Algorithm::Mh)
    require(m == 1, "mh needs a single-response target");
  if (cfg.algorithm == Algorithm::LsmcmcSmoothed)
    require(rt && rt->model,
            "lsmcmc-smoothed needs target.function = surrogate:<model file>");
  if (cfg.algorithm == Algorithm::AbcHard)
    meta.epsilon = cfg.epsilon;

  Rng rng(cfg.seed);
  Chain chain;
  switch (cfg.algorithm) {
  case Algorithm::Mh: {
    const auto &f = rt->f;
    const Bounds &b = rt->bounds;
    // Density proportional to f on the box; f must be positive there.
    chain = run_mh(
        [&](const VectorXd &t) {
          if (!b.contains(t))
            return -std::numeric_limits<double>::infinity();
          const double v = f(t)[0];
          return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
        },
        meta.proposal, meta.start, cfg.n_iter, rng);
    break;
  }
  case Algorithm::AbcHard: {
    const auto &f = rt->f;
    const Bounds &b = rt->bounds;
    chain = run_abc_mcmc_hard(
        [&](const VectorXd &t) {
          return b.contains(t) ? 0.0 : -std::numeric_limits<double>::infinity();
        },
        [&](const VectorXd &t, Rng &) { return f(t); }, meta.target.c,
        *cfg.epsilon, meta.proposal, meta.start, cfg.n_iter, rng);
    break;
  }
  case Algorithm::LsmcmcSmoothed: {
    auto model = rt->model;
    const auto labels = cfg.responses;
    Predictive pred{model->dims_in(),
                    labels.empty() ? model->dims_out()
                                   : static_cast<Index>(labels.size()),
                    [model, labels](const VectorXd &t, VectorXd &mean,
                                    VectorXd &var) {
                      VectorXd mu, v;
                      model->predict(t, mu, v);
                      if (labels.empty()) {
                        mean = std::move(mu);
                        var = std::move(v);
                        return;
                      }
                      mean.resize(static_cast<Index>(labels.size()));
                      var.resize(mean.size());
                      for (std::size_t i = 0; i < labels.size(); ++i) {
                        mean[static_cast<Index>(i)] = mu[labels[i] - 1];
                        var[static_cast<Index>(i)] = v[labels[i] - 1];
                      }
                    }};
    chain = run_lsmcmc_smoothed(pred, meta.target, meta.proposal, rt->bounds,
                                meta.start, cfg.n_iter, rng);
    break;
  }
  case Algorithm::LsmcmcMean:
    chain = run_lsmcmc_mean(rt->f, meta.target, meta.proposal, rt->bounds,
                            meta.start, cfg.n_iter, rng);
    break;
  case Algorithm::Generalized:
    chain = run_generalized_mcmc(meta.target, meta.proposal, meta.start,
                                 cfg.n_iter, rng);
    break;
  }
  meta.n_evals = chain.n_evals;
  meta.n_proposals = chain.n_proposals;
  meta.n_moves_accepted = chain.n_moves_accepted;

  ensure_dir(cfg.out_dir);
  SampleOutcome out{std::move(chain), std::move(meta),
                    cfg.path(cfg.chain_file), cfg.path(cfg.metadata_file)};
  write_chain_csv(out.chain_path, out.chain);
  write_metadata(out.metadata_path, out.meta);
  return out;
}

std::string diagnose_report(const Chain &chain, const ChainMetadata &meta,
                            Index burn_in,
                            const std::vector<std::pair<Index, Index>> &pairs,
                            Index bins, std::vector<Histogram> *hists) {
  require(burn_in >= 0 && burn_in < chain.size(),
          "burn-in " + std::to_string(burn_in) +
              " must be smaller than the chain length " +
              std::to_string(chain.size()));
  require(chain.response_dims() == meta.target.dims(),
          "chain responses do not match the metadata target");
  const ChainSummary s = summarize(chain, meta.target, burn_in);
  ordered_json j;
  j["algorithm"] = meta.algorithm;
  j["target_function"] = meta.target_function;
  j["rows"] = chain.size();
  j["burn_in"] = burn_in;
  j["n_evals"] = meta.n_evals;
  j["acceptance_rate"] = s.acceptance_rate;
  j["n_unique"] = s.n_unique;
  j["coverage_2sigma"] = vec_json(s.coverage_2sigma);
  j["response_mean"] = vec_json(s.response_mean);
  j["response_std"] = vec_json(s.response_std);

  const Index n = chain.size() - burn_in;
  ordered_json ks = ordered_json::array();
  if (n >= 10)
    for (Index r = 0; r < chain.response_dims(); ++r) {
      const VectorXd col = chain.responses.col(r).tail(n);
      ks.push_back(ks_statistic(std::vector<double>(col.data(), col.data() + n),
                                meta.target.c[r], meta.target.tol_diag[r]));
    }
  j["ks_vs_tolerance_normal"] = ks;

  ordered_json corr = ordered_json::array();
  for (const auto &[a, b] : pairs) {
    require(a >= 1 && a <= chain.dims() && b >= 1 && b <= chain.dims(),
            "correlation pair " + std::to_string(a) + ":" + std::to_string(b) +
                " outside 1.." + std::to_string(chain.dims()));
    ordered_json entry = {{"i", a}, {"j", b}};
    try {
      entry["r"] = empirical_correlation(chain, a - 1, b - 1, burn_in);
    } catch (const Error &e) {
      entry["r"] = nullptr;
      entry["error"] = e.what();
    }
    corr.push_back(entry);
  }
  j["correlations"] = corr;

  if (hists) {
    // Distinct post-burn-in responses: the first post-burn-in row plus
    // every accepted row after it.
    for (Index r = 0; r < chain.response_dims(); ++r) {
      std::vector<double> vals{chain.responses(burn_in, r)};
      for (Index i = burn_in + 1; i < chain.size(); ++i)
        if (chain.accepted[i])
          vals.push_back(chain.responses(i, r));
      hists->push_back(histogram(to_vec(vals), bins));
    }
  }
  return j.dump(2);
}

std::string cmd_diagnose(const DiagnoseOptions &opts) {
  const ChainMetadata meta = read_metadata(opts.metadata_path);
  const Chain chain = read_chain_csv(opts.chain_path);
  const Index burn = opts.burn_in.value_or(meta.burn_in);
  std::vector<Histogram> hists;
  const std::string report = diagnose_report(chain, meta, burn, opts.pairs,
                                             opts.bins, &hists);
  if (!opts.report_path.empty())
    write_text(opts.report_path, report + "\n");
  if (!opts.histogram_path.empty()) {
    for (std::size_t r = 0; r < hists.size(); ++r) {
      std::string path = opts.histogram_path;
      if (hists.size() > 1) {
        const fs::path p(path);
        path = (p.parent_path() / (p.stem().string() + "_" +
                                   std::to_string(r + 1) + p.extension().string()))
                   .string();
      }
      write_histogram_csv(path, hists[r]);
    }
  }
  return report;
}

VectorXd gauss100_shell_start(double level, Rng &rng) {
  require(level > 0.0 && level < Gauss100::kPeak,
          "shell level must lie in (0, 10000)");
  // 10000 exp(-q/2) = level; a random whitened direction z with |z|^2 = q
  // maps to theta = mu + L z on that shell.
  const double q = -2.0 * std::log(level / Gauss100::kPeak);
  static const Gauss100 g;
  static const MatrixXd L = g.covariance().llt().matrixL();
  const VectorXd z = rng.normal_vector(Gauss100::kDims).normalized() * std::sqrt(q);
  return g.mean() + L * z;
}

namespace {

struct DemoRun {
  std::string name;
  std::string config;
};

struct DemoPlan {
  std::string base; // design/fit keys, when a surrogate is needed
  bool needs_surrogate = false;
  std::vector<DemoRun> runs;
};

std::string fmt_vec(const VectorXd &v) {
  std::string s;
  for (Index i = 0; i < v.size(); ++i)
    s += (i ? ", " : "") + csv::format_double(v[i]);
  return s;
}

DemoPlan demo_plan(const std::string &name) {
  DemoPlan p;
  if (name == "fig5") {
    p.needs_surrogate = true;
    p.base = "target.function = two_bump\n"
             "bounds.lower = -4, -4\nbounds.upper = 4, 4\n"
             "design.n = 50\ndesign.seed = 2024\nfit.seed = 7\n";
    const std::string common =
        "target.function = surrogate:{MODEL}\n"
        "target.c = 0.6\ntarget.tolerance = 0.1\n"
        "sampler.proposal = 3, 3\nsampler.start = 0, 0\n"
        "sampler.n_iter = 5000\nsampler.burn_in = 1000\nsampler.seed = 11\n";
    p.runs = {{"smoothed", common + "sampler.algorithm = lsmcmc-smoothed\n"},
              {"mean", common + "sampler.algorithm = lsmcmc-mean\n"}};
  } else if (name == "fig6") {
    const std::string common =
        "target.function = two_bump\nsampler.algorithm = lsmcmc-mean\n"
        "target.c = 0.6\nsampler.proposal = 0.2, 0.2\n"
        "sampler.start = 3.5, 3.5\nsampler.n_iter = 5000\n"
        "sampler.burn_in = 1000\nsampler.seed = 21\n";
    p.runs = {{"tol_0.01", common + "target.tolerance = 0.0001\n"},
              {"tol_0.1", common + "target.tolerance = 0.01\n"}};
  } else if (name == "fig7") {
    const std::string common =
        "target.function = two_bump\nsampler.algorithm = lsmcmc-mean\n"
        "target.c = 0.6\ntarget.tolerance = 0.01\n"
        "sampler.start = -2.3, -1.8\nsampler.n_iter = 5000\n"
        "sampler.burn_in = 1000\nsampler.seed = 31\n";
    p.runs = {{"pro_0.2", common + "sampler.proposal = 0.2, 0.2\n"},
              {"pro_2", common + "sampler.proposal = 2, 2\n"}};
  } else if (name == "fig10-12") {
    Rng rng(4242);
    const VectorXd start = gauss100_shell_start(9200.0, rng);
    p.runs = {{"gauss100",
               "target.function = gauss100\nsampler.algorithm = lsmcmc-mean\n"
               "target.c = 1000\ntarget.tolerance = 1\n"
               "sampler.mode = componentwise\nsampler.proposal = 0.1\n"
               "sampler.start = " +
                   fmt_vec(start) +
                   "\nsampler.n_iter = 50000\nsampler.burn_in = 1000\n"
                   "sampler.seed = 41\n"
                   "report.pairs = 1:2, 5:10, 7:10, 47:74\n"}};
  } else if (name == "multiresponse-synthetic") {
    p.needs_surrogate = true;
    p.base = "target.function = synthetic3\n"
             "design.n = 50\ndesign.seed = 2025\nfit.seed = 3\n";
    // Overlapping regime: all three level sets pass through
    // (0.6, 0.3, 0.6). Conflicting regime: r1 = 0.3 forces t1 <= 0.3 while
    // r2 = 0.9 needs t1 >= 0.4.
    const std::string common =
        "target.function = surrogate:{MODEL}\nsampler.algorithm = lsmcmc-mean\n"
        "sampler.proposal = 0.01, 0.01, 0.01\nsampler.start = 0.5, 0.5, 0.5\n"
        "sampler.n_iter = 5000\nsampler.burn_in = 1000\nsampler.seed = 51\n";
    p.runs = {
        {"single_r1", common + "target.responses = 1\ntarget.c = 1.5\n"
                               "target.tolerance = 0.000225\n"},
        {"single_r2", common + "target.responses = 2\ntarget.c = 0.48\n"
                               "target.tolerance = 0.00002304\n"},
        {"single_r3", common + "target.responses = 3\ntarget.c = 0.69\n"
                               "target.tolerance = 0.00004761\n"},
        {"joint", common + "target.c = 1.5, 0.48, 0.69\n"
                           "target.tolerance = 0.000225, 0.00002304, 0.00004761\n"},
        {"conflict", common + "target.c = 0.3, 0.9, 0.5\n"
                              "target.tolerance = 0.000009, 0.000081, 0.000025\n"},
        // Two responses that both equal t1 but ask for different values:
        // t1 settles at the precision-weighted average, 0.32.
        {"compromise",
         "target.function = twin_linear\nsampler.algorithm = lsmcmc-mean\n"
         "target.c = 0.2, 0.8\ntarget.tolerance = 0.01, 0.04\n"
         "sampler.proposal = 0.02, 0.02\nsampler.start = 0.5, 0.5\n"
         "sampler.n_iter = 5000\nsampler.burn_in = 1000\nsampler.seed = 52\n"},
    };
  } else {
    std::string known;
    for (const auto &n : demo_names())
      known += (known.empty() ? "" : ", ") + n;
    throw invalid_argument("unknown demo '" + name + "' (available: " + known +
                           ")");
  }
  return p;
}

std::string replace_all(std::string s, const std::string &from,
                        const std::string &to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos;
       pos += to.size())
    s.replace(pos, from.size(), to);
  return s;
}

} // namespace

std::vector<std::string> demo_names() {
  return {"fig5", "fig6", "fig7", "fig10-12", "multiresponse-synthetic"};
}

DemoOutcome cmd_demo(const std::string &name, const std::string &out_root,
                     const std::vector<std::string> &overrides) {
  const DemoPlan plan = demo_plan(name);
  DemoOutcome out;
  out.dir = (fs::path(out_root) / name).string();
  ensure_dir(out.dir);

  const auto finish = [&](Config cfg) {
    cfg.set("output.dir", out.dir);
    for (const auto &o : overrides)
      cfg.set_assignment(o);
    return cfg;
  };

  std::string model_path;
  if (plan.needs_surrogate) {
    Config base = finish(Config::parse(plan.base));
    write_text((fs::path(out.dir) / "design.cfg").string(), base.to_string());
    const auto ecfg = parse_experiment(base);
    const auto design = cmd_design(ecfg);
    const auto fit = cmd_fit(ecfg, design.path);
    out.files.push_back(design.path);
    out.files.push_back(fit.path);
    model_path = fit.path;
  }

  for (const auto &run : plan.runs) {
    Config cfg = Config::parse(replace_all(run.config, "{MODEL}", model_path));
    cfg.set("name", name + "/" + run.name);
    cfg.set("output.chain", "chain_" + run.name + ".csv");
    cfg.set("output.metadata", "chain_" + run.name + ".json");
    cfg = finish(std::move(cfg));
    const std::string cfg_path =
        (fs::path(out.dir) / (run.name + ".cfg")).string();
    write_text(cfg_path, cfg.to_string());
    const auto ecfg = parse_experiment(cfg);
    SampleOutcome s = cmd_sample(ecfg);

    std::vector<Histogram> hists;
    const std::string report =
        diagnose_report(s.chain, s.meta, std::min(ecfg.burn_in, s.chain.size() - 1),
                        ecfg.correlation_pairs, ecfg.histogram_bins, &hists);
    const std::string report_path =
        (fs::path(out.dir) / ("report_" + run.name + ".json")).string();
    write_text(report_path, report + "\n");
    for (std::size_t r = 0; r < hists.size(); ++r) {
      const std::string hp =
          (fs::path(out.dir) / ("histogram_" + run.name + "_" +
                                std::to_string(r + 1) + ".csv"))
              .string();
      write_histogram_csv(hp, hists[r]);
      out.files.push_back(hp);
    }
    out.files.insert(out.files.end(),
                     {cfg_path, s.chain_path, s.metadata_path, report_path});
    out.runs.emplace(run.name, std::move(s));
  }
  return out;
}

} // namespace lsmcmc
