#ifndef LSMCMC_EXPERIMENT_HPP
#define LSMCMC_EXPERIMENT_HPP

#include "lsmcmc/chain_io.hpp"
#include "lsmcmc/config.hpp"
#include "lsmcmc/design.hpp"
#include "lsmcmc/diagnostics.hpp"
#include "lsmcmc/sampler.hpp"
#include "lsmcmc/surrogate.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lsmcmc {

enum class Algorithm { Mh, AbcHard, LsmcmcSmoothed, LsmcmcMean, Generalized };

std::string algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string &name);

/// Everything one experiment needs, read from a Config. Paths are relative
/// to `out_dir` unless absolute.
struct ExperimentConfig {
  std::string name = "experiment";
  /// Benchmark name or "surrogate:<model file>"; may be empty for the
  /// generalized sampler.
  std::string target_fn;
  /// 1-based response indices to target; empty means all.
  std::vector<Index> responses;
  std::optional<Bounds> bounds;

  Index design_n = 50;
  std::uint64_t design_seed = 1;
  bool design_evaluate = true;
  FitSettings fit;

  Algorithm algorithm = Algorithm::LsmcmcMean;
  std::optional<VectorXd> c;
  std::optional<VectorXd> tolerance;
  std::optional<VectorXd> proposal;
  ProposalMode mode = ProposalMode::Joint;
  std::optional<VectorXd> start;
  std::optional<double> epsilon;
  Index n_iter = 5000;
  Index burn_in = 1000;
  Index thin = 1;
  std::uint64_t seed = 1;

  std::string out_dir = ".";
  std::string design_file = "design.csv";
  std::string model_file = "model.json";
  std::string chain_file = "chain.csv";
  std::string metadata_file = "chain.json";
  std::string report_file = "report.json";
  std::string histogram_file = "histogram.csv";
  std::vector<std::pair<Index, Index>> correlation_pairs;
  Index histogram_bins = 30;

  std::string path(const std::string &file) const;
};

ExperimentConfig parse_experiment(const Config &cfg);

/// "1:2, 5:10" -> {(1,2), (5,10)}.
std::vector<std::pair<Index, Index>> parse_index_pairs(const std::string &text);

/// The function being explored, resolved from `target_fn`.
struct ResolvedTarget {
  std::string name;
  EvaluationInterface f;
  Bounds bounds;
  std::shared_ptr<const SurrogateModel> model;
};

ResolvedTarget resolve_target(const ExperimentConfig &cfg);

struct DesignOutcome {
  Design design;
  std::string path;
};
DesignOutcome cmd_design(const ExperimentConfig &cfg);

struct FitOutcome {
  SurrogateModel model;
  std::vector<FitReport> reports;
  std::string path;
};
FitOutcome cmd_fit(const ExperimentConfig &cfg, const std::string &design_path);

struct SampleOutcome {
  Chain chain;
  ChainMetadata meta;
  std::string chain_path;
  std::string metadata_path;
};
/// Validates dimensions before any sampling starts.
SampleOutcome cmd_sample(const ExperimentConfig &cfg);

struct DiagnoseOptions {
  std::string chain_path;
  std::string metadata_path;
  std::optional<Index> burn_in;
  /// 1-based input labels.
  std::vector<std::pair<Index, Index>> pairs;
  std::string report_path;
  std::string histogram_path;
  Index bins = 30;
};

/// Report JSON for an in-memory chain; histograms of the distinct
/// post-burn-in responses are returned through `hists` when non-null.
std::string diagnose_report(const Chain &chain, const ChainMetadata &meta,
                            Index burn_in,
                            const std::vector<std::pair<Index, Index>> &pairs,
                            Index bins, std::vector<Histogram> *hists);
std::string cmd_diagnose(const DiagnoseOptions &opts);

struct DemoOutcome {
  std::string dir;
  std::vector<std::string> files;
  std::map<std::string, SampleOutcome> runs;
};

std::vector<std::string> demo_names();
/// Runs a named experiment into <out_root>/<name>. Overrides are key=value
/// assignments applied to every run's config.
DemoOutcome cmd_demo(const std::string &name, const std::string &out_root,
                     const std::vector<std::string> &overrides = {});

/// Random start on the f = level shell of gauss100, uniform in whitened
/// direction.
VectorXd gauss100_shell_start(double level, Rng &rng);

} // namespace lsmcmc

#endif
