// Command-line front end: design, fit, sample, diagnose, demo.

#include "lsmcmc/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace lsmcmc;

namespace {

enum Exit { kOk = 0, kValidation = 2, kNumerical = 3, kIo = 4 };

int exit_code(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::InvalidArgument:
  case ErrorKind::OutOfSupport:
  case ErrorKind::InvalidStart:
    return kValidation;
  case ErrorKind::Numerical:
  case ErrorKind::Evaluation:
    return kNumerical;
  case ErrorKind::Io:
  case ErrorKind::Format:
    return kIo;
  }
  return kValidation;
}

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::string out_dir;
};

void add_common(CLI::App *cmd, Common &c) {
  cmd->add_option("-c,--config", c.config, "Experiment config file");
  cmd->add_option("-s,--set", c.overrides, "Override, key=value (repeatable)");
  cmd->add_option("-o,--out", c.out_dir, "Output directory");
}

ExperimentConfig load(const Common &c) {
  Config cfg = c.config.empty() ? Config{} : Config::load(c.config);
  for (const auto &o : c.overrides)
    cfg.set_assignment(o);
  if (!c.out_dir.empty())
    cfg.set("output.dir", c.out_dir);
  return parse_experiment(cfg);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Level-set estimation with GP surrogates and level-set MCMC"};
  app.require_subcommand(1);

  Common design_opts, fit_opts, sample_opts;
  auto *design = app.add_subcommand("design", "Latin hypercube design (+ responses)");
  add_common(design, design_opts);

  auto *fit = app.add_subcommand("fit", "Fit a GP surrogate to a design CSV");
  add_common(fit, fit_opts);
  std::string design_path;
  fit->add_option("-d,--design", design_path, "Design CSV")->required();

  auto *sample = app.add_subcommand("sample", "Run a sampler and write the chain");
  add_common(sample, sample_opts);

  DiagnoseOptions diag;
  std::string pairs_text;
  std::optional<long long> diag_burn;
  auto *diagnose = app.add_subcommand("diagnose", "Summarize a chain");
  diagnose->add_option("--chain", diag.chain_path, "Chain CSV")->required();
  diagnose->add_option("--metadata", diag.metadata_path, "Chain metadata JSON")
      ->required();
  diagnose->add_option("--burn-in", diag_burn, "Override the recorded burn-in");
  diagnose->add_option("--pairs", pairs_text, "Correlation pairs, e.g. 1:2,5:10");
  diagnose->add_option("--report", diag.report_path, "Write the report JSON here");
  diagnose->add_option("--histogram", diag.histogram_path,
                       "Write the response histogram CSV here");
  diagnose->add_option("--bins", diag.bins, "Histogram bins")
      ->check(CLI::PositiveNumber);

  std::string demo_name, demo_out = "demo_out";
  std::vector<std::string> demo_overrides;
  bool demo_list = false;
  auto *demo = app.add_subcommand("demo", "Reproduce a named experiment");
  demo->add_option("name", demo_name, "Demo name");
  demo->add_option("-o,--out", demo_out, "Output root");
  demo->add_option("-s,--set", demo_overrides, "Override, key=value (repeatable)");
  demo->add_flag("--list", demo_list, "List available demos");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (*design) {
      const auto out = cmd_design(load(design_opts));
      std::cout << "wrote " << out.path << " (" << out.design.size()
                << " points)\n";
    } else if (*fit) {
      const auto out = cmd_fit(load(fit_opts), design_path);
      for (std::size_t r = 0; r < out.reports.size(); ++r)
        std::cout << "response " << r + 1 << ": log marginal likelihood "
                  << out.reports[r].best_lml << "\n";
      std::cout << "wrote " << out.path << "\n";
    } else if (*sample) {
      const auto out = cmd_sample(load(sample_opts));
      std::cout << "acceptance " << out.chain.acceptance_rate() << ", "
                << out.chain.n_evals << " evaluations\n"
                << "wrote " << out.chain_path << " and " << out.metadata_path
                << "\n";
    } else if (*diagnose) {
      diag.pairs = parse_index_pairs(pairs_text);
      if (diag_burn)
        diag.burn_in = *diag_burn;
      std::cout << cmd_diagnose(diag) << "\n";
    } else if (*demo) {
      if (demo_list || demo_name.empty()) {
        for (const auto &n : demo_names())
          std::cout << n << "\n";
        return demo_list ? kOk : kValidation;
      }
      const auto out = cmd_demo(demo_name, demo_out, demo_overrides);
      for (const auto &f : out.files)
        std::cout << f << "\n";
    }
  } catch (const EvaluationError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}
