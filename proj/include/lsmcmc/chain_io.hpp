#ifndef LSMCMC_CHAIN_IO_HPP
#define LSMCMC_CHAIN_IO_HPP

#include "lsmcmc/sampler.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace lsmcmc {

/// Sidecar describing how a chain was produced.
struct ChainMetadata {
  std::string algorithm;
  std::string target_function;
  std::uint64_t seed = 0;
  TargetSpec target;
  ProposalSpec proposal;
  std::optional<Bounds> bounds;
  VectorXd start;
  Index n_iter = 0;
  Index burn_in = 1000;
  Index thin = 1;
  long long n_evals = 0;
  long long n_proposals = 0;
  long long n_moves_accepted = 0;
  std::optional<double> epsilon;
};

/// Columns: iter, theta_1..theta_d, response_1..response_m, accepted.
void write_chain_csv(std::ostream &out, const Chain &chain);
void write_chain_csv(const std::string &path, const Chain &chain);
/// Evaluation counters are not stored in the CSV; take them from the
/// metadata.
Chain read_chain_csv(std::istream &in);
Chain read_chain_csv(const std::string &path);

std::string metadata_to_json(const ChainMetadata &meta);
ChainMetadata metadata_from_json(const std::string &text);
void write_metadata(const std::string &path, const ChainMetadata &meta);
ChainMetadata read_metadata(const std::string &path);

std::string mode_name(ProposalMode mode);
ProposalMode parse_mode(const std::string &name);

} // namespace lsmcmc

#endif
