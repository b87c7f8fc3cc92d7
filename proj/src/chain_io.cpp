#include "lsmcmc/chain_io.hpp"
#include "lsmcmc/csv.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace lsmcmc {

namespace {

using nlohmann::ordered_json;

ordered_json vec_json(const VectorXd &v) {
  return ordered_json(std::vector<double>(v.data(), v.data() + v.size()));
}

VectorXd json_vec(const ordered_json &j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Index>(v.size()));
}

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::Io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

std::string mode_name(ProposalMode mode) {
  return mode == ProposalMode::Joint ? "joint" : "componentwise";
}

ProposalMode parse_mode(const std::string &name) {
  if (name == "joint")
    return ProposalMode::Joint;
  if (name == "componentwise")
    return ProposalMode::Componentwise;
  throw invalid_argument("unknown proposal mode '" + name +
                         "' (expected joint or componentwise)");
}

void write_chain_csv(std::ostream &out, const Chain &chain) {
  out << "iter";
  for (Index j = 1; j <= chain.dims(); ++j)
    out << ",theta_" << j;
  for (Index j = 1; j <= chain.response_dims(); ++j)
    out << ",response_" << j;
  out << ",accepted\n";
  for (Index i = 0; i < chain.size(); ++i) {
    out << i;
    for (Index j = 0; j < chain.dims(); ++j)
      out << ',' << csv::format_double(chain.theta(i, j));
    for (Index j = 0; j < chain.response_dims(); ++j)
      out << ',' << csv::format_double(chain.responses(i, j));
    out << ',' << (chain.accepted[i] ? 1 : 0) << '\n';
  }
}

void write_chain_csv(const std::string &path, const Chain &chain) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  write_chain_csv(out, chain);
  if (!out)
    throw Error(ErrorKind::Io, "write failed: " + path);
}

Chain read_chain_csv(std::istream &in) {
  const auto table = csv::read(in);
  const auto &h = table.header;
  if (h.size() < 3 || h.front() != "iter" || h.back() != "accepted")
    throw Error(ErrorKind::Format,
                "chain CSV header must start with iter and end with accepted");
  Index d = 0, m = 0;
  for (std::size_t c = 1; c + 1 < h.size(); ++c) {
    if (h[c].rfind("theta_", 0) == 0) {
      if (m > 0)
        throw Error(ErrorKind::Format, "chain CSV: theta column after responses");
      ++d;
    } else if (h[c].rfind("response_", 0) == 0) {
      ++m;
    } else {
      throw Error(ErrorKind::Format, "chain CSV: unexpected column " + h[c]);
    }
  }
  if (table.rows.empty())
    throw Error(ErrorKind::Format, "chain CSV has no rows");
  if (d == 0)
    throw Error(ErrorKind::Format, "chain CSV has no theta columns");
  const auto n = static_cast<Index>(table.rows.size());
  Chain chain;
  chain.theta.resize(n, d);
  chain.responses.resize(n, m);
  chain.accepted.resize(n);
  for (Index i = 0; i < n; ++i) {
    const auto &r = table.rows[static_cast<std::size_t>(i)];
    for (Index j = 0; j < d; ++j)
      chain.theta(i, j) = r[static_cast<std::size_t>(1 + j)];
    for (Index j = 0; j < m; ++j)
      chain.responses(i, j) = r[static_cast<std::size_t>(1 + d + j)];
    chain.accepted[i] = r.back() != 0.0;
  }
  return chain;
}

Chain read_chain_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::Io, "cannot open " + path);
  return read_chain_csv(in);
}

std::string metadata_to_json(const ChainMetadata &meta) {
  ordered_json j;
  j["algorithm"] = meta.algorithm;
  j["target_function"] = meta.target_function;
  j["seed"] = meta.seed;
  j["target"] = {{"c", vec_json(meta.target.c)},
                 {"tol_diag", vec_json(meta.target.tol_diag)}};
  j["proposal"] = {{"pro_diag", vec_json(meta.proposal.pro_diag)},
                   {"mode", mode_name(meta.proposal.mode)}};
  if (meta.bounds)
    j["bounds"] = {{"lower", vec_json(meta.bounds->lower())},
                   {"upper", vec_json(meta.bounds->upper())}};
  j["start"] = vec_json(meta.start);
  if (meta.epsilon)
    j["epsilon"] = *meta.epsilon;
  j["n_iter"] = meta.n_iter;
  j["burn_in"] = meta.burn_in;
  j["thin"] = meta.thin;
  j["n_evals"] = meta.n_evals;
  j["n_proposals"] = meta.n_proposals;
  j["n_moves_accepted"] = meta.n_moves_accepted;
  return j.dump(2);
}

ChainMetadata metadata_from_json(const std::string &text) {
  try {
    const auto j = ordered_json::parse(text);
    ChainMetadata m;
    m.algorithm = j.at("algorithm").get<std::string>();
    m.target_function = j.value("target_function", "");
    m.seed = j.at("seed").get<std::uint64_t>();
    m.target = TargetSpec(json_vec(j.at("target").at("c")),
                          json_vec(j.at("target").at("tol_diag")));
    m.proposal = ProposalSpec(json_vec(j.at("proposal").at("pro_diag")),
                              parse_mode(j.at("proposal").at("mode")));
    if (j.contains("bounds"))
      m.bounds = Bounds(json_vec(j["bounds"].at("lower")),
                        json_vec(j["bounds"].at("upper")));
    m.start = json_vec(j.at("start"));
    if (j.contains("epsilon"))
      m.epsilon = j["epsilon"].get<double>();
    m.n_iter = j.at("n_iter").get<Index>();
    m.burn_in = j.at("burn_in").get<Index>();
    m.thin = j.value("thin", Index{1});
    m.n_evals = j.at("n_evals").get<long long>();
    m.n_proposals = j.value("n_proposals", 0LL);
    m.n_moves_accepted = j.value("n_moves_accepted", 0LL);
    return m;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::Format, std::string("chain metadata: ") + e.what());
  }
}

void write_metadata(const std::string &path, const ChainMetadata &meta) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  out << metadata_to_json(meta) << "\n";
}

ChainMetadata read_metadata(const std::string &path) {
  return metadata_from_json(slurp(path));
}

} // namespace lsmcmc
