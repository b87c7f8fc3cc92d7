#ifndef LSMCMC_CONFIG_HPP
#define LSMCMC_CONFIG_HPP

#include "lsmcmc/core.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lsmcmc {

/// Flat key-value experiment document.
///
///   # comment
///   name = fig6
///   [sampler]            # keys below become sampler.<key>
///   algorithm = lsmcmc-mean
///   proposal = 0.2, 0.2
///
/// Dotted keys may also be written out in full. Later assignments win, so
/// command-line overrides are applied with set().
class Config {
public:
  static Config parse(const std::string &text);
  static Config load(const std::string &path);

  void set(const std::string &key, const std::string &value);
  /// Parses "key=value".
  void set_assignment(const std::string &assignment);

  bool has(const std::string &key) const;
  std::string get(const std::string &key) const;
  std::string get(const std::string &key, const std::string &fallback) const;
  double get_double(const std::string &key) const;
  double get_double(const std::string &key, double fallback) const;
  long long get_int(const std::string &key) const;
  long long get_int(const std::string &key, long long fallback) const;
  std::vector<double> get_vector(const std::string &key) const;
  std::optional<std::vector<double>> find_vector(const std::string &key) const;

  const std::map<std::string, std::string> &entries() const noexcept {
    return values_;
  }
  std::string to_string() const;

private:
  std::map<std::string, std::string> values_;
};

} // namespace lsmcmc

#endif
