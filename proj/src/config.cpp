#include "lsmcmc/config.hpp"
#include "lsmcmc/csv.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace lsmcmc {

namespace {

std::string strip_comment(const std::string &line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

double to_double(const std::string &key, const std::string &text) {
  char *end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size())
    throw invalid_argument("config key '" + key + "': not a number: '" +
                           text + "'");
  return v;
}

} // namespace

Config Config::parse(const std::string &text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = csv::trim(strip_comment(line));
    if (body.empty())
      continue;
    if (body.front() == '[') {
      if (body.back() != ']')
        throw invalid_argument("config line " + std::to_string(lineno) +
                               ": unterminated section header");
      section = csv::trim(body.substr(1, body.size() - 2));
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw invalid_argument("config line " + std::to_string(lineno) +
                             ": expected key = value");
    const std::string key = csv::trim(body.substr(0, eq));
    if (key.empty())
      throw invalid_argument("config line " + std::to_string(lineno) +
                             ": empty key");
    cfg.set(section.empty() ? key : section + "." + key,
            csv::trim(body.substr(eq + 1)));
  }
  return cfg;
}

Config Config::load(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::Io, "cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void Config::set(const std::string &key, const std::string &value) {
  values_[key] = value;
}

void Config::set_assignment(const std::string &assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw invalid_argument("override '" + assignment + "' is not key=value");
  set(csv::trim(assignment.substr(0, eq)), csv::trim(assignment.substr(eq + 1)));
}

bool Config::has(const std::string &key) const { return values_.count(key) > 0; }

std::string Config::get(const std::string &key) const {
  const auto it = values_.find(key);
  if (it == values_.end())
    throw invalid_argument("missing config key '" + key + "'");
  return it->second;
}

std::string Config::get(const std::string &key,
                        const std::string &fallback) const {
  return has(key) ? get(key) : fallback;
}

double Config::get_double(const std::string &key) const {
  return to_double(key, get(key));
}

double Config::get_double(const std::string &key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long long Config::get_int(const std::string &key) const {
  const std::string text = get(key);
  char *end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size())
    throw invalid_argument("config key '" + key + "': not an integer: '" +
                           text + "'");
  return v;
}

long long Config::get_int(const std::string &key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::vector<double> Config::get_vector(const std::string &key) const {
  std::vector<double> out;
  for (const auto &field : csv::split(get(key), ','))
    out.push_back(to_double(key, field));
  if (out.empty())
    throw invalid_argument("config key '" + key + "' is empty");
  return out;
}

std::optional<std::vector<double>>
Config::find_vector(const std::string &key) const {
  if (!has(key))
    return std::nullopt;
  return get_vector(key);
}

std::string Config::to_string() const {
  std::string out;
  for (const auto &[k, v] : values_)
    out += k + " = " + v + "\n";
  return out;
}

} // namespace lsmcmc
