#include "lsmcmc/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <sstream>

namespace lsmcmc::csv {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep))
    out.push_back(trim(field));
  if (!line.empty() && line.back() == sep)
    out.emplace_back();
  return out;
}

Table read(std::istream &in) {
  Table t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty())
      continue;
    auto fields = split(line, ',');
    if (t.header.empty()) {
      t.header = std::move(fields);
      continue;
    }
    if (fields.size() != t.header.size())
      throw Error(ErrorKind::Format,
                  "line " + std::to_string(lineno) + ": expected " +
                      std::to_string(t.header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto &f : fields) {
      char *end = nullptr;
      const double v = std::strtod(f.c_str(), &end);
      if (f.empty() || end != f.c_str() + f.size())
        throw Error(ErrorKind::Format, "line " + std::to_string(lineno) +
                                           ": not a number: '" + f + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty())
    throw Error(ErrorKind::Format, "empty CSV input");
  return t;
}

} // namespace lsmcmc::csv
