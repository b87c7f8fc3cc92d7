#ifndef LSMCMC_CSV_HPP
#define LSMCMC_CSV_HPP

#include "lsmcmc/core.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace lsmcmc::csv {

/// 17 significant digits; round-trips any double.
std::string format_double(double x);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table read(std::istream &in);

std::vector<std::string> split(const std::string &line, char sep);
std::string trim(const std::string &s);

} // namespace lsmcmc::csv

#endif
