// Shared helpers for the test binaries.
#pragma once

#include "lsmcmc/core.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace testing {

/// Fresh scratch directory under the system temp dir, removed on exit.
class TempDir {
public:
  explicit TempDir(const std::string &tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("lsmcmc_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string &name) const {
    return (path_ / name).string();
  }
  std::string str() const { return path_.string(); }

private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::string &path, const std::string &text) {
  std::ofstream(path, std::ios::binary) << text;
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

} // namespace testing

#define CHECK_ERROR_KIND(expr, expected_kind)                                  \
  do {                                                                         \
    bool thrown_ = false;                                                      \
    try {                                                                      \
      (void)(expr);                                                            \
    } catch (const lsmcmc::Error &e_) {                                        \
      thrown_ = true;                                                          \
      CHECK(e_.kind() == (expected_kind));                                     \
    }                                                                          \
    CHECK_MESSAGE(thrown_, "expected an lsmcmc::Error from " #expr);           \
  } while (0)
