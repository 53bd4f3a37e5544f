#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "okh/algebra.hpp"

namespace okh {

enum class OutputFormat { Table, Structured, Poincare };

struct RunConfig {
  std::string command;
  std::string pd;    // inline PD code
  std::string file;  // corpus or PD file
  Ring ring = Ring::Graded;
  OutputFormat format = OutputFormat::Table;
  bool check_oracle = false;
  bool spectral = false;
  int moves = 6;
  int variants = 3;
  std::uint64_t seed = 1;
  bool r1 = true;
  int jobs = 0;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitValidation = 3,
  kExitVerification = 4,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace okh
