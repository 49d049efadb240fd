#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cfd/network.hpp"

namespace cfd::cli {

enum ExitCode {
  kSuccess = 0,
  kNo = 1,  // decision "no", or a solution that fails verification
  kUsage = 2,
  kInconclusive = 3,
};

// Environment variable overriding the exact solver's node budget.
inline constexpr const char* kNodeBudgetVariable = "CFD_NODE_BUDGET";

struct Selection {
  std::string algorithm;
  // False when the chosen algorithm is not known to be optimal here.
  bool optimal = true;
  std::string warning;
};

// The algorithm `solve` uses for an instance.
Selection select_algorithm(const Instance& instance);

// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace cfd::cli
