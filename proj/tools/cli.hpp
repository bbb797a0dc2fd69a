#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kloost::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFinding = 1;  // a check ran and found a disagreement
inline constexpr int kExitUsage = 2;    // bad arguments, domain error, cost guard

// Runs one command (argv without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kloost::cli
