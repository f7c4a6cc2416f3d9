#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace towerlab::cli {

// Exit codes. Regime codes are used by classify.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kParseError = 2;
inline constexpr int kConservativeNotErgodic = 3;
inline constexpr int kNotConservative = 4;
inline constexpr int kUnknown = 5;

/// Runs the tool on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace towerlab::cli
