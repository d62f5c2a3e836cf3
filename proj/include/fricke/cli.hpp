#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fricke {

// exit codes
constexpr int kExitDefinite = 0;
constexpr int kExitSelftestFailed = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitInputError = 3;
constexpr int kExitResourceCap = 4;

// args exclude the program name
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fricke
