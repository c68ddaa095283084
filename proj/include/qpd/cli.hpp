#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qpd::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kValidation = 2;
inline constexpr int kIngestion = 3;
inline constexpr int kBudget = 4;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpd::cli
