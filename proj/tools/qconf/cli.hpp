#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qconf::cli {

// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kFail = 1;  // ran to completion, check did not hold
inline constexpr int kConfigError = 2;
inline constexpr int kDomainError = 3;
inline constexpr int kConvergenceError = 4;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qconf::cli
