#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ringsolve::cli {

// Exit codes.
inline constexpr int kSuccess = 0;     // solvable, valid, or plain success
inline constexpr int kNegative = 1;    // unsolvable, or certificate rejected
inline constexpr int kUsage = 2;       // usage, parse or precondition error
inline constexpr int kViolation = 3;   // internal error or oracle mismatch

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ringsolve::cli
