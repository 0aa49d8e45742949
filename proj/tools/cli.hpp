#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace montrans::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDifferent = 1;  // equiv: counterexample found
inline constexpr int kFailure = 2;    // usage, schema or I/O error
inline constexpr int kBottom = 3;     // eval: value undefined
inline constexpr int kBudget = 4;     // learn: caps exceeded

// Runs the montrans command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace montrans::cli
