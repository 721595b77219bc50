#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace quiverstab::cli {

inline constexpr unsigned long long kDefaultSeed = 20240917ULL;

/// Runs the command line front end on `args` (without the program name) and
/// returns the process exit status: 0 success, 1 domain error, 2 cap
/// exceeded, 3 invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace quiverstab::cli
