#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qttc::cli {

// Exit codes are part of the command-line contract.
inline constexpr int kOk = 0;             // success, in core, all properties hold
inline constexpr int kRejected = 1;       // blocked, or a price property failed
inline constexpr int kInvalidInput = 2;   // unreadable, malformed or infeasible input
inline constexpr int kResourceLimit = 3;  // enumeration refused by the search-space cap

/// Runs one command. `args` excludes the program name. Paths given as "-"
/// (or omitted outputs) use `in` / `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace qttc::cli
