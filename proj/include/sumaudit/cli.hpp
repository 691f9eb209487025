#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumaudit {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;     // bad flags, unreadable or malformed input
inline constexpr int kExitInternal = 2;  // an internal invariant did not hold

class InvariantViolation : public std::logic_error {
  using std::logic_error::logic_error;
};

/// Runs one `sumaudit` command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sumaudit
