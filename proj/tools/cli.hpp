#pragma once

#include <atomic>
#include <ostream>
#include <string>
#include <vector>

namespace malle::cli {

/// Exit statuses of malle-lab.
enum ExitCode : int {
  kOk = 0,
  kInvariant = 2,
  kCapacity = 3,
  kParse = 4,
};

/// Raised by the SIGINT handler; the census checkpoints and stops when set.
std::atomic<bool>& stop_flag();

/// Runs one malle-lab invocation. `args` excludes the program name.
/// Standard output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace malle::cli
