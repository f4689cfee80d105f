#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qdl::cli {

/// Process state the command line depends on, injected for testing.
struct Environment {
  bool stdout_is_tty = false;
  std::optional<std::string> threads;  ///< QDL_THREADS
};

/// Exit codes besides 0.
inline constexpr int kExitError = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitAssertion = 3;

/// Runs one qdl command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env = {});

struct NRange {
  std::uint64_t first;
  std::uint64_t last;
  std::uint64_t step;
};

/// "a:b" or "a:b:step"; throws std::invalid_argument when empty or step == 0.
NRange parse_n_range(const std::string& text);

}  // namespace qdl::cli
