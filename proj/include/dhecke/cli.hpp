#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dhecke::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/// Entry point behind the `dhecke` binary. `args` excludes the program name.
/// Reports go to `out` as JSON (or CSV for scan), summaries to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dhecke::cli
