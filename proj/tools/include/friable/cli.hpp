#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace friable::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;

/// Runs one command. args excludes the program name. The report (human text
/// or JSON with --json) goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace friable::cli
