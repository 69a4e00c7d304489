#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dml::cli {

enum class ExitCode : int { Verified = 0, Negative = 1, InputError = 2, Indeterminate = 3 };

inline constexpr long kDefaultBits = 128;
inline constexpr long kDefaultMaxBits = 4096;
inline constexpr long kDefaultRecurrenceRange = 100;

/// Runs one command line (without the program name) and returns the exit
/// code.  Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dml::cli
