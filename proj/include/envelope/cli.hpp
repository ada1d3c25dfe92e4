#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace envelope::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kSolverError = 1;
inline constexpr int kInputError = 2;
inline constexpr int kRowsFailed = 3;  // reproduce finished but some rows failed

/// Runs one command line (`args` excludes the program name). Records go to
/// `out`; error records and warnings go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace envelope::cli
