#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cdl::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kDataError = 1,
    kUsageError = 2,
    kVerificationFailure = 3,
};

/// Runs the command line `args` (without the program name), writing normal
/// output to `out` and diagnostics to `err`. Returns an ExitCode.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Regression suites behind `cdl verify`. Each prints one line per checked
/// value and returns false on any mismatch. Throws std::runtime_error when a
/// fixture file is missing.
bool verify_catalan(int max_n, const std::string &data_dir, std::ostream &out);
bool verify_length4(int max_n, const std::string &data_dir, std::ostream &out);
bool verify_table1(std::ostream &out);

} // namespace cdl::cli
