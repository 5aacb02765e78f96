#ifndef MATTEKIT_CLI_DRIVER_HPP_
#define MATTEKIT_CLI_DRIVER_HPP_

#include <string>
#include <vector>

namespace mattekit::cli {

// Exit codes: 0 success, 1 data/processing error, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Runs the full command-line front end. Safe to call repeatedly in-process;
/// no global state is kept between runs.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace mattekit::cli

#endif  // MATTEKIT_CLI_DRIVER_HPP_
