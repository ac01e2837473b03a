#ifndef MDIST_TOOLS_CLI_H_
#define MDIST_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace mdist::cli {

// Exit statuses of run().
inline constexpr int kOk = 0;
// A proven bound was exceeded, a metric failed validation or a construction
// failed verification.
inline constexpr int kCheckFailed = 1;
// Bad flags, unreadable files, schema or parameter errors.
inline constexpr int kUsageError = 2;

// Runs one subcommand. `args` excludes the program name. Reports go to
// `out` (or the --output file); diagnostics and secondary tables to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace mdist::cli

#endif  // MDIST_TOOLS_CLI_H_
