#pragma once

#include "kpdm_cli/config.hpp"
#include "kpdm_cli/output.hpp"

#include <iosfwd>
#include <optional>

namespace kpdm::cli {

enum ExitCode : int {
    kExitOk = 0,
    /// A check command ran to completion and something did not pass.
    kExitCheckFailed = 1,
    kExitConfigError = 2,
    kExitNumericError = 3,
};

struct CommandResult {
    Document document;
    bool checks_passed = true;
};

/// Validates every parameter, then computes the tables. Library exceptions
/// propagate: ConfigError/DomainError for bad input, NumericError otherwise.
CommandResult compute(const RunConfig& config);

/// compute() + write_document() with exceptions mapped to exit codes and the
/// message (with residual, when numeric) written to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses a full command line. Returns nullopt after printing help; throws
/// ConfigError on usage errors.
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out);

int main_entry(int argc, const char* const* argv);

}  // namespace kpdm::cli
