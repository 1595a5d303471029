#pragma once

// Run configuration for the kpdm tool. Parameters are kept as text so the
// header echo reproduces exactly what was asked for; typed accessors parse and
// validate on demand and throw ConfigError naming the offending key.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kpdm::cli {

enum class Command { algebra_check, well, oscillator, classical, fourier, sweep, crosscheck };

const char* to_string(Command c);
std::optional<Command> parse_command(std::string_view name);

enum class Format { csv, json };

struct RunConfig {
    Command command = Command::well;
    std::map<std::string, std::string> parameters;
    /// File or directory. Empty means $KPDM_OUTPUT_DIR, or stdout when unset.
    std::string output;
    std::optional<Format> format;

    bool has(const std::string& key) const { return parameters.count(key) != 0; }
    std::string text(const std::string& key, const std::string& fallback) const;
    double real(const std::string& key, double fallback) const;
    int integer(const std::string& key, int fallback) const;
    std::vector<double> reals(const std::string& key, const std::string& fallback) const;
    std::vector<int> integers(const std::string& key, const std::string& fallback) const;
};

/// "0,0.5,1", "lo:step:hi" (inclusive), "inf". Items may be mixed: "0:0.5:2,3".
std::vector<double> parse_reals(std::string_view text);
/// "1,2,5", "1..6" (inclusive).
std::vector<int> parse_integers(std::string_view text);

}  // namespace kpdm::cli
