#include "kpdm_cli/config.hpp"

#include "kpdm/errors.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace kpdm::cli {

namespace {

struct CommandName {
    Command command;
    const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::algebra_check, "algebra-check"}, {Command::well, "well"},
    {Command::oscillator, "oscillator"},       {Command::classical, "classical"},
    {Command::fourier, "fourier"},             {Command::sweep, "sweep"},
    {Command::crosscheck, "crosscheck"},
};

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
    }
    while (!s.empty() && s.back() == ' ') {
        s.remove_suffix(1);
    }
    return s;
}

double to_real(std::string_view s) {
    s = trim(s);
    if (s == "inf" || s == "+inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto r = std::from_chars(s.data(), end, v);
    if (s.empty() || r.ec != std::errc() || r.ptr != end || std::isnan(v)) {
        throw ConfigError("not a number: '" + std::string(s) + "'");
    }
    return v;
}

int to_int(std::string_view s) {
    s = trim(s);
    int v = 0;
    const auto* end = s.data() + s.size();
    const auto r = std::from_chars(s.data(), end, v);
    if (s.empty() || r.ec != std::errc() || r.ptr != end) {
        throw ConfigError("not an integer: '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

const char* to_string(Command c) {
    for (const auto& e : kCommands) {
        if (e.command == c) {
            return e.name;
        }
    }
    return "?";
}

std::optional<Command> parse_command(std::string_view name) {
    for (const auto& e : kCommands) {
        if (name == e.name) {
            return e.command;
        }
    }
    return std::nullopt;
}

std::vector<double> parse_reals(std::string_view text) {
    std::vector<double> out;
    for (auto item : split(text, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() == 1) {
            out.push_back(to_real(item));
            continue;
        }
        if (parts.size() != 3) {
            throw ConfigError("range must be lo:step:hi, got '" + std::string(item) + "'");
        }
        const double lo = to_real(parts[0]);
        const double step = to_real(parts[1]);
        const double hi = to_real(parts[2]);
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(step > 0.0) || hi < lo) {
            throw ConfigError("range '" + std::string(item) + "' needs finite lo <= hi and step > 0");
        }
        // Counting first keeps the end point despite roundoff in (hi - lo) / step.
        const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
        if (count > 1000000) {
            throw ConfigError("range '" + std::string(item) + "' has more than 1e6 points");
        }
        for (long i = 0; i < count; ++i) {
            out.push_back(lo + static_cast<double>(i) * step);
        }
    }
    return out;
}

std::vector<int> parse_integers(std::string_view text) {
    std::vector<int> out;
    for (auto item : split(text, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string_view::npos) {
            out.push_back(to_int(item));
            continue;
        }
        const int lo = to_int(item.substr(0, dots));
        const int hi = to_int(item.substr(dots + 2));
        if (hi < lo || hi - lo > 100000) {
            throw ConfigError("bad integer range '" + std::string(item) + "'");
        }
        for (int i = lo; i <= hi; ++i) {
            out.push_back(i);
        }
    }
    return out;
}

std::string RunConfig::text(const std::string& key, const std::string& fallback) const {
    const auto it = parameters.find(key);
    return it == parameters.end() ? fallback : it->second;
}

double RunConfig::real(const std::string& key, double fallback) const {
    if (!has(key)) {
        return fallback;
    }
    try {
        return to_real(parameters.at(key));
    } catch (const ConfigError& e) {
        throw ConfigError("--" + key + ": " + e.what());
    }
}

int RunConfig::integer(const std::string& key, int fallback) const {
    if (!has(key)) {
        return fallback;
    }
    try {
        return to_int(parameters.at(key));
    } catch (const ConfigError& e) {
        throw ConfigError("--" + key + ": " + e.what());
    }
}

std::vector<double> RunConfig::reals(const std::string& key, const std::string& fallback) const {
    try {
        return parse_reals(text(key, fallback));
    } catch (const ConfigError& e) {
        throw ConfigError("--" + key + ": " + e.what());
    }
}

std::vector<int> RunConfig::integers(const std::string& key, const std::string& fallback) const {
    try {
        return parse_integers(text(key, fallback));
    } catch (const ConfigError& e) {
        throw ConfigError("--" + key + ": " + e.what());
    }
}

}  // namespace kpdm::cli
