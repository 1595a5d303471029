#include "kpdm_cli/output.hpp"

#include "kpdm/errors.hpp"
#include "kpdm/version.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace kpdm::cli {

namespace fs = std::filesystem;

void Table::add(std::vector<double> row) {
    if (row.size() != columns.size()) {
        throw ConfigError("table '" + family + "': row has " + std::to_string(row.size()) +
                          " values for " + std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
}

std::vector<std::string> config_echo(const RunConfig& config) {
    std::vector<std::string> out;
    out.push_back(std::string("kpdm ") + kVersion);
    out.push_back(std::string("command: ") + to_string(config.command));
    for (const auto& [key, value] : config.parameters) {
        out.push_back(key + ": " + value);
    }
    return out;
}

std::string format_real(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const Document& doc, const Table& table) {
    std::string out;
    for (const auto& line : doc.header) {
        out += "# " + line + "\n";
    }
    out += "# family: " + table.family + "\n";
    for (const auto& note : table.notes) {
        out += "# " + note + "\n";
    }
    out += "# ";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out += (i ? "," : "") + table.columns[i];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ',';
            }
            out += format_real(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Document& doc, const Table& table) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["config"] = doc.header;
    j["family"] = table.family;
    j["columns"] = table.columns;
    j["notes"] = table.notes;
    auto rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        auto r = nlohmann::json::array();
        for (double v : row) {
            if (std::isfinite(v)) {
                r.push_back(v);
            } else if (std::isnan(v)) {
                r.push_back(nullptr);
            } else {
                r.push_back(v > 0 ? "inf" : "-inf");
            }
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump() + "\n";
}

namespace {

Format resolve_format(const RunConfig& config, const fs::path& path) {
    if (config.format) {
        return *config.format;
    }
    return path.extension() == ".json" ? Format::json : Format::csv;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << content;
    if (!f) {
        throw ConfigError("cannot write output file " + path.string());
    }
}

std::string render(Format format, const Document& doc, const Table& table) {
    return format == Format::json ? to_json(doc, table) : to_csv(doc, table);
}

}  // namespace

std::vector<std::string> write_document(const RunConfig& config, const Document& doc,
                                        std::ostream& console) {
    std::string target = config.output;
    bool directory = false;
    if (target.empty()) {
        if (const char* env = std::getenv("KPDM_OUTPUT_DIR"); env && *env) {
            target = env;
            directory = true;
        }
    }
    if (target.empty()) {
        const Format format = config.format.value_or(Format::csv);
        for (const auto& t : doc.tables) {
            console << render(format, doc, t);
        }
        return {};
    }
    if (!directory) {
        std::error_code ec;
        directory = target.back() == '/' || fs::is_directory(target, ec);
    }

    std::vector<std::string> written;
    const char* command = to_string(config.command);
    for (const auto& t : doc.tables) {
        fs::path path;
        if (directory) {
            const Format format = config.format.value_or(Format::csv);
            path = fs::path(target) /
                   (std::string(command) + "_" + t.family + (format == Format::json ? ".json" : ".csv"));
        } else if (doc.tables.size() == 1) {
            path = target;
        } else {
            const fs::path base(target);
            path = base.parent_path() / (base.stem().string() + "_" + t.family + base.extension().string());
        }
        write_file(path, render(resolve_format(config, path), doc, t));
        written.push_back(path.string());
    }
    return written;
}

}  // namespace kpdm::cli
