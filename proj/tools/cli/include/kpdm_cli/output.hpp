#pragma once

#include "kpdm_cli/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace kpdm::cli {

/// One curve family: a named block of numeric rows.
struct Table {
    std::string family;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    /// Extra `#` lines written after the config echo (legends, flags).
    std::vector<std::string> notes;

    Table(std::string family_name, std::vector<std::string> column_names)
        : family(std::move(family_name)), columns(std::move(column_names)) {}

    /// Appends a row; ConfigError when the width does not match the columns.
    void add(std::vector<double> row);
};

struct Document {
    /// Config echo as "key: value" lines, without the leading '#'.
    std::vector<std::string> header;
    std::vector<Table> tables;
};

/// Header echo for a run: version, command, then every parameter in key order.
std::vector<std::string> config_echo(const RunConfig& config);

/// %.17g, with nan and +-inf spelled out.
std::string format_real(double v);

std::string to_csv(const Document& doc, const Table& table);
/// {"version", "config", "family", "columns", "rows", "notes"}. NaN is written as null.
std::string to_json(const Document& doc, const Table& table);

/// Writes every table of `doc` according to the config's output target and
/// returns the paths written. Tables go to `console` when there is no target.
std::vector<std::string> write_document(const RunConfig& config, const Document& doc,
                                        std::ostream& console);

}  // namespace kpdm::cli
