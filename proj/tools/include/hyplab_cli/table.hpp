#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hyplab::cli {

using Cell = std::variant<double, long, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    // Key-value facts about the whole run, e.g. fitted constants or flags.
    std::vector<std::pair<std::string, Cell>> summary;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
    void note(const std::string& key, Cell value) { summary.emplace_back(key, std::move(value)); }
};

enum class Format { csv, json };

// CSV writes the header and rows only; JSON writes {"rows": [...], "summary": {...}}.
void write_table(std::ostream& os, const Table& t, Format f);
std::string csv_row(const Table& t, std::size_t i);
std::string format_cell(const Cell& c);

}  // namespace hyplab::cli
