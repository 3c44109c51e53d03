#include "hyplab_cli/table.hpp"

#include <cmath>

#include "hyplab_cli/literals.hpp"

namespace hyplab::cli {

namespace {

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out.push_back(c);
        }
    }
    return out + "\"";
}

std::string json_cell(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return std::isfinite(*d) ? format_number(*d) : "null";
    if (const std::string* s = std::get_if<std::string>(&c)) return json_string(*s);
    return format_cell(c);
}

}  // namespace

std::string format_cell(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return format_number(*d);
    if (const long* n = std::get_if<long>(&c)) return std::to_string(*n);
    if (const bool* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return std::get<std::string>(c);
}

std::string csv_row(const Table& t, std::size_t i) {
    std::string line;
    for (std::size_t j = 0; j < t.rows[i].size(); ++j) {
        if (j) line += ',';
        line += format_cell(t.rows[i][j]);
    }
    return line;
}

void write_table(std::ostream& os, const Table& t, Format f) {
    if (f == Format::csv) {
        for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j];
        os << '\n';
        for (std::size_t i = 0; i < t.rows.size(); ++i) os << csv_row(t, i) << '\n';
        return;
    }
    os << "{\"rows\":[";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        os << (i ? ",\n" : "\n") << "{";
        for (std::size_t j = 0; j < t.columns.size(); ++j)
            os << (j ? "," : "") << json_string(t.columns[j]) << ":" << json_cell(t.rows[i][j]);
        os << "}";
    }
    os << "],\n\"summary\":{";
    for (std::size_t k = 0; k < t.summary.size(); ++k)
        os << (k ? "," : "") << json_string(t.summary[k].first) << ":" << json_cell(t.summary[k].second);
    os << "}}\n";
}

}  // namespace hyplab::cli
