#pragma once

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "supragrid/errors.hpp"

namespace supragrid::csv {

/// Scientific notation, 17 significant digits: enough to round-trip any double.
inline std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", value);
    return buf;
}

/// Three significant digits for human-facing tables.
inline std::string format_short(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", value);
    return buf;
}

inline double parse_real(std::string_view text) {
    // std::from_chars for double is not available on every libstdc++ we build with.
    std::string owned(text);
    char* end = nullptr;
    const double value = std::strtod(owned.c_str(), &end);
    if (owned.empty() || end != owned.c_str() + owned.size()) {
        throw InvalidArgument("cannot parse '" + owned + "' as a real number");
    }
    return value;
}

inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column_index(std::string_view name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        throw InvalidArgument("csv: no column named '" + std::string(name) + "'");
    }

    std::vector<double> reals(std::string_view name) const {
        const std::size_t col = column_index(name);
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& row : rows) {
            out.push_back(parse_real(row.at(col)));
        }
        return out;
    }

    std::vector<std::string> strings(std::string_view name) const {
        const std::size_t col = column_index(name);
        std::vector<std::string> out;
        out.reserve(rows.size());
        for (const auto& row : rows) {
            out.push_back(row.at(col));
        }
        return out;
    }
};

inline void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << fields[i];
    }
    out << '\n';
}

inline void write(std::ostream& out, const Table& table) {
    write_row(out, table.header);
    for (const auto& row : table.rows) {
        write_row(out, row);
    }
}

/// Reads a header line followed by data rows; blank lines are skipped.
inline Table read(std::istream& in) {
    Table table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_line(line);
        if (table.header.empty()) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw InvalidArgument("csv line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(table.header.size()) + " fields, got " +
                                  std::to_string(fields.size()));
        }
        table.rows.push_back(std::move(fields));
    }
    if (table.header.empty()) {
        throw InvalidArgument("csv: missing header line");
    }
    return table;
}

}  // namespace supragrid::csv
