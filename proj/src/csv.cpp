#include "ptrisk/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ptrisk {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_double_short(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) return format_double(v);
    return std::string(buf, ptr);
}

void write_csv(std::ostream& os, const std::vector<std::string>& header, const Matrix& values) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i > 0) os << ',';
        os << header[i];
    }
    os << '\n';
    for (std::size_t r = 0; r < values.rows(); ++r) {
        for (std::size_t c = 0; c < values.cols(); ++c) {
            if (c > 0) os << ',';
            os << format_double(values(r, c));
        }
        os << '\n';
    }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
        return pos == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

CsvTable read_csv(std::istream& is) {
    CsvTable table;
    std::string line;
    std::vector<double> data;
    std::size_t cols = 0, rows = 0;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields = split_fields(line);
        if (!have_header) {
            table.header = fields;
            cols = fields.size();
            have_header = true;
            continue;
        }
        if (fields.size() != cols) {
            throw std::runtime_error("read_csv: ragged row with " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(cols));
        }
        for (const std::string& f : fields) {
            double v = 0.0;
            if (!parse_double(f, v)) {
                throw std::runtime_error("read_csv: non-numeric field '" + f + "'");
            }
            data.push_back(v);
        }
        ++rows;
    }
    table.values = Matrix(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) table.values(r, c) = data[r * cols + c];
    }
    return table;
}

std::vector<double> read_numeric_column(std::istream& is) {
    std::vector<double> out;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields = split_fields(line);
        if (fields.size() != 1) {
            throw std::runtime_error("read_numeric_column: expected a single column, got " +
                                     std::to_string(fields.size()));
        }
        double v = 0.0;
        if (!parse_double(fields[0], v)) {
            if (first) {  // header row
                first = false;
                continue;
            }
            throw std::runtime_error("read_numeric_column: non-numeric field '" + fields[0] + "'");
        }
        first = false;
        out.push_back(v);
    }
    return out;
}

}  // namespace ptrisk
