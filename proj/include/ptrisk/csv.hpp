#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ptrisk/matrix.hpp"

namespace ptrisk {

/// 17-significant-digit decimal string; always round-trips the double exactly.
std::string format_double(double v);

/// Shortest decimal string that round-trips the double exactly.
std::string format_double_short(double v);

/// Writes header + rows with comma separator and LF line endings.
void write_csv(std::ostream& os, const std::vector<std::string>& header, const Matrix& values);

struct CsvTable {
    std::vector<std::string> header;
    Matrix values;
};

/// Reads a numeric CSV written by write_csv. Lines starting with '#' are
/// skipped. Throws std::runtime_error on ragged or non-numeric rows.
CsvTable read_csv(std::istream& is);

/// Reads a single-column numeric CSV; a non-numeric first line is treated as
/// a header and skipped.
std::vector<double> read_numeric_column(std::istream& is);

}  // namespace ptrisk
