#pragma once

#include <string>
#include <vector>

namespace cepstra {

/// Shortest representation that round-trips the exact double value.
std::string format_double(double v);

/// Locale-independent parse of a full numeric cell. Throws DataError on
/// trailing garbage or empty input.
double parse_double(const std::string& cell, const std::string& context);

/// Split one CSV line; supports double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line, const std::string& context);

/// Quote a field if it contains a comma, quote, or newline.
std::string csv_quote(const std::string& field);

/// Read a CSV file into rows of cells. Lines starting with '#' and a
/// trailing empty line are skipped. Throws DataError if unreadable.
std::vector<std::vector<std::string>> read_csv_rows(const std::string& path);

} // namespace cepstra
