#pragma once

#include <string>
#include <vector>

namespace signet {

/// Parsed CSV contents: a header row plus data rows, all as raw strings.
/// Fields are comma-separated with no quoting; the formats this project
/// reads and writes never contain commas inside fields.
struct CsvTable {
  std::string path;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<long> line_numbers;  // 1-based source line per data row
};

CsvTable read_csv(const std::string& path);

/// Throws ParseError unless the header matches exactly.
void expect_header(const CsvTable& table, const std::vector<std::string>& expected);

double parse_double_field(const std::string& field, const std::string& file, long line);
long parse_long_field(const std::string& field, const std::string& file, long line);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

/// Civil-calendar day number (days since 1970-01-01) of an ISO-8601 date.
long parse_iso_date(const std::string& text, const std::string& file, long line);
std::string format_iso_date(long day_number);

}  // namespace signet
