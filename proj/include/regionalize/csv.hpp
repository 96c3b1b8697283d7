#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace regionalize::csv {

/// Comma-separated UTF-8 table with a mandatory header row. Fields are
/// whitespace-trimmed; quoting is not supported.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> line_numbers;  // 1-based source line of each row
};

Table read(const std::filesystem::path& path);
Table parse(std::string_view text, const std::string& source_name = "<memory>");

/// Strict decimal parse of a whole field; throws DataError mentioning `where`.
double to_double(const std::string& field, const std::string& where);
long long to_integer(const std::string& field, const std::string& where);

/// Shortest representation that round-trips to the same double.
std::string format(double value);

std::vector<std::string> split(std::string_view line, char sep = ',');
std::string_view trim(std::string_view s);

void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace regionalize::csv
