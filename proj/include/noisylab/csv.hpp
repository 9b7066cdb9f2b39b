#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace noisylab {

// Comma-separated text with a mandatory header row, '.' decimals, RFC 4180
// quoting. Cells are kept as strings; typed access happens in dataio.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column_index(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);
std::string to_csv(const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

// Shortest decimal text that parses back to exactly the same double.
std::string format_number(double value);

}  // namespace noisylab
