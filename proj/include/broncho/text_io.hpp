#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace broncho {

/// Throws InputError naming the path when the file cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws InputError if absent.
  int column(const std::string& name) const;
};

/// Plain comma-separated values without quoting; the first line is the header.
CsvTable read_csv(const std::filesystem::path& path);

/// printf("%.9g"); the fixed text-output float format.
std::string format_number(double value);

double parse_double(const std::string& field, const std::filesystem::path& path, std::size_t line);
long parse_long(const std::string& field, const std::filesystem::path& path, std::size_t line);

}  // namespace broncho
