#include "broncho/text_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "broncho/errors.hpp"

namespace broncho {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << content;
  if (!out) throw InputError("write failed for " + path.string());
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  throw InputError("CSV has no column '" + name + "'");
}

namespace {
std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}
}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw InputError(path.string() + ": empty CSV");
  t.header = split_commas(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto row = split_commas(line);
    if (row.size() != t.header.size())
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(t.header.size()) + " fields");
    t.rows.push_back(std::move(row));
  }
  return t;
}

double parse_double(const std::string& field, const std::filesystem::path& path, std::size_t line) {
  // strtod rather than from_chars: accepts the same spellings printf emits.
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size())
    throw InputError(path.string() + ":" + std::to_string(line) + ": bad number '" + field + "'");
  return v;
}

long parse_long(const std::string& field, const std::filesystem::path& path, std::size_t line) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw InputError(path.string() + ":" + std::to_string(line) + ": bad integer '" + field + "'");
  return v;
}

}  // namespace broncho
