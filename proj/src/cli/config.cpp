#include <algorithm>
#include <sstream>

#include "broncho/cli.hpp"
#include "broncho/errors.hpp"
#include "broncho/text_io.hpp"

namespace broncho {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> config_to_args(const std::string& text, const std::string& source) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError(source + ":" + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw InputError(source + ":" + std::to_string(line_no) + ": empty key");
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "config") throw InputError(source + ":" + std::to_string(line_no) + ": nested config files are not supported");
    if (value == "false") continue;
    out.push_back("--" + key);
    if (value == "true") continue;
    std::istringstream vs(value);
    std::string tok;
    while (vs >> tok) out.push_back(tok);
  }
  return out;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw InputError("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return args;
  const auto injected = config_to_args(read_text_file(path), path);
  // Insert after the program name and the subcommand.
  const std::size_t at = std::min<std::size_t>(2, rest.size());
  rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
  return rest;
}

}  // namespace broncho
