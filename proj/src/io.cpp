#include "nlsplit/io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "nlsplit/errors.hpp"

namespace nlsplit {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_real(const std::string& text, const std::string& context) {
  const std::string s = trim(text);
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  const auto res = std::from_chars(begin, end, value);
  if (s.empty() || res.ec != std::errc() || res.ptr != end)
    throw ConfigError(context + ": not a number: '" + text + "'");
  return value;
}

KeyValues parse_key_values(std::istream& in, const std::string& source_name) {
  KeyValues out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    const std::string where = source_name + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (!out.emplace(key, value).second) throw ConfigError(where + ": duplicate key '" + key + "'");
  }
  return out;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  return parse_key_values(in, path.string());
}

}  // namespace nlsplit
