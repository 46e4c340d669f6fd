#pragma once

// Locale-independent text formats: reals in CSV, flat key=value files.

#include <filesystem>
#include <istream>
#include <map>
#include <string>

namespace nlsplit {

// 17 significant digits, round-trip exact, "." decimal separator.
std::string format_real(double x);

// Strict decimal parse of a full string; throws ConfigError.
double parse_real(const std::string& text, const std::string& context);

// Ordered key=value pairs. Blank lines and lines starting with '#' are
// ignored; whitespace around keys and values is trimmed. Keys are
// case-sensitive and may appear once.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in, const std::string& source_name = "<input>");
KeyValues read_key_values(const std::filesystem::path& path);

}  // namespace nlsplit
