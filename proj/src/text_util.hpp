#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "comdet/error.hpp"

// Shared between the readers/writers in io.cpp and ingest.cpp. Not part of
// the public surface.
namespace comdet::detail {

inline double parse_double(std::string_view s, const std::string& context) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw InputError(context + ": expected a number, got '" + std::string(s) +
                     "'");
  return v;
}

inline long parse_long(std::string_view s, const std::string& context) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw InputError(context + ": expected an integer, got '" +
                     std::string(s) + "'");
  return v;
}

inline std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& file,
                       const std::string& content) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + file.string());
  out << content;
  if (!out) throw InputError("write failed for " + file.string());
}

// Minimal CSV: fields are quoted only when they contain a comma, quote, or
// newline; quotes double inside quoted fields; records end with \n.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos)
    return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::vector<std::vector<std::string>> parse_csv(
    const std::string& text, const std::string& context) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_open = false;  // distinguishes "" empty line from one empty field
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        field_open = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        field_open = true;  // a comma implies a following field
        break;
      case '\r':
        break;
      case '\n':
        if (!row.empty() || !field.empty() || field_open) {
          row.push_back(std::move(field));
          field.clear();
          rows.push_back(std::move(row));
          row.clear();
        }
        field_open = false;
        break;
      default:
        field += c;
        field_open = true;
    }
  }
  if (quoted) throw InputError(context + ": unterminated quoted field");
  if (!row.empty() || !field.empty() || field_open) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace comdet::detail
