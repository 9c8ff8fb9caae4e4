#include "syncact/text.hpp"

#include <algorithm>

#include "syncact/errors.hpp"

namespace syncact {

std::size_t display_width(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], display_width(row[c]));
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line.append(widths[c] - display_width(row[c]) + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> parse_csv_record(std::string_view line, std::size_t line_number) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool after_quote = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      after_quote = false;
    } else if (c == '"') {
      if (!field.empty() || after_quote) {
        throw ParseError("line " + std::to_string(line_number) + ": stray quote in field");
      }
      quoted = true;
    } else if (after_quote) {
      throw ParseError("line " + std::to_string(line_number) + ": text after closing quote");
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError("line " + std::to_string(line_number) + ": unterminated quote");
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace syncact
