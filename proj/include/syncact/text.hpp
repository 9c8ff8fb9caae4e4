#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace syncact {

// Display width in code points (UTF-8 continuation bytes are not counted).
std::size_t display_width(std::string_view s);

// Left-aligned columns separated by two spaces; no trailing whitespace.
std::string render_table(const std::vector<std::vector<std::string>>& rows);

// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(std::string_view s);

// Parses one CSV record (RFC 4180 quoting). `line` must not contain an
// unquoted newline. Throws ParseError naming `line_number` on bad quoting.
std::vector<std::string> parse_csv_record(std::string_view line, std::size_t line_number);

}  // namespace syncact
