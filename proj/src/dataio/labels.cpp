#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "syncact/bytes.hpp"
#include "syncact/dataio.hpp"
#include "syncact/errors.hpp"
#include "syncact/text.hpp"

namespace syncact::dataio {
namespace {

// Splits text into CSV records; a newline inside quotes stays in the record.
std::vector<std::pair<std::size_t, std::string>> split_records(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> records;
  std::string current;
  std::size_t line = 1;
  std::size_t record_line = 1;
  bool quoted = false;
  for (char c : text) {
    if (c == '"') quoted = !quoted;
    if (c == '\n' && !quoted) {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      records.emplace_back(record_line, std::move(current));
      current.clear();
      record_line = ++line;
      continue;
    }
    if (c == '\n') ++line;
    current += c;
  }
  if (!current.empty()) {
    if (current.back() == '\r') current.pop_back();
    records.emplace_back(record_line, std::move(current));
  }
  return records;
}

}  // namespace

matching::LabelTable parse_labels(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  const auto records = split_records(text);
  if (records.empty()) throw ParseError("line 1: missing header 'id,description'");
  const auto header = parse_csv_record(records.front().second, records.front().first);
  if (header.size() != 2 || header[0] != "id" || header[1] != "description") {
    throw ParseError("line 1: header must be 'id,description'");
  }
  matching::LabelTable table;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& [line, record] = records[i];
    if (record.empty()) continue;
    const auto fields = parse_csv_record(record, line);
    if (fields.size() != 2) {
      throw ParseError("line " + std::to_string(line) + ": expected 2 fields, found " +
                       std::to_string(fields.size()));
    }
    std::size_t id = 0;
    const auto& s = fields[0];
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), id);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw ParseError("line " + std::to_string(line) + ": id '" + s + "' is not a non-negative integer");
    }
    if (!table.entries.emplace(id, fields[1]).second) {
      throw ParseError("line " + std::to_string(line) + ": duplicate id " + s);
    }
  }
  return table;
}

matching::LabelTable read_labels(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path.string());
  try {
    return parse_labels(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_labels(const std::filesystem::path& path, const matching::LabelTable& labels) {
  std::string text = "id,description\n";
  for (const auto& [id, description] : labels.entries) {
    text += std::to_string(id) + "," + csv_field(description) + "\n";
  }
  write_file_bytes(path.string(),
                   std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace syncact::dataio
