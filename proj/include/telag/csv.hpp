// Minimal RFC-4180 CSV reading/writing plus round-trip-exact number
// formatting (shortest representation that parses back to the same double).
#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "telag/errors.hpp"

namespace telag {

inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text, const std::string& context) {
  // tolerate surrounding spaces, which appear in hand-edited files
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw IoError(context + ": cannot parse number '" + std::string(text) + "'");
  return value;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

namespace detail {

inline std::vector<std::vector<std::string>> parse_csv_text(const std::string& text,
                                                            const std::string& context) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool any_field = false;
  std::size_t i = 0;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    any_field = true;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
    any_field = false;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r') {
      // swallow; the \n (if any) ends the record
    } else if (c == '\n') {
      end_record();
    } else {
      field.push_back(c);
    }
    ++i;
  }
  if (in_quotes) throw IoError(context + ": unterminated quoted field");
  if (!field.empty() || any_field) end_record();
  return records;
}

}  // namespace detail

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  auto records = detail::parse_csv_text(buf.str(), path);
  if (records.empty()) throw IoError(path + ": file is empty");
  CsvTable table;
  table.header = std::move(records.front());
  const std::size_t width = table.header.size();
  table.rows.assign(std::make_move_iterator(records.begin() + 1),
                    std::make_move_iterator(records.end()));
  for (std::size_t r = 0; r < table.rows.size(); ++r)
    if (table.rows[r].size() != width)
      throw IoError(path + ": row " + std::to_string(r + 2) + " has " +
                    std::to_string(table.rows[r].size()) + " fields, expected " +
                    std::to_string(width));
  return table;
}

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  auto write_record = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out.put(',');
      out << csv_escape(fields[i]);
    }
    out.put('\n');
  };
  write_record(header);
  for (const auto& row : rows) write_record(row);
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace telag
