#pragma once

// Tabular output documents rendered as JSON, CSV or markdown.

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace fqdiff {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Markdown };

inline std::optional<Format> parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "markdown" || s == "md") return Format::Markdown;
  return std::nullopt;
}

inline constexpr int kSchemaVersion = 1;

struct OutputDoc {
  std::string kind;
  std::vector<std::string> columns;  // keys of each row, in CSV order
  Json rows = Json::array();
  // Optional markdown layout; falls back to columns / rows when empty.
  std::vector<std::string> md_header;
  std::vector<std::vector<std::string>> md_rows;
  std::string caption;
  int exit_status = 0;
};

namespace detail {

inline std::string cell_text(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string md_escape(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

inline Json to_json(const OutputDoc& doc) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = doc.kind;
  j["rows"] = doc.rows;
  return j;
}

inline std::string render(const OutputDoc& doc, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::Json:
      os << to_json(doc).dump(2) << "\n";
      break;
    case Format::Csv: {
      for (std::size_t i = 0; i < doc.columns.size(); ++i) os << (i ? "," : "") << doc.columns[i];
      os << "\n";
      for (const auto& row : doc.rows) {
        for (std::size_t i = 0; i < doc.columns.size(); ++i) {
          const auto it = row.find(doc.columns[i]);
          os << (i ? "," : "") << detail::csv_escape(it == row.end() ? "" : detail::cell_text(*it));
        }
        os << "\n";
      }
      break;
    }
    case Format::Markdown: {
      auto line = [&](const std::vector<std::string>& cells) {
        os << "|";
        for (const auto& c : cells) os << " " << detail::md_escape(c) << " |";
        os << "\n";
      };
      if (!doc.caption.empty()) os << doc.caption << "\n\n";
      const bool custom = !doc.md_header.empty();
      const auto& header = custom ? doc.md_header : doc.columns;
      line(header);
      os << "|";
      for (std::size_t i = 0; i < header.size(); ++i) os << "---|";
      os << "\n";
      if (custom) {
        for (const auto& r : doc.md_rows) line(r);
      } else {
        for (const auto& row : doc.rows) {
          std::vector<std::string> cells;
          for (const auto& c : doc.columns) {
            const auto it = row.find(c);
            cells.push_back(it == row.end() ? "" : detail::cell_text(*it));
          }
          line(cells);
        }
      }
      break;
    }
  }
  return os.str();
}

}  // namespace fqdiff
