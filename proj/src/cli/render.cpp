#include "rsp/cli/render.hpp"

#include <algorithm>

#include "rsp/wire/codec.hpp"

namespace rsp::cli {

std::optional<Format> parse_format(std::string_view text) {
  if (text == "table") return Format::Table;
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  return std::nullopt;
}

std::size_t display_width(std::string_view utf8) {
  return static_cast<std::size_t>(
      std::count_if(utf8.begin(), utf8.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string csv_escape(const Cell& cell) {
  if (!cell) return {};
  const std::string& s = *cell;
  if (!s.empty() && s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

// Keeps one row per line.
std::string flatten(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '\n') out += "\\n";
    else if (c == '\r') out += "\\r";
    else if (c == '\t') out += "\\t";
    else out += c;
  }
  return out;
}

std::string aligned(const std::vector<std::string>& headings, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(headings.size());
  for (std::size_t j = 0; j < headings.size(); ++j) width[j] = display_width(headings[j]);
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], display_width(row[j]));

  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string text;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      text += cells[j];
      if (j + 1 < cells.size()) text.append(width[j] - display_width(cells[j]) + 2, ' ');
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out += text;
    out += '\n';
  };
  line(headings);
  for (const auto& row : rows) line(row);
  return out;
}

std::string csv(const std::vector<std::string>& headings, const std::vector<std::vector<Cell>>& rows) {
  std::string out;
  auto line = [&](const auto& cells) {
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (j > 0) out += ',';
      out += csv_escape(cells[j]);
    }
    out += "\r\n";
  };
  line(std::vector<Cell>(headings.begin(), headings.end()));
  for (const auto& row : rows) line(row);
  return out;
}

}  // namespace

std::string render(const TableMessage& table, Format format) {
  switch (format) {
    case Format::Json:
      return encode(table) + "\n";
    case Format::Csv: {
      std::vector<std::string> names;
      for (const auto& f : table.fields) names.push_back(f.name);
      return csv(names, table.items);
    }
    case Format::Table: {
      std::vector<std::string> titles;
      for (const auto& f : table.fields)
        titles.push_back(f.is_joined ? std::string(kJoinedMarker) + flatten(f.title) : flatten(f.title));
      std::vector<std::vector<std::string>> rows;
      for (const auto& item : table.items) {
        std::vector<std::string> row;
        for (const auto& cell : item) row.push_back(cell ? flatten(*cell) : std::string(kNullMarker));
        rows.push_back(std::move(row));
      }
      return aligned(titles, rows);
    }
  }
  return {};
}

std::string render(const std::vector<TableHeader>& headers, Format format) {
  if (format == Format::Json) return encode(ReadTableHeadersResponse{headers}) + "\n";
  std::vector<std::vector<Cell>> rows;
  for (const auto& h : headers) rows.push_back({h.table_name, h.singular_title, h.plural_title, h.description});
  if (format == Format::Csv) return csv({"TableName", "SingularTitle", "PluralTitle", "Description"}, rows);
  std::vector<std::vector<std::string>> text;
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (const auto& cell : row) line.push_back(cell ? flatten(*cell) : std::string(kNullMarker));
    text.push_back(std::move(line));
  }
  return aligned({"Name", "Singular", "Plural", "Description"}, text);
}

}  // namespace rsp::cli
