#include "mapf/movingai.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

namespace mapf {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto end = text.find('\n');
    std::string_view line = text.substr(0, end);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool blocked_glyph(char c, bool& blocked) {
  switch (c) {
    case '.': case 'G': case 'S': blocked = false; return true;
    case '@': case 'O': case 'T': case 'W': blocked = true; return true;
    default: return false;
  }
}

}  // namespace

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::bad_header: return "bad header";
    case ParseErrorKind::dimension_mismatch: return "dimension mismatch";
    case ParseErrorKind::unknown_glyph: return "unknown glyph";
    case ParseErrorKind::truncated_grid: return "truncated grid";
    case ParseErrorKind::bad_version: return "bad version line";
    case ParseErrorKind::bad_entry: return "malformed entry";
    case ParseErrorKind::out_of_bounds: return "coordinate out of bounds";
    case ParseErrorKind::blocked_cell: return "endpoint on blocked cell";
  }
  return "?";
}

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& detail, int entry)
    : std::runtime_error("line " + std::to_string(line) + ": " + std::string(to_string(kind)) +
                         (detail.empty() ? "" : " (" + detail + ")")),
      kind_(kind),
      line_(line),
      entry_(entry) {}

GridMap parse_map(std::string_view text) {
  const auto lines = split_lines(text);
  int width = -1, height = -1;
  std::size_t row_start = 0;
  bool saw_type = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    const int line_no = static_cast<int>(i) + 1;
    if (fields.empty()) continue;
    if (fields[0] == "type" && !saw_type) {
      saw_type = true;
    } else if ((fields[0] == "height" || fields[0] == "width") && fields.size() == 2) {
      int value = 0;
      if (!parse_number(fields[1], value) || value <= 0)
        throw ParseError(ParseErrorKind::bad_header, line_no, "bad dimension value");
      (fields[0] == "height" ? height : width) = value;
    } else if (fields[0] == "map" && fields.size() == 1) {
      row_start = i + 1;
      break;
    } else {
      throw ParseError(ParseErrorKind::bad_header, line_no, std::string(lines[i]));
    }
  }
  if (!saw_type || width < 0 || height < 0 || row_start == 0)
    throw ParseError(ParseErrorKind::bad_header, static_cast<int>(lines.size()),
                     "missing type/height/width/map");

  std::vector<bool> blocked(static_cast<std::size_t>(width) * height);
  for (int r = 0; r < height; ++r) {
    const std::size_t index = row_start + r;
    const int line_no = static_cast<int>(index) + 1;
    if (index >= lines.size() || (lines[index].empty() && index + 1 == lines.size()))
      throw ParseError(ParseErrorKind::truncated_grid, line_no,
                       "expected " + std::to_string(height) + " rows, got " + std::to_string(r));
    const std::string_view row = lines[index];
    if (static_cast<int>(row.size()) != width)
      throw ParseError(ParseErrorKind::dimension_mismatch, line_no,
                       "row has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(width));
    for (int c = 0; c < width; ++c) {
      bool is_blocked = false;
      if (!blocked_glyph(row[c], is_blocked))
        throw ParseError(ParseErrorKind::unknown_glyph, line_no,
                         std::string("'") + row[c] + "' at column " + std::to_string(c));
      blocked[static_cast<std::size_t>(r) * width + c] = is_blocked;
    }
  }
  for (std::size_t i = row_start + height; i < lines.size(); ++i)
    if (!lines[i].empty())
      throw ParseError(ParseErrorKind::dimension_mismatch, static_cast<int>(i) + 1,
                       "more rows than the declared height");
  return GridMap(width, height, std::move(blocked));
}

std::string serialize_map(const GridMap& map) {
  std::string out = "type octile\nheight " + std::to_string(map.height()) + "\nwidth " +
                    std::to_string(map.width()) + "\nmap\n";
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) out += map.is_passable(map.vertex(c, r)) ? '.' : '@';
    out += '\n';
  }
  return out;
}

std::vector<ScenarioEntry> parse_scen(std::string_view text, const GridMap& map) {
  const auto lines = split_lines(text);
  if (lines.empty() || split_fields(lines[0]).empty() || split_fields(lines[0])[0] != "version")
    throw ParseError(ParseErrorKind::bad_version, 1, "expected 'version ...'");

  std::vector<ScenarioEntry> entries;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    if (fields.empty()) continue;
    const int line_no = static_cast<int>(i) + 1;
    const int index = static_cast<int>(entries.size());
    ScenarioEntry e;
    const bool ok = fields.size() == 9 && parse_number(fields[0], e.bucket) &&
                    parse_number(fields[2], e.map_width) && parse_number(fields[3], e.map_height) &&
                    parse_number(fields[4], e.start_col) && parse_number(fields[5], e.start_row) &&
                    parse_number(fields[6], e.goal_col) && parse_number(fields[7], e.goal_row) &&
                    parse_number(fields[8], e.optimal_hint);
    if (!ok) throw ParseError(ParseErrorKind::bad_entry, line_no, "expected 9 fields", index);
    e.map_name = std::string(fields[1]);

    for (const auto& [c, r, what] : {std::tuple{e.start_col, e.start_row, "start"},
                                     std::tuple{e.goal_col, e.goal_row, "goal"}}) {
      if (!map.in_bounds(c, r) || c >= e.map_width || r >= e.map_height)
        throw ParseError(ParseErrorKind::out_of_bounds, line_no,
                         std::string(what) + " (" + std::to_string(c) + "," + std::to_string(r) + ")",
                         index);
      if (map.is_blocked(map.vertex(c, r)))
        throw ParseError(ParseErrorKind::blocked_cell, line_no,
                         std::string(what) + " (" + std::to_string(c) + "," + std::to_string(r) + ")",
                         index);
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::string serialize_scen(std::span<const ScenarioEntry> entries) {
  std::string out = "version 1\n";
  char optimal[64];
  for (const ScenarioEntry& e : entries) {
    std::snprintf(optimal, sizeof optimal, "%.8f", e.optimal_hint);
    out += std::to_string(e.bucket) + '\t' + e.map_name + '\t' + std::to_string(e.map_width) + '\t' +
           std::to_string(e.map_height) + '\t' + std::to_string(e.start_col) + '\t' +
           std::to_string(e.start_row) + '\t' + std::to_string(e.goal_col) + '\t' +
           std::to_string(e.goal_row) + '\t' + optimal + '\n';
  }
  return out;
}

Instance make_instance(std::shared_ptr<const GridMap> map, std::span<const ScenarioEntry> entries,
                       int k) {
  if (k < 1 || k > static_cast<int>(entries.size()))
    throw InstanceError("requested " + std::to_string(k) + " agents but the scenario has " +
                        std::to_string(entries.size()) + " entries");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(k);
  for (int i = 0; i < k; ++i) {
    const ScenarioEntry& e = entries[i];
    pairs.emplace_back(map->vertex(e.start_col, e.start_row), map->vertex(e.goal_col, e.goal_row));
  }
  return Instance(std::move(map), pairs);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw std::runtime_error("error reading " + path.string());
  return buffer.str();
}

}  // namespace mapf
