#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mapf/instance.hpp"

namespace mapf {

enum class ParseErrorKind {
  bad_header,
  dimension_mismatch,
  unknown_glyph,
  truncated_grid,
  bad_version,
  bad_entry,
  out_of_bounds,
  blocked_cell,
};

std::string_view to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& detail, int entry = -1);

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }    // 1-based
  int entry() const { return entry_; }  // 0-based scenario entry, -1 for maps

 private:
  ParseErrorKind kind_;
  int line_;
  int entry_;
};

// MovingAI .map text: `type`, `height H`, `width W` (either order), `map`,
// then H rows of W glyphs. `.`, `G`, `S` are passable; `@`, `O`, `T`, `W`
// blocked.
GridMap parse_map(std::string_view text);

// Writes `.` for passable and `@` for blocked cells under a `type octile`
// header.
std::string serialize_map(const GridMap& map);

struct ScenarioEntry {
  int bucket = 0;
  std::string map_name;
  int map_width = 0;
  int map_height = 0;
  int start_col = 0;
  int start_row = 0;
  int goal_col = 0;
  int goal_row = 0;
  double optimal_hint = 0.0;  // informational; octile length in published files

  friend bool operator==(const ScenarioEntry&, const ScenarioEntry&) = default;
};

// MovingAI .scen text: a `version` line followed by tab-separated entries.
// Endpoints must lie inside `map` on passable cells.
std::vector<ScenarioEntry> parse_scen(std::string_view text, const GridMap& map);
std::string serialize_scen(std::span<const ScenarioEntry> entries);

// Instance over the first k entries, in file order. Throws InstanceError if
// k exceeds the entry count or the entries violate instance invariants.
Instance make_instance(std::shared_ptr<const GridMap> map, std::span<const ScenarioEntry> entries,
                       int k);

// Whole file contents; throws std::runtime_error naming the path.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace mapf
