#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>

#include "mapf/benchmark.hpp"
#include "mapf/movingai.hpp"

using namespace mapf;

namespace {

const std::filesystem::path kData = MAPF_TEST_DATA;

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

ParseErrorKind map_error(const std::string& file) {
  try {
    parse_map(read_text_file(kData / "malformed" / file));
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << file << " parsed";
  return ParseErrorKind::bad_header;
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("mapf_cli_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(ParseMap, TwoByTwoOpen) {
  const GridMap map = parse_map("type octile\nheight 2\nwidth 2\nmap\n..\n..\n");
  EXPECT_EQ(map.width(), 2);
  EXPECT_EQ(map.height(), 2);
  EXPECT_EQ(map.passable_count(), 4);
  EXPECT_EQ(map.edge_count(), 4u);
}

TEST(ParseMap, SingleObstacleAndGlyphTable) {
  const GridMap map = parse_map("type octile\nwidth 3\nheight 3\nmap\nG.S\n.@.\nOTW\n");
  EXPECT_TRUE(map.is_blocked(map.vertex(1, 1)));
  EXPECT_EQ(map.degree(map.vertex(1, 0)), 2);
  EXPECT_EQ(map.degree(map.vertex(0, 1)), 1);
  EXPECT_TRUE(map.is_passable(map.vertex(0, 0)));
  EXPECT_TRUE(map.is_passable(map.vertex(2, 0)));
  for (int c = 0; c < 3; ++c) EXPECT_TRUE(map.is_blocked(map.vertex(c, 2)));
  EXPECT_NO_THROW(parse_map("type octile\r\nheight 1\r\nwidth 2\r\nmap\r\n..\r\n"));
}

TEST(ParseMap, BenchmarkFileMatchesGlyphCount) {
  const std::string text = read_text_file(kData / "random-32-32-10.map");
  // Independent count over the raw rows after the `map` line.
  auto lines = lines_of(text);
  const auto at = std::find(lines.begin(), lines.end(), "map");
  ASSERT_NE(at, lines.end());
  int blocked = 0, rows = 0;
  for (auto it = at + 1; it != lines.end(); ++it, ++rows)
    blocked += static_cast<int>(std::count(it->begin(), it->end(), '@'));
  const GridMap map = parse_map(text);
  EXPECT_EQ(rows, 32);
  EXPECT_EQ(map.cell_count(), 1024);
  EXPECT_EQ(map.cell_count() - map.passable_count(), blocked);
  EXPECT_NEAR(blocked / 1024.0, 0.10, 0.01);
}

TEST(ParseMap, ErrorKinds) {
  EXPECT_EQ(map_error("bad_header.map"), ParseErrorKind::bad_header);
  EXPECT_EQ(map_error("dimension_mismatch.map"), ParseErrorKind::dimension_mismatch);
  EXPECT_EQ(map_error("unknown_glyph.map"), ParseErrorKind::unknown_glyph);
  EXPECT_EQ(map_error("truncated_grid.map"), ParseErrorKind::truncated_grid);
  try {
    parse_map(read_text_file(kData / "malformed" / "unknown_glyph.map"));
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 6);
  }
}

TEST(ParseMap, RoundTrip) {
  for (const char* file : {"random-32-32-10.map", "room-32-32-4.map"}) {
    const GridMap map = parse_map(read_text_file(kData / file));
    const std::string text = serialize_map(map);
    EXPECT_EQ(parse_map(text), map);
    EXPECT_EQ(serialize_map(parse_map(text)), text);
  }
}

TEST(ParseScen, EmptyBody) {
  const GridMap map = parse_map(read_text_file(kData / "malformed" / "small.map"));
  EXPECT_TRUE(parse_scen("version 1\n", map).empty());
}

TEST(ParseScen, ErrorsCarryEntryIndex) {
  const GridMap map = parse_map(read_text_file(kData / "malformed" / "small.map"));
  const auto check = [&](const char* file, ParseErrorKind kind, int entry) {
    try {
      parse_scen(read_text_file(kData / "malformed" / file), map);
      ADD_FAILURE() << file << " parsed";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.kind(), kind) << file;
      EXPECT_EQ(e.entry(), entry) << file;
    }
  };
  check("bad_version.scen", ParseErrorKind::bad_version, -1);
  check("blocked_cell.scen", ParseErrorKind::blocked_cell, 1);
  check("out_of_bounds.scen", ParseErrorKind::out_of_bounds, 2);
  check("bad_entry.scen", ParseErrorKind::bad_entry, 0);
}

TEST(ParseScen, PublishedFileCountsAndRanges) {
  const GridMap map = parse_map(read_text_file(kData / "room-32-32-4.map"));
  const std::string text = read_text_file(kData / "room-32-32-4-even-1.scen");
  int entry_lines = 0;
  int max_coord = 0;
  for (const auto& line : lines_of(text)) {
    if (line.empty() || line.rfind("version", 0) == 0) continue;
    ++entry_lines;
    std::stringstream in(line);
    std::string bucket, name;
    int w, h, sc, sr, gc, gr;
    in >> bucket >> name >> w >> h >> sc >> sr >> gc >> gr;
    max_coord = std::max({max_coord, sc, sr, gc, gr});
  }
  const auto entries = parse_scen(text, map);
  EXPECT_EQ(static_cast<int>(entries.size()), entry_lines);
  int parsed_max = 0;
  for (const auto& e : entries)
    parsed_max = std::max({parsed_max, e.start_col, e.start_row, e.goal_col, e.goal_row});
  EXPECT_EQ(parsed_max, max_coord);
  EXPECT_LT(parsed_max, 32);
  EXPECT_EQ(parse_scen(serialize_scen(entries), map), entries);
}

TEST(MakeInstance, FirstKInOrder) {
  auto map = std::make_shared<const GridMap>(parse_map(read_text_file(kData / "random-32-32-10.map")));
  const auto entries = parse_scen(read_text_file(kData / "random-32-32-10-random-1.scen"), *map);
  const Instance a = make_instance(map, entries, 30);
  const Instance b = make_instance(map, entries, 30);
  ASSERT_EQ(a.num_agents(), 30);
  for (int i = 0; i < 30; ++i) {
    EXPECT_EQ(a.agent(i).start, map->vertex(entries[i].start_col, entries[i].start_row));
    EXPECT_EQ(a.agent(i).goal, map->vertex(entries[i].goal_col, entries[i].goal_row));
    EXPECT_EQ(a.agent(i).start, b.agent(i).start);
    EXPECT_EQ(a.agent(i).shortest_dist, static_cast<int>(entries[i].optimal_hint));
  }
  EXPECT_THROW(make_instance(map, entries, 201), InstanceError);
}

TEST(Emit, HeaderOnlyCsv) {
  const auto text = format_csv({});
  EXPECT_EQ(text,
            "map,scen,algorithm,k,m,N,gamma,T,seed,initial_soc,final_soc,suboptimality,auc,npo_total,"
            "dp,exp,termination\n");
}

TEST(Emit, NumbersRoundTripExactly) {
  ResultRow row;
  row.map = "m.map";
  row.scen = "s.scen";
  row.algorithm = Algorithm::drop;
  row.k = 7;
  row.m = 8;
  row.N = 16;
  row.gamma = 0.01;
  row.T = 1.0 / 3.0;
  row.seed = 18446744073709551615ULL;
  row.termination = "budget";
  MetricsSummary m;
  m.suboptimality = 0.1 + 0.2;
  m.auc = 12345.678901234567;
  m.npo_total = 999;
  m.dp = 12;
  m.exp = 987.0 / 999.0;
  m.final_soc = 100;
  m.initial_soc = 120;
  row.metrics = m;
  const std::vector<ResultRow> rows{row};
  const auto lines = lines_of(format_csv(rows));
  ASSERT_EQ(lines.size(), 2u);
  const auto f = csv_fields(lines[1]);
  ASSERT_EQ(f.size(), result_columns().size());
  EXPECT_EQ(f[2], "drop");
  EXPECT_EQ(std::strtod(f[6].c_str(), nullptr), row.gamma);
  EXPECT_EQ(std::strtod(f[7].c_str(), nullptr), row.T);
  EXPECT_EQ(std::strtoull(f[8].c_str(), nullptr, 10), row.seed);
  EXPECT_EQ(std::strtod(f[11].c_str(), nullptr), m.suboptimality);
  EXPECT_EQ(std::strtod(f[12].c_str(), nullptr), m.auc);
  EXPECT_EQ(std::strtod(f[15].c_str(), nullptr), *m.exp);
  EXPECT_EQ(f[16], "budget");

  const auto json = nlohmann::json::parse(format_json(rows));
  ASSERT_EQ(json.size(), 1u);
  EXPECT_EQ(json[0]["auc"].get<double>(), m.auc);
  EXPECT_EQ(json[0]["exp"].get<double>(), *m.exp);
  EXPECT_EQ(json[0]["seed"].get<std::uint64_t>(), row.seed);
}

TEST(Emit, UnwritablePathNamesIt) {
  try {
    emit_results({}, ResultFormat::csv, "/proc/definitely/not/here.csv");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/proc/definitely/not/here.csv"), std::string::npos);
  }
}

TEST(Benchmark, RowCardinalityAndConvergenceFiles) {
  TempDir dir;
  BenchConfig config;
  config.map_path = kData / "random-32-32-10.map";
  config.scen_path = kData / "random-32-32-10-random-2.scen";
  config.agent_counts = {10, 20};
  config.algorithms = {Algorithm::sequential, Algorithm::drop};
  config.repetitions = 2;
  config.params.time_budget = 0.2;
  config.params.threads = 2;
  config.params.seed = 40;
  config.output_path = dir / "out.csv";
  config.convergence_dir = dir / "conv";
  std::vector<std::pair<std::size_t, RunEventLog>> logs;
  const auto rows = run_benchmark(config, [&](const ResultRow&, const RunResult* r) {
    ASSERT_NE(r, nullptr);
    logs.emplace_back(r->event_log.improvements.size(), r->event_log);
  });
  ASSERT_EQ(rows.size(), 2u * 2u * 2u);
  EXPECT_EQ(rows[0].seed, 40u);
  EXPECT_EQ(rows[1].seed, 41u);
  for (const auto& row : rows) EXPECT_TRUE(row.metrics) << row.detail;
  EXPECT_EQ(lines_of(read_text_file(config.output_path)).size(), rows.size() + 1);
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(config.convergence_dir)) {
    ++files;
    (void)entry;
  }
  EXPECT_EQ(files, rows.size());
  // Step count of a convergence file equals the event count of its run.
  const auto conv = lines_of(format_convergence(logs[0].second));
  EXPECT_EQ(conv.size() - 1, logs[0].first);
  EXPECT_EQ(conv.front(), "time,soc,sum_of_delays");
}

TEST(Benchmark, NoInitialSolutionRow) {
  TempDir dir;
  dir.write("corridor.map", "type octile\nheight 1\nwidth 5\nmap\n.....\n");
  dir.write("corridor.scen",
            "version 1\n0\tcorridor.map\t5\t1\t0\t0\t4\t0\t4.00000000\n"
            "0\tcorridor.map\t5\t1\t4\t0\t0\t0\t4.00000000\n");
  BenchConfig config;
  config.map_path = dir / "corridor.map";
  config.scen_path = dir / "corridor.scen";
  config.agent_counts = {2, 3};
  config.algorithms = {Algorithm::sequential};
  config.params.time_budget = 0.2;
  config.params.restart_limit = 2;
  const auto rows = run_benchmark(config);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].termination, "no-initial-solution");
  EXPECT_FALSE(rows[0].metrics);
  EXPECT_EQ(rows[1].termination, "error");  // k exceeds the scenario
  EXPECT_FALSE(rows[1].metrics);
  const auto f = csv_fields(lines_of(format_csv(rows))[1]);
  EXPECT_EQ(f[10], "");
  EXPECT_EQ(f[16], "no-initial-solution");
}
