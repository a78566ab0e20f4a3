#include "mapf/benchmark.hpp"

#include <charconv>
#include <fstream>
#include <json.hpp>

#include "mapf/movingai.hpp"
#include "mapf/validate.hpp"

namespace mapf {

namespace {

// Shortest text that parses back to the same double.
std::string number(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, end);
}

template <typename Int>
std::string number(Int value) {
  return std::to_string(value);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("error writing " + path.string());
}

std::string convergence_name(const ResultRow& row) {
  auto stem = [](const std::string& file) { return std::filesystem::path(file).stem().string(); };
  return stem(row.map) + "_" + stem(row.scen) + "_" + std::string(to_string(row.algorithm)) + "_k" +
         std::to_string(row.k) + "_m" + std::to_string(row.m) + "_s" + std::to_string(row.seed) +
         ".csv";
}

}  // namespace

std::vector<ResultRow> run_benchmark(
    const BenchConfig& config, const std::function<void(const ResultRow&, const RunResult*)>& on_row) {
  const auto map = std::make_shared<const GridMap>(parse_map(read_text_file(config.map_path)));
  const auto entries = parse_scen(read_text_file(config.scen_path), *map);

  std::vector<ResultRow> rows;
  for (Algorithm algorithm : config.algorithms) {
    for (int k : config.agent_counts) {
      for (int rep = 0; rep < config.repetitions; ++rep) {
        RunParams params = config.params;
        params.seed = config.params.seed + static_cast<std::uint64_t>(rep);

        ResultRow row;
        row.map = config.map_path.filename().string();
        row.scen = config.scen_path.filename().string();
        row.algorithm = algorithm;
        row.k = k;
        row.m = algorithm == Algorithm::sequential ? 1 : params.threads;
        row.N = params.neighborhood_size;
        row.gamma = params.gamma;
        row.T = params.time_budget;
        row.seed = params.seed;

        std::optional<RunResult> result;
        try {
          const Instance instance = make_instance(map, entries, k);
          result = run_engine(algorithm, instance, params);
          row.termination = std::string(to_string(result->termination));
          if (result->solved()) {
            const ConflictReport report = validate_solution(instance, result->final_solution);
            if (!report.feasible()) {
              row.termination = "infeasible";
              row.detail = report.conflicts.empty() ? to_string(report.path_errors.front())
                                                    : to_string(report.conflicts.front());
            } else {
              row.metrics = summarize(instance, result->final_solution, result->event_log,
                                      result->initial_soc);
            }
          }
        } catch (const std::exception& e) {
          row.termination = "error";
          row.detail = e.what();
        }

        if (result && row.metrics && !config.convergence_dir.empty())
          emit_convergence(result->event_log, config.convergence_dir / convergence_name(row));
        if (on_row) on_row(row, result ? &*result : nullptr);
        rows.push_back(std::move(row));
      }
    }
  }
  if (!config.output_path.empty()) emit_results(rows, config.format, config.output_path);
  return rows;
}

std::string format_csv(std::span<const ResultRow> rows) {
  std::string out;
  const auto& columns = result_columns();
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += '\n';
  for (const ResultRow& r : rows) {
    const auto& m = r.metrics;
    const std::vector<std::string> fields{
        r.map, r.scen, std::string(to_string(r.algorithm)), number(r.k), number(r.m), number(r.N),
        number(r.gamma), number(r.T), number(r.seed),
        m ? number(m->initial_soc) : "", m ? number(m->final_soc) : "",
        m ? number(m->suboptimality) : "", m ? number(m->auc) : "",
        m ? number(m->npo_total) : "", m ? number(m->dp) : "",
        m && m->exp ? number(*m->exp) : "", r.termination};
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + fields[i];
    out += '\n';
  }
  return out;
}

std::string format_json(std::span<const ResultRow> rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const ResultRow& r : rows) {
    nlohmann::json row{{"map", r.map}, {"scen", r.scen}, {"algorithm", to_string(r.algorithm)},
                       {"k", r.k}, {"m", r.m}, {"N", r.N}, {"gamma", r.gamma}, {"T", r.T},
                       {"seed", r.seed}, {"termination", r.termination}};
    for (const char* key : {"initial_soc", "final_soc", "suboptimality", "auc", "npo_total", "dp", "exp"})
      row[key] = nullptr;
    if (const auto& m = r.metrics) {
      row["initial_soc"] = m->initial_soc;
      row["final_soc"] = m->final_soc;
      row["suboptimality"] = m->suboptimality;
      row["auc"] = m->auc;
      row["npo_total"] = m->npo_total;
      row["dp"] = m->dp;
      if (m->exp) row["exp"] = *m->exp;
    }
    if (!r.detail.empty()) row["detail"] = r.detail;
    out.push_back(std::move(row));
  }
  return out.dump(2) + "\n";
}

void emit_results(std::span<const ResultRow> rows, ResultFormat format,
                  const std::filesystem::path& path) {
  write_file(path, format == ResultFormat::csv ? format_csv(rows) : format_json(rows));
}

std::string format_convergence(const RunEventLog& log) {
  std::string out = "time,soc,sum_of_delays\n";
  for (const ImprovementEvent& e : log.improvements)
    out += number(e.time) + "," + number(e.soc) + "," + number(e.sum_of_delays) + "\n";
  return out;
}

void emit_convergence(const RunEventLog& log, const std::filesystem::path& path) {
  write_file(path, format_convergence(log));
}

}  // namespace mapf
