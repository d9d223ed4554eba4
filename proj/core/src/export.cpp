#include "warmstart/export.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "warmstart/config.hpp"
#include "warmstart/csv.hpp"

namespace warmstart {
namespace fs = std::filesystem;

namespace {

constexpr const char* kPlotScript = R"(#!/usr/bin/env python3
import csv
import sys
from collections import defaultdict

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "summary.csv"
metric = sys.argv[2] if len(sys.argv) > 2 else "mean_loss"
series = defaultdict(list)
with open(path) as f:
    for row in csv.DictReader(f):
        if row["metric"] == metric:
            series["x"].append(int(row["iteration"]))
            series["mean"].append(float(row["mean"]))
            series["err"].append(float(row["stderr"]))
plt.errorbar(series["x"], series["mean"], yerr=series["err"], capsize=3)
plt.xlabel("iteration")
plt.ylabel(metric)
plt.savefig(metric + ".png", dpi=150)
)";

CsvTable with_run_column(const CsvTable& in, const std::string& run) {
  CsvTable out;
  out.header.push_back("run");
  out.header.insert(out.header.end(), in.header.begin(), in.header.end());
  for (const auto& row : in.rows) {
    std::vector<std::string> r{run};
    r.insert(r.end(), row.begin(), row.end());
    out.rows.push_back(std::move(r));
  }
  return out;
}

void append_rows(CsvTable& into, const CsvTable& from) {
  if (into.header.empty()) into.header = from.header;
  into.rows.insert(into.rows.end(), from.rows.begin(), from.rows.end());
}

}  // namespace

ExportSummary export_results(const std::vector<fs::path>& run_dirs, const fs::path& out_dir) {
  if (run_dirs.empty()) throw std::runtime_error("export needs at least one run directory");
  CsvTable reports, records, elo;
  CsvTable aggregate{{"run", "iteration", "metric", "value"}, {}};
  // (iteration, metric) -> values across runs
  std::map<std::pair<int, std::string>, std::vector<double>> samples;
  std::set<std::string> labels;

  for (const auto& dir : run_dirs) {
    if (!fs::is_directory(dir)) throw std::runtime_error("run directory " + dir.string() + " does not exist");
    std::string label = dir.filename().string();
    if (label.empty()) label = dir.parent_path().filename().string();
    if (!labels.insert(label).second) throw std::runtime_error("two run directories are named '" + label + "'");
    bool found = false;
    if (fs::exists(dir / "reports.csv")) {
      found = true;
      const CsvTable table = read_csv(dir / "reports.csv");
      for (const auto& r : parse_reports(table)) {
        const std::pair<const char*, double> metrics[] = {
            {"examples", static_cast<double>(r.examples)},
            {"mean_loss", r.mean_loss},
            {"arena_w", static_cast<double>(r.arena_wins)},
            {"arena_d", static_cast<double>(r.arena_draws)},
            {"arena_l", static_cast<double>(r.arena_losses)},
            {"accepted", r.accepted ? 1.0 : 0.0},
        };
        for (const auto& [name, value] : metrics) {
          aggregate.rows.push_back({label, std::to_string(r.iteration), name, format_double(value)});
          samples[{r.iteration, name}].push_back(value);
        }
      }
      append_rows(reports, with_run_column(table, label));
    }
    if (fs::exists(dir / "records.csv")) {
      found = true;
      append_rows(records, with_run_column(read_csv(dir / "records.csv"), label));
    }
    if (fs::exists(dir / "elo.csv")) {
      found = true;
      append_rows(elo, with_run_column(read_csv(dir / "elo.csv"), label));
    }
    if (!found)
      throw std::runtime_error(dir.string() + " has none of reports.csv, records.csv or elo.csv");
  }

  ExportSummary summary;
  summary.runs = static_cast<int>(run_dirs.size());
  fs::create_directories(out_dir);
  auto emit = [&](const char* name, const CsvTable& table) {
    if (table.header.empty()) return;
    write_csv(out_dir / name, table);
    summary.written.push_back(out_dir / name);
  };
  emit("reports.csv", reports);
  emit("records.csv", records);
  emit("elo.csv", elo);
  if (!reports.header.empty()) {
    CsvTable stats{{"iteration", "metric", "runs", "mean", "stderr"}, {}};
    for (const auto& [key, values] : samples) {
      const double n = static_cast<double>(values.size());
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= n;
      double var = 0.0;
      for (double v : values) var += (v - mean) * (v - mean);
      const double se = values.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
      stats.rows.push_back({std::to_string(key.first), key.second, std::to_string(values.size()),
                            format_double(mean), format_double(se)});
    }
    emit("aggregate.csv", aggregate);
    emit("summary.csv", stats);
    std::ofstream script(out_dir / "plot_results.py", std::ios::binary | std::ios::trunc);
    script << kPlotScript;
    summary.written.push_back(out_dir / "plot_results.py");
  }
  return summary;
}

}  // namespace warmstart
