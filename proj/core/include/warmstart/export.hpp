#pragma once

#include <filesystem>
#include <vector>

namespace warmstart {

struct ExportSummary {
  std::vector<std::filesystem::path> written;
  int runs = 0;
};

/// Collects reports.csv, records.csv and elo.csv from each run directory
/// into `out_dir` (each row prefixed with the run's directory name), plus
/// aggregate.csv (one row per run, iteration and metric), summary.csv (mean
/// and standard error across runs) and a plotting script stub. Throws
/// std::runtime_error naming any missing run directory or a directory with
/// none of the inputs. Re-exporting the same inputs produces identical bytes.
ExportSummary export_results(const std::vector<std::filesystem::path>& run_dirs,
                             const std::filesystem::path& out_dir);

}  // namespace warmstart
