#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "warmstart/elo.hpp"
#include "warmstart/match.hpp"
#include "warmstart/selfplay.hpp"

namespace warmstart {

/// Comma-separated, header row, LF line endings, no quoting: fields may not
/// contain commas or line breaks.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column position; throws CorruptFileError when absent.
  std::size_t column(const std::string& name) const;
};

std::string csv_line(const std::vector<std::string>& row);
std::string to_csv_text(const CsvTable& table);
CsvTable parse_csv_text(const std::string& text);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
/// Throws CorruptFileError when the file is missing or malformed.
CsvTable read_csv(const std::filesystem::path& path);

/// reports.csv: i, examples, mean_loss, arena_w, arena_d, arena_l, accepted, epoch_losses.
CsvTable reports_table(std::span<const IterationReport> reports);
std::vector<IterationReport> parse_reports(const CsvTable& table);
std::vector<std::string> report_row(const IterationReport& r);
const std::vector<std::string>& report_header();

/// records.csv: agentA, agentB, game_index, first_mover, result, moves, seed.
CsvTable records_table(std::span<const MatchRecord> records);
/// Games are regrouped into one MatchRecord per (agentA, agentB) pair in
/// order of first appearance.
std::vector<MatchRecord> parse_records(const CsvTable& table);

/// elo.csv: agent, rating, games.
CsvTable elo_table(const EloTable& elo);
EloTable parse_elo(const CsvTable& table);

/// Win rates in percent of the column agent against the row agent.
CsvTable orientation_csv(const OrientationTable& table);
OrientationTable parse_orientation(const CsvTable& table);

}  // namespace warmstart
