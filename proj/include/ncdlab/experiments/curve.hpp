#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ncdlab/experiments/config.hpp"
#include "ncdlab/experiments/dataset.hpp"
#include "ncdlab/textops/frequency_table.hpp"

namespace ncdlab::exp {

struct CurveCombo {
  std::string backend;
  text::Selection selection;
  text::Substitution substitution;
  text::Shuffle shuffle;

  bool operator==(const CurveCombo&) const = default;
};

struct CurveRow {
  CurveCombo combo;
  text::Level level;
  std::vector<std::size_t> errors;  ///< one per run, in run order
  double mean = 0.0;
  double stddev = 0.0;  ///< sample standard deviation, 0 for a single run
};

struct SummaryRow {
  CurveCombo combo;
  double average_ce = 0.0;
  /// Against the same backend and selection with asterisks and no shuffle.
  std::optional<double> delta;
  std::optional<double> normalized;
};

struct CurveResult {
  std::vector<CurveRow> rows;
  std::vector<SummaryRow> summary;
  std::vector<CurveCombo> skipped;   ///< shuffles requested with random substitution
  std::vector<std::string> failures;  ///< one message per aborted combination
  std::vector<std::pair<std::string, std::string>> trees;  ///< (file name, Newick) of each first run
};

struct CurveOptions {
  std::function<void(const std::string&)> log;
};

/// Seed of run r of base seed s; runs enumerate seeds x repeats.
std::uint64_t run_seed(std::uint64_t base, std::size_t repeat);

/// The sweep: distort -> shuffle -> NCD matrix -> dendrogram -> clustering
/// error for every combination, level and run. Seeds never depend on the
/// selection method, so identical removal sets give identical rows.
CurveResult run_curve(const ExperimentConfig& config, const Dataset& dataset, const text::FrequencyTable& table,
                      const CurveOptions& options = {});

/// curve.csv, clustering_report.csv, summary.csv, trees/ and config.json.
void write_curve_outputs(const CurveResult& result, const ExperimentConfig& config,
                         const std::filesystem::path& dir);

}  // namespace ncdlab::exp
