#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "xroads/app/config.hpp"
#include "xroads/model.hpp"

namespace xroads::app {

struct SweepRow {
  std::vector<double> keys;
  Scenario scenario;
  LinkSpec link;
};

/// Sweep points in output order: grid combinations outermost, the axis
/// innermost. key_columns name the entries of SweepRow::keys.
struct SweepLayout {
  std::vector<std::string> key_columns;
  std::vector<SweepRow> rows;
};

SweepLayout expand_sweep(const Experiment& experiment);

struct OutputSeries {
  Output output = Output::Outage;
  std::vector<double> analytic;
  std::vector<double> mc;
  std::vector<double> mc_stderr;
};

struct SweepResult {
  std::string name;
  SweepLayout layout;
  bool has_analytic = false;
  bool has_mc = false;
  std::uint64_t mc_realizations = 0;
  std::vector<OutputSeries> series;
  /// Extra report lines, e.g. constrained throughput optima.
  std::vector<std::string> notes;
};

SweepResult run_sweep(const Experiment& experiment);

/// Writes <name>_<output>.csv plus one file per engine,
/// <name>_<output>_analytic.csv and <name>_<output>_montecarlo.csv. The
/// simulation file of a probability output also lists the realization count.
std::vector<std::filesystem::path> write_csvs(const SweepResult& result, const std::filesystem::path& out_dir);

/// One line per output with the largest analytic/simulation gap.
std::vector<std::string> summarize(const SweepResult& result);

/// Scientific notation with 17 significant digits.
std::string format_number(double v);

}  // namespace xroads::app
