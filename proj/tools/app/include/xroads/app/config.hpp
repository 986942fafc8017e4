#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "xroads/model.hpp"
#include "xroads/montecarlo.hpp"

namespace xroads::app {

enum class Output { Outage, Reception, Throughput };
enum class Engines { Analytic, MonteCarlo, Both };
enum class Axis { TxRxDistance, RxToIntersectionD, AccessProbability, AlohaP, CsmaDelta };

const char* to_string(Output o);
const char* to_string(Engines e);
const char* to_string(Axis a);

/// The swept axis plus optional grid dimensions; every combination of grid
/// values is crossed with the axis values.
struct SweepSpec {
  Axis axis = Axis::TxRxDistance;
  std::vector<double> values;
  std::vector<double> d_m;
  std::vector<double> aloha_p;
  std::vector<double> csma_delta_m;
  std::vector<Position> tx_positions_m;
  std::vector<double> r_comm_m;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct AnalyticSettings {
  std::uint64_t lognormal_fit_samples = 1000000;
  std::uint64_t lognormal_fit_seed = 1;
  double max_outage = 0.1;

  friend bool operator==(const AnalyticSettings&, const AnalyticSettings&) = default;
};

struct Experiment {
  std::string name = "experiment";
  std::vector<Output> outputs{Output::Outage};
  Engines engines = Engines::Both;
  Scenario scenario;
  LinkSpec link;
  SweepSpec sweep;
  SimSettings montecarlo;
  AnalyticSettings analytic;
};

/// Parses an INI-style document:
///
///   [section]
///   key = value   # comment
///
/// Throws ConfigParseError for syntax errors and SchemaError for unknown or
/// missing keys and invalid values.
Experiment parse_config(std::string_view text, std::string_view source = "<config>");

Experiment load_config(const std::filesystem::path& path);

/// Serializes with linear units and 17 significant digits, so that
/// parse_config(to_config(e)) reproduces e exactly.
std::string to_config(const Experiment& experiment);

/// Edit distance, used to suggest the nearest valid key.
std::size_t levenshtein(std::string_view a, std::string_view b);

}  // namespace xroads::app
