#pragma once

// Simulation oracle. Each realization draws the vehicles on both roads, applies
// the MAC (independent thinning for Aloha, Matern type II hard-core thinning
// for CSMA), draws fading from the scenario's true distributions and tests the
// SINR of every requested link.

#include <cstdint>
#include <span>
#include <vector>

#include "xroads/model.hpp"
#include "xroads/rng.hpp"

namespace xroads {

struct SimSettings {
  std::uint64_t realizations = 10000;
  double window_half_length = 20000.0;  ///< meters along each road
  std::uint64_t seed = 1;
  int workers = 1;
  /// Replace the interference from beyond the window by its mean.
  bool far_field_compensation = true;
};

struct OutageEstimate {
  double p_out = 0.0;
  double std_err = 0.0;
  std::uint64_t realizations_used = 0;
};

struct ThroughputEstimate {
  double throughput = 0.0;
  double std_err = 0.0;
  double p_access = 0.0;
  OutageEstimate outage;
};

/// Homogeneous Poisson points with intensity `lambda` on [-window, window]
/// along `road`, sorted by coordinate.
std::vector<Position> sample_road(Road road, double lambda, double window, SeededStream& rng);

/// Keeps each point independently with probability p.
std::vector<Position> thin_aloha(const std::vector<Position>& points, double p, SeededStream& rng);

struct RoadPoints {
  std::vector<Position> h;
  std::vector<Position> v;
};

/// Matern type II thinning with uniform marks: a point survives when its mark
/// is strictly the smallest among all points (both roads) within Euclidean
/// distance delta. The transmitter holds mark 0, so every point within delta
/// of it is removed.
RoadPoints thin_csma_matern2(const std::vector<Position>& points_h, const std::vector<Position>& points_v,
                             Position tx, double delta, SeededStream& rng);

/// Same rule on pre-marked points given by sorted road coordinates. Writes 1
/// into keep_* for survivors.
void matern2_mask(std::span<const double> z_h, std::span<const double> mark_h, std::span<const double> z_v,
                  std::span<const double> mark_v, Position tx, double delta, std::vector<char>& keep_h,
                  std::vector<char>& keep_v);

/// Mean interference at `rx` from interferers on `road` beyond |z| > window,
/// with active intensity `intensity`.
double far_field_interference(const Scenario& scenario, Road road, Position rx, double window,
                              double intensity);

/// Outage estimate for each link. All links see the same realizations.
std::vector<OutageEstimate> simulate_outage(const Scenario& scenario, std::span<const LinkSpec> links,
                                            const SimSettings& settings);

OutageEstimate simulate_outage(const Scenario& scenario, const LinkSpec& link, const SimSettings& settings);

/// p_A(tx) (1 - p_out) log2(1 + beta) with the simulated outage.
ThroughputEstimate simulate_throughput(const Scenario& scenario, const LinkSpec& link,
                                       const SimSettings& settings);

}  // namespace xroads
