#pragma once

#include <functional>
#include <vector>

#include "xroads/model.hpp"

namespace xroads {

/// Intensity of active interferers along one road, z -> vehicles per meter at
/// point_on(road, z). `breakpoints` lists the coordinates where the function
/// jumps, for the benefit of quadrature.
struct IntensityFn {
  Road road = Road::H;
  std::function<double(double)> fn;
  std::vector<double> breakpoints;
  /// True when the function is identically zero.
  bool zero = false;

  double operator()(double z) const { return fn(z); }
};

/// Constant p * lambda_R. Throws WrongMac unless the scenario uses Aloha.
IntensityFn aloha_intensity(Road road, const Scenario& scenario, Position tx);

/// Mean number of vehicles inside the contention disc of radius `delta`
/// around a point on either road. The intersection counts as road H.
/// Throws OffRoadPosition for points on neither road.
double contention_mass(Position z, double delta, const RoadConfig& roads);

/// (1 - exp(-Lambda)) / Lambda for the contention mass at `z`.
double access_probability(Position z, double delta, const RoadConfig& roads);

/// Same map applied to a known contention mass.
double access_probability_from_mass(double mass);

/// p_A(z) * lambda_R outside the contention disc of `tx`, zero inside it
/// (the boundary included). Throws WrongMac unless the scenario uses CSMA.
IntensityFn csma_intensity(Road road, const Scenario& scenario, Position tx);

/// Dispatches on the scenario's MAC; NoMac yields the zero function.
IntensityFn mac_intensity(Road road, const Scenario& scenario, Position tx);

/// Contention radius for which the access probability at `tx` equals
/// `p_access` (in (0, 1)). Found by bisection; p_A is decreasing in delta.
double csma_delta_for_access(double p_access, Position tx, const RoadConfig& roads);

/// Access probability of a transmitter at `tx`: p for Aloha, p_A(tx) for
/// CSMA and 1 without MAC.
double transmit_probability(const Scenario& scenario, Position tx);

/// Copy of the scenario with the MAC parameter chosen so that a transmitter
/// at `tx` accesses the channel with probability `p_access`.
Scenario with_access_probability(const Scenario& scenario, Position tx, double p_access);

}  // namespace xroads
