#include "xroads/mac.hpp"

#include <cmath>

#include "xroads/errors.hpp"

namespace xroads {

namespace {

IntensityFn constant(Road road, double value) {
  IntensityFn f;
  f.road = road;
  f.fn = [value](double) { return value; };
  f.zero = value == 0.0;
  return f;
}

}  // namespace

IntensityFn aloha_intensity(Road road, const Scenario& scenario, Position) {
  const auto* aloha = std::get_if<Aloha>(&scenario.mac);
  if (aloha == nullptr) {
    throw WrongMac("aloha_intensity requires an Aloha scenario");
  }
  return constant(road, aloha->p * scenario.roads.intensity(road));
}

double contention_mass(Position z, double delta, const RoadConfig& roads) {
  Road road;
  if (on_road(z, Road::H)) {
    road = Road::H;
  } else if (on_road(z, Road::V)) {
    road = Road::V;
  } else {
    throw OffRoadPosition("contention_mass: position lies on neither road");
  }
  const Road other = road == Road::H ? Road::V : Road::H;
  double mass = 2.0 * delta * roads.intensity(road);
  const double r = norm2(z);
  if (r <= delta) {
    mass += 2.0 * std::sqrt(delta * delta - r * r) * roads.intensity(other);
  }
  return mass;
}

double access_probability_from_mass(double mass) {
  if (mass < 1e-8) {
    return 1.0 - mass / 2.0 + mass * mass / 6.0;
  }
  return -std::expm1(-mass) / mass;
}

double access_probability(Position z, double delta, const RoadConfig& roads) {
  return access_probability_from_mass(contention_mass(z, delta, roads));
}

IntensityFn csma_intensity(Road road, const Scenario& scenario, Position tx) {
  const auto* csma = std::get_if<Csma>(&scenario.mac);
  if (csma == nullptr) {
    throw WrongMac("csma_intensity requires a CSMA scenario");
  }
  const double delta = csma->delta;
  const RoadConfig roads = scenario.roads;
  const double lambda = roads.intensity(road);
  if (lambda == 0.0) {
    return constant(road, 0.0);
  }
  IntensityFn f;
  f.road = road;
  f.fn = [=](double z) {
    const Position x = point_on(road, z);
    if (distance(x, tx, Norm::Euclidean) <= delta) {
      return 0.0;
    }
    return access_probability(x, delta, roads) * lambda;
  };
  f.breakpoints = {-delta, delta};
  // Where the road crosses the contention disc of tx.
  const double along = road == Road::H ? tx.x : tx.y;
  const double across = road == Road::H ? tx.y : tx.x;
  if (std::abs(across) < delta) {
    const double half = std::sqrt(delta * delta - across * across);
    f.breakpoints.push_back(along - half);
    f.breakpoints.push_back(along + half);
  }
  return f;
}

IntensityFn mac_intensity(Road road, const Scenario& scenario, Position tx) {
  if (std::holds_alternative<Aloha>(scenario.mac)) {
    return aloha_intensity(road, scenario, tx);
  }
  if (std::holds_alternative<Csma>(scenario.mac)) {
    return csma_intensity(road, scenario, tx);
  }
  return constant(road, 0.0);
}

double csma_delta_for_access(double p_access, Position tx, const RoadConfig& roads) {
  if (!(p_access > 0.0 && p_access < 1.0)) {
    throw InvalidArgument("access probability must lie in (0, 1)");
  }
  if (roads.lambda_h == 0.0 && roads.lambda_v == 0.0) {
    throw InvalidArgument("access probability is 1 on empty roads");
  }
  double lo = 1e-9;
  double hi = 1.0;
  while (access_probability(tx, hi, roads) > p_access) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e15) {
      throw NonConvergence("could not bracket the contention radius");
    }
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (access_probability(tx, mid, roads) > p_access) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double transmit_probability(const Scenario& scenario, Position tx) {
  if (const auto* aloha = std::get_if<Aloha>(&scenario.mac)) {
    return aloha->p;
  }
  if (const auto* csma = std::get_if<Csma>(&scenario.mac)) {
    return access_probability(tx, csma->delta, scenario.roads);
  }
  return 1.0;
}

Scenario with_access_probability(const Scenario& scenario, Position tx, double p_access) {
  Scenario s = scenario;
  if (std::holds_alternative<Aloha>(scenario.mac)) {
    s.mac = Aloha{p_access};
  } else if (std::holds_alternative<Csma>(scenario.mac)) {
    s.mac = Csma{csma_delta_for_access(p_access, tx, scenario.roads)};
  } else {
    throw WrongMac("access probability is fixed to 1 without a MAC protocol");
  }
  return s;
}

}  // namespace xroads
