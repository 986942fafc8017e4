#pragma once

// Parameter sets shared by the tests: lambda = 0.01 on both roads,
// N = -99 dBm, beta = 8 dB, A = 3e-5, P = 100 mW, alpha = 2.

#include <algorithm>
#include <cmath>

#include "xroads/model.hpp"

namespace xroads::testing {

inline constexpr double kLambda = 0.01;
inline constexpr double kAmplitude = 3e-5;
inline constexpr double kPower = 0.1;

inline double noise_watts() { return dbm_to_watts(-99.0); }
inline double beta_linear() { return db_to_linear(8.0); }

inline PathLossSpec euclid(double alpha = 2.0) { return {Norm::Euclidean, kAmplitude, alpha}; }
inline PathLossSpec manhattan(double alpha = 2.0) { return {Norm::Manhattan, kAmplitude, alpha}; }

/// Aloha, exponential fading, Euclidean loss on every link.
inline Scenario rural(double p) {
  Scenario s;
  s.roads = {kLambda, kLambda};
  s.mac = Aloha{p};
  s.loss_useful = s.loss_h = s.loss_v = euclid();
  return s;
}

/// Aloha; Erlang useful and V links under Manhattan loss, exponential
/// Euclidean H links.
inline Scenario urban(double p, int k, double theta) {
  Scenario s = rural(p);
  s.loss_useful = s.loss_v = manhattan();
  s.fading_useful = s.fading_v = FadingSpec::erlang(k, theta);
  return s;
}

inline Scenario csma(double delta) {
  Scenario s = rural(0.0);
  s.mac = Csma{delta};
  return s;
}

inline LinkSpec link(Position tx, Position rx) { return {tx, rx, kPower, noise_watts(), beta_linear()}; }

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace xroads::testing
