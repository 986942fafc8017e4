#pragma once

#include <cstddef>

#include "xroads/model.hpp"
#include "xroads/rng.hpp"

namespace xroads {

/// A * dist^-alpha for a distance already computed under the spec's norm.
double path_loss_at(const PathLossSpec& spec, double dist);

/// Gain between two points. Throws DegenerateGeometry when tx == rx.
double path_loss(const PathLossSpec& spec, Position tx, Position rx);

/// Laplace transform of Erlang(k, theta) fading: s -> (1 + s theta)^-k.
struct FadingLT {
  int k = 1;
  double theta = 1.0;

  double operator()(double s) const;
  /// 1 - L(s), computed without cancellation for small s theta.
  double one_minus(double s) const;
};

/// Throws UnsupportedDistribution for log-normal fading.
FadingLT fading_lt(const FadingSpec& f);

/// P(S > s). Throws UnsupportedDistribution for log-normal fading.
double fading_ccdf(const FadingSpec& f, double s);

double fading_sample(const FadingSpec& f, SeededStream& rng);

/// Maximum-likelihood Erlang fit to `sample_count` draws of the unit-median
/// log-normal with dB spread `sigma_db`. Searches k in [1, 50] with
/// theta = mean / k; throws FitDegenerate if the best k is the bound.
FadingSpec erlang_fit(double sigma_db, std::size_t sample_count, SeededStream& rng);

inline constexpr int kErlangFitMaxShape = 50;

}  // namespace xroads
