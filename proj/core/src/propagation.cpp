#include "xroads/propagation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "xroads/errors.hpp"

namespace xroads {

double path_loss_at(const PathLossSpec& spec, double dist) {
  if (spec.alpha == 2.0) {
    return spec.amplitude / (dist * dist);
  }
  return spec.amplitude * std::pow(dist, -spec.alpha);
}

double path_loss(const PathLossSpec& spec, Position tx, Position rx) {
  if (tx == rx) {
    throw DegenerateGeometry("path loss diverges: transmitter and receiver coincide");
  }
  return path_loss_at(spec, distance(tx, rx, spec.norm));
}

double FadingLT::operator()(double s) const {
  if (std::isinf(s)) {
    return 0.0;
  }
  const double base = 1.0 + s * theta;
  if (k == 1) {
    return 1.0 / base;
  }
  return std::pow(base, -k);
}

double FadingLT::one_minus(double s) const {
  if (std::isinf(s)) {
    return 1.0;
  }
  return -std::expm1(-k * std::log1p(s * theta));
}

FadingLT fading_lt(const FadingSpec& f) {
  if (!f.is_erlang()) {
    throw UnsupportedDistribution("log-normal fading has no closed-form Laplace transform; fit an Erlang first");
  }
  return {f.shape(), f.scale()};
}

double fading_ccdf(const FadingSpec& f, double s) {
  if (!f.is_erlang()) {
    throw UnsupportedDistribution("log-normal fading CCDF is not supported");
  }
  if (s <= 0.0) {
    return 1.0;
  }
  const double u = s / f.scale();
  double term = 1.0;
  double sum = 1.0;
  for (int i = 1; i < f.shape(); ++i) {
    term *= u / i;
    sum += term;
  }
  return std::exp(-u) * sum;
}

double fading_sample(const FadingSpec& f, SeededStream& rng) {
  if (f.is_lognormal()) {
    const double sigma_ln = f.sigma_db() * std::log(10.0) / 10.0;
    return std::exp(sigma_ln * rng.normal());
  }
  double s = 0.0;
  for (int i = 0; i < f.shape(); ++i) {
    s += rng.exponential(f.scale());
  }
  return s;
}

FadingSpec erlang_fit(double sigma_db, std::size_t sample_count, SeededStream& rng) {
  if (!(sigma_db > 0.0) || !std::isfinite(sigma_db)) {
    throw InvalidArgument("erlang_fit: sigma_db must be > 0");
  }
  if (sample_count < 100000) {
    throw InvalidArgument("erlang_fit: at least 1e5 samples required");
  }
  const FadingSpec source = FadingSpec::lognormal(sigma_db);
  double sum = 0.0;
  double sum_log = 0.0;
  for (std::size_t i = 0; i < sample_count; ++i) {
    const double x = fading_sample(source, rng);
    sum += x;
    sum_log += std::log(x);
  }
  const double n = static_cast<double>(sample_count);
  const double mean = sum / n;

  int best_k = 1;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= kErlangFitMaxShape; ++k) {
    const double theta = mean / k;
    const double ll = (k - 1) * sum_log - n * k - n * std::lgamma(k) - n * k * std::log(theta);
    if (ll > best_ll) {
      best_ll = ll;
      best_k = k;
    }
  }
  if (best_k == kErlangFitMaxShape) {
    throw FitDegenerate("Erlang fit reached the shape bound k = " + std::to_string(kErlangFitMaxShape));
  }
  return FadingSpec::erlang(best_k, mean / best_k);
}

}  // namespace xroads
