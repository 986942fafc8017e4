#pragma once

// Reception probability and throughput from Laplace transforms of the
// per-road interference. Every closed form has a quadrature counterpart
// (lt_interference_generic) that serves as its reference.

#include <cstdint>
#include <functional>
#include <vector>

#include "xroads/model.hpp"
#include "xroads/numerics.hpp"

namespace xroads {

/// Link-level constants shared by the reception formulas.
struct EvalContext {
  double tilde_beta = 0.0;  ///< beta / l(tx, rx) under the useful-link loss
  double tilde_n = 0.0;     ///< N / P
  double zeta = 0.0;        ///< tilde_beta / theta_0
  double kappa = 0.0;       ///< H-road exponent: L_H(s) = exp(-kappa s^(1/alpha)); Aloha only, else 0

  /// Throws DegenerateGeometry when tx == rx and UnsupportedDistribution for
  /// log-normal useful-link fading.
  static EvalContext make(const Scenario& scenario, const LinkSpec& link);
};

enum class LtMethod { ClosedForm, Quadrature };

struct InterferenceLT {
  Road road = Road::H;
  LtMethod method = LtMethod::Quadrature;
  std::function<double(double)> fn;

  double operator()(double s) const { return fn(s); }
};

/// Quadrature evaluation of exp(-int lambda_MAC(z) (1 - L_S(s l(z))) dz).
double lt_interference_generic(Road road, const Scenario& scenario, const LinkSpec& link, double s,
                               const numerics::QuadratureSettings& settings = {});

/// Aloha, exponential fading and Euclidean loss on road H; any alpha > 1.
double lt_rural_h(const Scenario& scenario, const LinkSpec& link, double s);

/// Aloha, exponential fading and Euclidean loss with alpha = 2 on road V.
double lt_rural_v(const Scenario& scenario, const LinkSpec& link, double s);

/// Aloha, Erlang fading and Manhattan loss on road V.
double lt_urban_v(const Scenario& scenario, const LinkSpec& link, double s);

/// s^m d^m/ds^m lt_urban_v for m = 0..n, from the closed form.
std::vector<double> lt_urban_v_scaled_derivatives(const Scenario& scenario, const LinkSpec& link, double s,
                                                  int n);

/// s^m d^m/ds^m exp(-kappa sqrt(s)) for m = 0..n: finite double sum of
/// Pochhammer terms, exact for the alpha = 2 H-road transform.
std::vector<double> sqrt_exp_scaled_derivatives(double kappa, double s, int n);

/// s^m d^m/ds^m exp(-kappa s^(1/alpha)) for m = 0..n, any alpha.
std::vector<double> root_exp_scaled_derivatives(double kappa, double alpha, double s, int n);

/// The closed form for a road when one applies, quadrature otherwise.
InterferenceLT interference_lt(Road road, const Scenario& scenario, const LinkSpec& link);

bool is_rural(const Scenario& scenario);
bool is_urban(const Scenario& scenario);
bool is_csma_exponential(const Scenario& scenario);

/// Aloha with exponential fading everywhere and Euclidean loss, alpha = 2 on
/// road V. Throws WrongScenario otherwise.
double reception_rural(const Scenario& scenario, const LinkSpec& link);

/// Aloha; Erlang useful link; exponential Euclidean H interferers; Erlang
/// Manhattan V interferers. Throws WrongScenario otherwise.
double reception_urban(const Scenario& scenario, const LinkSpec& link);

/// CSMA with exponential fading everywhere and Euclidean loss.
double reception_csma(const Scenario& scenario, const LinkSpec& link);

/// Erlang-kernel route with quadrature transforms and finite-difference
/// derivatives. Throws OrderTooHigh when the useful-link shape exceeds 5.
double reception_generic(const Scenario& scenario, const LinkSpec& link);

/// Picks the most specific of the above.
double reception(const Scenario& scenario, const LinkSpec& link);

/// Spectral efficiency log2(1 + beta).
double spectral_efficiency(double beta);

/// p_A(tx) * P(reception) * log2(1 + beta).
double throughput(const Scenario& scenario, const LinkSpec& link);

struct AccessOptimum {
  double p_access = 0.0;
  Scenario scenario;  ///< scenario with the MAC parameter at the optimum
  double outage = 0.0;
  double throughput = 0.0;
};

/// Maximizes throughput over the access probability of the transmitter
/// subject to outage <= max_outage. Aloha varies p; CSMA varies delta.
/// When even a vanishing access probability violates the constraint, returns
/// p_access = 0 and zero throughput.
AccessOptimum optimize_access(const Scenario& scenario, const LinkSpec& link, double max_outage);

/// Replaces every log-normal fading spec by its maximum-likelihood Erlang fit.
Scenario with_erlang_approximation(const Scenario& scenario, std::size_t sample_count, std::uint64_t seed);

}  // namespace xroads
