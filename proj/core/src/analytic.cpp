#include "xroads/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "xroads/errors.hpp"
#include "xroads/mac.hpp"
#include "xroads/propagation.hpp"
#include "xroads/rng.hpp"

namespace xroads {

using numerics::binomial;
using numerics::pochhammer;

namespace {

double aloha_p(const Scenario& scenario, const char* who) {
  const auto* aloha = std::get_if<Aloha>(&scenario.mac);
  if (aloha == nullptr) {
    throw WrongScenario(std::string(who) + " requires Aloha");
  }
  return aloha->p;
}

bool exponential_euclidean(const Scenario& s, Road road) {
  return s.fading(road).is_exponential() && s.loss(road).norm == Norm::Euclidean;
}

// 2 (pi / alpha) csc(pi / alpha) = int_R 1 / (1 + |u|^alpha) du
double line_constant(double alpha) {
  if (alpha == 2.0) {
    return std::numbers::pi;
  }
  const double a = std::numbers::pi / alpha;
  return 2.0 * a / std::sin(a);
}

// L_H(s) = exp(-kappa s^(1/alpha)) for Aloha with exponential Euclidean links.
double kappa_h(const Scenario& s) {
  const double p = aloha_p(s, "rural H-road transform");
  const auto& loss = s.loss_h;
  const double scale = loss.amplitude * s.fading_h.scale();
  const double root = loss.alpha == 2.0 ? std::sqrt(scale) : std::pow(scale, 1.0 / loss.alpha);
  return p * s.roads.lambda_h * root * line_constant(loss.alpha);
}

double root(double s, double alpha) { return alpha == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / alpha); }

}  // namespace

EvalContext EvalContext::make(const Scenario& scenario, const LinkSpec& link) {
  if (!scenario.fading_useful.is_erlang()) {
    throw UnsupportedDistribution("useful-link fading must be Erlang for the analytic engine");
  }
  EvalContext ctx;
  ctx.tilde_beta = link.beta / path_loss(scenario.loss_useful, link.tx, link.rx);
  ctx.tilde_n = link.noise_over_power();
  ctx.zeta = ctx.tilde_beta / scenario.fading_useful.scale();
  if (std::holds_alternative<Aloha>(scenario.mac) && exponential_euclidean(scenario, Road::H)) {
    ctx.kappa = kappa_h(scenario);
  }
  return ctx;
}

double lt_interference_generic(Road road, const Scenario& scenario, const LinkSpec& link, double s,
                               const numerics::QuadratureSettings& settings) {
  if (!(s >= 0.0)) {
    throw InvalidArgument("Laplace variable must be >= 0");
  }
  if (s == 0.0) {
    return 1.0;
  }
  const FadingLT lt = fading_lt(scenario.fading(road));
  const IntensityFn lambda = mac_intensity(road, scenario, link.tx);
  if (lambda.zero) {
    return 1.0;
  }
  const PathLossSpec& loss = scenario.loss(road);
  const Position rx = link.rx;
  const auto integrand = [&](double z) {
    const double w = lambda(z);
    if (w == 0.0) {
      return 0.0;
    }
    const double dist = distance(point_on(road, z), rx, loss.norm);
    if (dist == 0.0) {
      return w;
    }
    return w * lt.one_minus(s * path_loss_at(loss, dist));
  };

  // Jumps of the intensity, the receiver's projection, and the length scale
  // over which 1 - L_S falls off.
  std::vector<double> breaks = lambda.breakpoints;
  const double center = road == Road::H ? rx.x : 0.0;
  const double reach = root(loss.amplitude * scenario.fading(road).mean() * s, loss.alpha);
  breaks.insert(breaks.end(), {center, center - reach, center + reach});
  const auto result = numerics::integrate_line(integrand, numerics::LineDomain::full(), breaks, settings);
  return std::exp(-result.value);
}

double lt_rural_h(const Scenario& scenario, const LinkSpec&, double s) {
  if (!exponential_euclidean(scenario, Road::H)) {
    throw WrongScenario("lt_rural_h requires exponential fading and Euclidean loss on road H");
  }
  return std::exp(-kappa_h(scenario) * root(s, scenario.loss_h.alpha));
}

double lt_rural_v(const Scenario& scenario, const LinkSpec& link, double s) {
  const double p = aloha_p(scenario, "lt_rural_v");
  if (!exponential_euclidean(scenario, Road::V) || scenario.loss_v.alpha != 2.0) {
    throw WrongScenario("lt_rural_v requires exponential fading and Euclidean loss with alpha = 2 on road V");
  }
  const double d = std::abs(link.rx.x);
  const double b = scenario.loss_v.amplitude * scenario.fading_v.scale() * s;
  return std::exp(-p * scenario.roads.lambda_v * std::numbers::pi * b / std::sqrt(b + d * d));
}

namespace {

// int_{t0}^inf t^(alpha q) (1 + t^alpha)^-K dt, requires K - q - 1/alpha > 0.
double urban_j(int K, int q, double t0, double alpha) {
  const double a = 1.0 / alpha;
  if (t0 == 0.0) {
    return a * std::tgamma(q + a) * std::tgamma(K - q - a) / std::tgamma(K);
  }
  const double u = std::pow(t0, alpha);
  if (u <= 2.0) {
    const double head = std::pow(t0, alpha * q + 1.0) * numerics::hyp2f1_regularized(K, q + a, 1.0 + q + a, -u);
    return a * std::tgamma(q + a) * (std::tgamma(K - q - a) / std::tgamma(K) - head);
  }
  // Expand (1 + t^alpha)^-K in powers of t^-alpha.
  double coef = 1.0;
  double power = std::pow(t0, alpha * (q - K) + 1.0);
  double sum = 0.0;
  for (int n = 0; n < 5000; ++n) {
    const double term = coef * power / (alpha * (K + n - q) - 1.0);
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) {
      return sum;
    }
    coef *= -(K + n) / (n + 1.0);
    power /= u;
  }
  throw NonConvergence("urban V-road tail series did not converge");
}

struct UrbanV {
  double p;
  double lambda;
  int k;
  double b_root;  // (s theta A)^(1/alpha)
  double t0;
  double alpha;
};

UrbanV urban_v_params(const Scenario& scenario, const LinkSpec& link, double s) {
  const double p = aloha_p(scenario, "lt_urban_v");
  const auto& fading = scenario.fading_v;
  const auto& loss = scenario.loss_v;
  if (!fading.is_erlang() || loss.norm != Norm::Manhattan) {
    throw WrongScenario("lt_urban_v requires Erlang fading and Manhattan loss on road V");
  }
  const double b_root = root(s * fading.scale() * loss.amplitude, loss.alpha);
  return {p, scenario.roads.lambda_v, fading.shape(), b_root, std::abs(link.rx.x) / b_root, loss.alpha};
}

}  // namespace

double lt_urban_v(const Scenario& scenario, const LinkSpec& link, double s) {
  if (s == 0.0) {
    aloha_p(scenario, "lt_urban_v");
    return 1.0;
  }
  const UrbanV v = urban_v_params(scenario, link, s);
  if (v.p == 0.0 || v.lambda == 0.0) {
    return 1.0;
  }
  double sum = 0.0;
  for (int q = 0; q < v.k; ++q) {
    sum += binomial(v.k, q) * urban_j(v.k, q, v.t0, v.alpha);
  }
  return std::exp(-2.0 * v.p * v.lambda * v.b_root * sum);
}

std::vector<double> lt_urban_v_scaled_derivatives(const Scenario& scenario, const LinkSpec& link, double s,
                                                  int n) {
  std::vector<double> out(n + 1, 0.0);
  out[0] = lt_urban_v(scenario, link, s);
  if (s == 0.0 || n == 0) {
    return out;
  }
  const UrbanV v = urban_v_params(scenario, link, s);
  if (v.p == 0.0 || v.lambda == 0.0) {
    return out;
  }
  // s^m g^(m) for g = log L_V.
  std::vector<double> g(n);
  const double scale = 2.0 * v.p * v.lambda * v.b_root;
  for (int m = 1; m <= n; ++m) {
    const double sign = m % 2 == 0 ? 1.0 : -1.0;
    g[m - 1] = sign * scale * pochhammer(v.k, m) * urban_j(v.k + m, v.k, v.t0, v.alpha);
  }
  return numerics::exp_chain_derivatives(out[0], g);
}

std::vector<double> sqrt_exp_scaled_derivatives(double kappa, double s, int n) {
  const double y = kappa * std::sqrt(s);
  const double e = std::exp(-y);
  std::vector<double> out(n + 1, 0.0);
  for (int m = 0; m <= n; ++m) {
    double sum = 0.0;
    double neg_y_pow = 1.0;
    for (int l = 0; l <= m; ++l) {
      double inner = 0.0;
      for (int j = 0; j <= l; ++j) {
        const double sign = j % 2 == 0 ? 1.0 : -1.0;
        inner += sign * pochhammer((2.0 - j + l - 2.0 * m) / 2.0, m) /
                 (std::tgamma(j + 1.0) * std::tgamma(l - j + 1.0));
      }
      sum += neg_y_pow * inner;
      neg_y_pow *= -y;
    }
    out[m] = e * sum;
  }
  return out;
}

std::vector<double> root_exp_scaled_derivatives(double kappa, double alpha, double s, int n) {
  const double y = kappa * root(s, alpha);
  std::vector<double> g(n);
  double falling = 1.0;
  for (int m = 1; m <= n; ++m) {
    falling *= 1.0 / alpha - (m - 1);
    g[m - 1] = -y * falling;
  }
  return numerics::exp_chain_derivatives(std::exp(-y), g);
}

InterferenceLT interference_lt(Road road, const Scenario& scenario, const LinkSpec& link) {
  InterferenceLT lt;
  lt.road = road;
  const bool aloha = std::holds_alternative<Aloha>(scenario.mac);
  if (aloha && road == Road::H && exponential_euclidean(scenario, Road::H)) {
    lt.method = LtMethod::ClosedForm;
    lt.fn = [scenario, link](double s) { return lt_rural_h(scenario, link, s); };
  } else if (aloha && road == Road::V && exponential_euclidean(scenario, Road::V) &&
             scenario.loss_v.alpha == 2.0) {
    lt.method = LtMethod::ClosedForm;
    lt.fn = [scenario, link](double s) { return lt_rural_v(scenario, link, s); };
  } else if (aloha && road == Road::V && scenario.fading_v.is_erlang() &&
             scenario.loss_v.norm == Norm::Manhattan) {
    lt.method = LtMethod::ClosedForm;
    lt.fn = [scenario, link](double s) { return lt_urban_v(scenario, link, s); };
  } else {
    lt.method = LtMethod::Quadrature;
    lt.fn = [road, scenario, link](double s) { return lt_interference_generic(road, scenario, link, s); };
  }
  return lt;
}

bool is_rural(const Scenario& s) {
  return std::holds_alternative<Aloha>(s.mac) && s.fading_useful.is_exponential() &&
         exponential_euclidean(s, Road::H) && exponential_euclidean(s, Road::V) && s.loss_v.alpha == 2.0;
}

bool is_urban(const Scenario& s) {
  return std::holds_alternative<Aloha>(s.mac) && s.fading_useful.is_erlang() &&
         exponential_euclidean(s, Road::H) && s.fading_v.is_erlang() && s.loss_v.norm == Norm::Manhattan;
}

bool is_csma_exponential(const Scenario& s) {
  return std::holds_alternative<Csma>(s.mac) && s.fading_useful.is_exponential() &&
         exponential_euclidean(s, Road::H) && exponential_euclidean(s, Road::V);
}

namespace {

EvalContext checked_context(const Scenario& scenario, const LinkSpec& link) {
  const EvalContext ctx = EvalContext::make(scenario, link);
  require_valid(scenario, link);
  return ctx;
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

// E[CCDF_Erlang(zeta theta_0 (N~ + I))] from scaled derivatives
// dh[n] = zeta^n L_H^(n)(zeta) and dv[n] = zeta^n L_V^(n)(zeta).
double erlang_kernel(int k0, const EvalContext& ctx, const std::vector<double>& dh,
                     const std::vector<double>& dv) {
  const double zn = ctx.zeta * ctx.tilde_n;
  if (k0 == 1) {
    return clamp_probability(std::exp(-zn) * dh[0] * dv[0]);
  }
  double total = 0.0;
  double factorial = 1.0;
  for (int i = 0; i < k0; ++i) {
    if (i > 0) {
      factorial *= i;
    }
    double row = 0.0;
    for (int j = 0; j <= i; ++j) {
      double c = 0.0;
      for (int n = 0; n <= j; ++n) {
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        c += binomial(j, n) * std::pow(zn, j - n) * sign * dh[n];
      }
      const double sign = (i - j) % 2 == 0 ? 1.0 : -1.0;
      row += binomial(i, j) * c * sign * dv[i - j];
    }
    total += row / factorial;
  }
  return clamp_probability(std::exp(-zn) * total);
}

}  // namespace

double reception_rural(const Scenario& scenario, const LinkSpec& link) {
  if (!is_rural(scenario)) {
    throw WrongScenario("reception_rural requires Aloha with exponential fading and Euclidean loss");
  }
  const EvalContext ctx = checked_context(scenario, link);
  return clamp_probability(std::exp(-ctx.tilde_n * ctx.zeta) * lt_rural_h(scenario, link, ctx.zeta) *
                           lt_rural_v(scenario, link, ctx.zeta));
}

double reception_urban(const Scenario& scenario, const LinkSpec& link) {
  if (!is_urban(scenario)) {
    throw WrongScenario(
        "reception_urban requires Aloha, Erlang useful fading, exponential Euclidean H links and Erlang "
        "Manhattan V links");
  }
  const EvalContext ctx = checked_context(scenario, link);
  const int n = scenario.fading_useful.shape() - 1;
  const double alpha_h = scenario.loss_h.alpha;
  const auto dh = alpha_h == 2.0 ? sqrt_exp_scaled_derivatives(ctx.kappa, ctx.zeta, n)
                                 : root_exp_scaled_derivatives(ctx.kappa, alpha_h, ctx.zeta, n);
  const auto dv = lt_urban_v_scaled_derivatives(scenario, link, ctx.zeta, n);
  return erlang_kernel(n + 1, ctx, dh, dv);
}

double reception_csma(const Scenario& scenario, const LinkSpec& link) {
  if (!is_csma_exponential(scenario)) {
    throw WrongScenario("reception_csma requires CSMA with exponential fading and Euclidean loss");
  }
  const EvalContext ctx = checked_context(scenario, link);
  const double lh = lt_interference_generic(Road::H, scenario, link, ctx.zeta);
  const double lv = lt_interference_generic(Road::V, scenario, link, ctx.zeta);
  return clamp_probability(std::exp(-ctx.tilde_n * ctx.zeta) * lh * lv);
}

double reception_generic(const Scenario& scenario, const LinkSpec& link) {
  const EvalContext ctx = checked_context(scenario, link);
  const int k0 = scenario.fading_useful.shape();
  if (k0 - 1 > 4) {
    throw OrderTooHigh("reception_generic supports useful-link Erlang shapes up to 5");
  }
  const auto scaled = [&](Road road) {
    const numerics::Function f = [&](double s) { return lt_interference_generic(road, scenario, link, s); };
    std::vector<double> d(k0);
    d[0] = f(ctx.zeta);
    double zeta_pow = 1.0;
    for (int m = 1; m < k0; ++m) {
      zeta_pow *= ctx.zeta;
      d[m] = zeta_pow * numerics::derivative_n(f, ctx.zeta, m);
    }
    return d;
  };
  return erlang_kernel(k0, ctx, scaled(Road::H), scaled(Road::V));
}

double reception(const Scenario& scenario, const LinkSpec& link) {
  if (is_rural(scenario)) {
    return reception_rural(scenario, link);
  }
  if (is_urban(scenario)) {
    return reception_urban(scenario, link);
  }
  if (is_csma_exponential(scenario)) {
    return reception_csma(scenario, link);
  }
  return reception_generic(scenario, link);
}

double spectral_efficiency(double beta) { return std::log2(1.0 + beta); }

double throughput(const Scenario& scenario, const LinkSpec& link) {
  return transmit_probability(scenario, link.tx) * reception(scenario, link) * spectral_efficiency(link.beta);
}

AccessOptimum optimize_access(const Scenario& scenario, const LinkSpec& link, double max_outage) {
  if (std::holds_alternative<NoMac>(scenario.mac)) {
    throw WrongMac("optimize_access requires Aloha or CSMA");
  }
  if (!(max_outage > 0.0 && max_outage < 1.0)) {
    throw InvalidArgument("max_outage must lie in (0, 1)");
  }
  const double efficiency = spectral_efficiency(link.beta);
  struct Point {
    double pa;
    Scenario s;
    double outage;
    double t;
  };
  const auto eval = [&](double pa) {
    Scenario s = with_access_probability(scenario, link.tx, pa);
    const double out = 1.0 - reception(s, link);
    return Point{pa, s, out, pa * (1.0 - out) * efficiency};
  };

  const double p_min = 1e-7;
  const double p_max = std::holds_alternative<Aloha>(scenario.mac) ? 1.0 : 1.0 - 1e-9;
  const Point low = eval(p_min);
  if (low.outage > max_outage) {
    return {0.0, scenario, low.outage, 0.0};
  }
  // Largest feasible access probability; outage grows with p_A.
  Point boundary = eval(p_max);
  if (boundary.outage > max_outage) {
    double lo = std::log(p_min);
    double hi = std::log(p_max);
    Point feasible = low;
    for (int i = 0; i < 60 && hi - lo > 1e-12; ++i) {
      const double mid = 0.5 * (lo + hi);
      Point pt = eval(std::exp(mid));
      if (pt.outage <= max_outage) {
        lo = mid;
        feasible = std::move(pt);
      } else {
        hi = mid;
      }
    }
    boundary = std::move(feasible);
  }

  // Golden-section search for an interior maximum below the boundary.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(p_min);
  double b = std::log(boundary.pa);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  Point pc = eval(std::exp(c));
  Point pd = eval(std::exp(d));
  for (int i = 0; i < 80 && b - a > 1e-10; ++i) {
    if (pc.t < pd.t) {
      a = c;
      c = d;
      pc = std::move(pd);
      d = a + inv_phi * (b - a);
      pd = eval(std::exp(d));
    } else {
      b = d;
      d = c;
      pd = std::move(pc);
      c = b - inv_phi * (b - a);
      pc = eval(std::exp(c));
    }
  }
  Point best = std::move(boundary);
  for (Point* pt : {&pc, &pd}) {
    if (pt->t > best.t && pt->outage <= max_outage) {
      best = std::move(*pt);
    }
  }
  return {best.pa, best.s, best.outage, best.t};
}

Scenario with_erlang_approximation(const Scenario& scenario, std::size_t sample_count, std::uint64_t seed) {
  Scenario s = scenario;
  for (FadingSpec* f : {&s.fading_useful, &s.fading_h, &s.fading_v}) {
    if (f->is_lognormal()) {
      SeededStream rng(seed);
      *f = erlang_fit(f->sigma_db(), sample_count, rng);
    }
  }
  return s;
}

}  // namespace xroads
