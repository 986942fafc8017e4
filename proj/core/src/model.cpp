#include "xroads/model.hpp"

#include <cmath>
#include <sstream>

#include "xroads/errors.hpp"

namespace xroads {

const char* to_string(Road road) { return road == Road::H ? "H" : "V"; }

const char* to_string(Norm norm) { return norm == Norm::Euclidean ? "euclidean" : "manhattan"; }

Position point_on(Road road, double z) {
  return road == Road::H ? Position{z, 0.0} : Position{0.0, z};
}

bool on_road(Position p, Road road) { return road == Road::H ? p.y == 0.0 : p.x == 0.0; }

double distance(Position a, Position b, Norm norm) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  if (norm == Norm::Manhattan) {
    return std::abs(dx) + std::abs(dy);
  }
  return std::hypot(dx, dy);
}

double norm2(Position p) { return std::hypot(p.x, p.y); }

FadingSpec FadingSpec::erlang(int k, double theta) {
  FadingSpec f;
  f.family_ = Family::Erlang;
  f.k_ = k;
  f.theta_ = theta;
  return f;
}

FadingSpec FadingSpec::lognormal(double sigma_db) {
  FadingSpec f;
  f.family_ = Family::LogNormal;
  f.k_ = 0;
  f.theta_ = 0.0;
  f.sigma_db_ = sigma_db;
  return f;
}

double FadingSpec::mean() const {
  if (family_ == Family::Erlang) {
    return k_ * theta_;
  }
  const double sigma_ln = sigma_db_ * std::log(10.0) / 10.0;
  return std::exp(0.5 * sigma_ln * sigma_ln);
}

std::string describe(const FadingSpec& fading) {
  std::ostringstream out;
  if (fading.is_lognormal()) {
    out << "lognormal(sigma_db=" << fading.sigma_db() << ")";
  } else if (fading.is_exponential()) {
    out << "exponential(theta=" << fading.scale() << ")";
  } else {
    out << "erlang(k=" << fading.shape() << ", theta=" << fading.scale() << ")";
  }
  return out.str();
}

namespace {

bool finite(Position p) { return std::isfinite(p.x) && std::isfinite(p.y); }

void check_loss(const PathLossSpec& loss, const char* name, std::vector<std::string>& out) {
  if (!(loss.amplitude > 0.0) || !std::isfinite(loss.amplitude)) {
    out.push_back(std::string(name) + ": amplitude A must be > 0");
  }
  if (!(loss.alpha > 1.0) || !std::isfinite(loss.alpha)) {
    out.push_back(std::string(name) + ": path loss exponent alpha must be > 1");
  }
}

void check_fading(const FadingSpec& f, const char* name, std::vector<std::string>& out) {
  if (f.is_lognormal()) {
    if (!(f.sigma_db() > 0.0) || !std::isfinite(f.sigma_db())) {
      out.push_back(std::string(name) + ": sigma_db must be > 0");
    }
    return;
  }
  if (f.shape() < 1) {
    out.push_back(std::string(name) + ": Erlang shape k must be >= 1");
  }
  if (!(f.scale() > 0.0) || !std::isfinite(f.scale())) {
    out.push_back(std::string(name) + ": fading scale theta must be > 0");
  }
}

bool uses_nlos_models(const Scenario& s) {
  const auto nlos = [](const PathLossSpec& l, const FadingSpec& f) {
    return l.norm == Norm::Manhattan || !f.is_exponential();
  };
  return nlos(s.loss_useful, s.fading_useful) || nlos(s.loss_v, s.fading_v) ||
         nlos(s.loss_h, s.fading_h);
}

}  // namespace

ValidationReport validate(const Scenario& scenario, const LinkSpec& link) {
  ValidationReport report;
  auto& v = report.violations;

  const auto& roads = scenario.roads;
  if (!(roads.lambda_h >= 0.0) || !std::isfinite(roads.lambda_h)) {
    v.push_back("lambda_h must be a finite value >= 0");
  }
  if (!(roads.lambda_v >= 0.0) || !std::isfinite(roads.lambda_v)) {
    v.push_back("lambda_v must be a finite value >= 0");
  }

  if (const auto* aloha = std::get_if<Aloha>(&scenario.mac)) {
    if (!(aloha->p >= 0.0 && aloha->p <= 1.0)) {
      v.push_back("p out of [0,1]");
    }
  } else if (const auto* csma = std::get_if<Csma>(&scenario.mac)) {
    if (!(csma->delta > 0.0) || !std::isfinite(csma->delta)) {
      v.push_back("CSMA contention radius delta must be > 0");
    }
  }

  check_loss(scenario.loss_useful, "useful link", v);
  check_loss(scenario.loss_h, "H interferers", v);
  check_loss(scenario.loss_v, "V interferers", v);
  check_fading(scenario.fading_useful, "useful link", v);
  check_fading(scenario.fading_h, "H interferers", v);
  check_fading(scenario.fading_v, "V interferers", v);

  if (!finite(link.tx) || !finite(link.rx)) {
    v.push_back("positions must be finite");
  }
  if (link.rx.y != 0.0) {
    v.push_back("receiver must lie on road H (rx.y == 0); use orient_rx_on_h()");
  }
  if (link.tx == link.rx) {
    v.push_back("transmitter and receiver coincide");
  }
  if (!(link.power > 0.0) || !std::isfinite(link.power)) {
    v.push_back("transmit power P must be > 0");
  }
  if (!(link.noise >= 0.0) || !std::isfinite(link.noise)) {
    v.push_back("noise power N must be >= 0");
  }
  if (!(link.beta > 0.0) || !std::isfinite(link.beta)) {
    v.push_back("SINR threshold beta must be > 0");
  }

  if (uses_nlos_models(scenario) &&
      (norm2(link.rx) < kNlosMinimumDistance || norm2(link.tx) < kNlosMinimumDistance)) {
    report.warnings.push_back("NLOS model unrealistic within 5 m of intersection");
  }
  return report;
}

void require_valid(const Scenario& scenario, const LinkSpec& link) {
  const auto report = validate(scenario, link);
  if (report.ok()) {
    return;
  }
  std::string msg = "invalid scenario:";
  for (const auto& violation : report.violations) {
    msg += " " + violation + ";";
  }
  throw InvalidArgument(msg);
}

std::pair<Scenario, LinkSpec> mirror(const Scenario& scenario, const LinkSpec& link) {
  Scenario s = scenario;
  std::swap(s.roads.lambda_h, s.roads.lambda_v);
  std::swap(s.loss_h, s.loss_v);
  std::swap(s.fading_h, s.fading_v);
  LinkSpec l = link;
  l.tx = {link.tx.y, link.tx.x};
  l.rx = {link.rx.y, link.rx.x};
  return {s, l};
}

std::pair<Scenario, LinkSpec> orient_rx_on_h(const Scenario& scenario, const LinkSpec& link) {
  if (on_road(link.rx, Road::H)) {
    return {scenario, link};
  }
  if (on_road(link.rx, Road::V)) {
    return mirror(scenario, link);
  }
  throw OffRoadPosition("receiver lies on neither road");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

}  // namespace xroads
