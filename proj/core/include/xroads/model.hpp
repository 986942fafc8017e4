#pragma once

// Domain types for the two-road intersection: roads H (x axis) and V (y axis)
// carry vehicles as 1-D Poisson processes; a receiver sits on road H and a
// transmitter anywhere in the plane. Distances are meters, powers watts, and
// the SINR threshold is linear. Unit conversions happen at the config boundary.

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace xroads {

enum class Road { H, V };
enum class Norm { Euclidean, Manhattan };

const char* to_string(Road road);
const char* to_string(Norm norm);

struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

/// Point at coordinate `z` along `road`: [z, 0] on H, [0, z] on V.
Position point_on(Road road, double z);

/// True when `p` lies on `road` (y == 0 for H, x == 0 for V).
bool on_road(Position p, Road road);

/// l1 or l2 distance between two points.
double distance(Position a, Position b, Norm norm);

/// Euclidean norm of a position vector, i.e. its distance to the intersection.
double norm2(Position p);

struct RoadConfig {
  double lambda_h = 0.0;  ///< vehicles per meter on road H
  double lambda_v = 0.0;  ///< vehicles per meter on road V

  double intensity(Road road) const { return road == Road::H ? lambda_h : lambda_v; }

  friend bool operator==(const RoadConfig&, const RoadConfig&) = default;
};

/// Every vehicle transmits independently with probability `p`.
struct Aloha {
  double p = 0.0;
  friend bool operator==(const Aloha&, const Aloha&) = default;
};

/// Contention-based access: a vehicle transmits when its back-off timer is
/// the smallest within a disc of radius `delta`.
struct Csma {
  double delta = 0.0;
  friend bool operator==(const Csma&, const Csma&) = default;
};

/// No other vehicle transmits.
struct NoMac {
  friend bool operator==(const NoMac&, const NoMac&) = default;
};

using MacProtocol = std::variant<NoMac, Aloha, Csma>;

/// Gain A * ||x_rx - x_tx||^-alpha under the chosen norm.
struct PathLossSpec {
  Norm norm = Norm::Euclidean;
  double amplitude = 1.0;
  double alpha = 2.0;

  friend bool operator==(const PathLossSpec&, const PathLossSpec&) = default;
};

/// Power fading distribution. Exponential(theta) is stored as Erlang(1, theta)
/// so that both spellings take identical code paths downstream. Log-normal
/// fading has unit median and is parameterized by its dB standard deviation.
class FadingSpec {
 public:
  enum class Family { Erlang, LogNormal };

  FadingSpec() = default;

  static FadingSpec exponential(double theta = 1.0) { return erlang(1, theta); }
  static FadingSpec erlang(int k, double theta);
  static FadingSpec lognormal(double sigma_db);

  Family family() const { return family_; }
  bool is_erlang() const { return family_ == Family::Erlang; }
  bool is_exponential() const { return family_ == Family::Erlang && k_ == 1; }
  bool is_lognormal() const { return family_ == Family::LogNormal; }

  int shape() const { return k_; }
  double scale() const { return theta_; }
  double sigma_db() const { return sigma_db_; }

  double mean() const;

  friend bool operator==(const FadingSpec&, const FadingSpec&) = default;

 private:
  Family family_ = Family::Erlang;
  int k_ = 1;
  double theta_ = 1.0;
  double sigma_db_ = 0.0;
};

std::string describe(const FadingSpec& fading);

struct LinkSpec {
  Position tx;
  Position rx;
  double power = 0.1;   ///< P, watts
  double noise = 0.0;   ///< N, watts
  double beta = 1.0;    ///< linear SINR threshold

  double noise_over_power() const { return noise / power; }

  friend bool operator==(const LinkSpec&, const LinkSpec&) = default;
};

struct Scenario {
  RoadConfig roads;
  MacProtocol mac = NoMac{};
  PathLossSpec loss_useful;
  PathLossSpec loss_h;
  PathLossSpec loss_v;
  FadingSpec fading_useful;
  FadingSpec fading_h;
  FadingSpec fading_v;

  const PathLossSpec& loss(Road road) const { return road == Road::H ? loss_h : loss_v; }
  const FadingSpec& fading(Road road) const { return road == Road::H ? fading_h : fading_v; }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
};

/// Checks every invariant of the scenario and link. Never throws.
ValidationReport validate(const Scenario& scenario, const LinkSpec& link);

/// Throws InvalidArgument listing all violations, if any.
void require_valid(const Scenario& scenario, const LinkSpec& link);

/// Swaps the roads: positions (x, y) -> (y, x), intensities and per-road
/// propagation exchanged. Applying it twice is the identity.
std::pair<Scenario, LinkSpec> mirror(const Scenario& scenario, const LinkSpec& link);

/// Returns the pair unchanged when the receiver is on road H, mirrored when it
/// is on road V. Throws OffRoadPosition otherwise.
std::pair<Scenario, LinkSpec> orient_rx_on_h(const Scenario& scenario, const LinkSpec& link);

/// Distance below which the NLOS (Manhattan / non-exponential) models stop
/// being realistic for a receiver or transmitter near the intersection.
inline constexpr double kNlosMinimumDistance = 5.0;

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

}  // namespace xroads
