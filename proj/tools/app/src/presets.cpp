#include "xroads/app/presets.hpp"

#include <map>

#include "xroads/app/errors.hpp"

namespace xroads::app {

namespace {

// Shared parameters: lambda = 0.01 /m on both roads, P = 100 mW,
// N = -99 dBm, beta = 8 dB, A = 3e-5, alpha = 2.
constexpr const char* kRoads = R"(
[scenario]
lambda_h_per_m = 0.01
lambda_v_per_m = 0.01
)";

constexpr const char* kRural = R"(
[useful]
norm = euclidean
amplitude = 3e-5
alpha = 2
fading = exponential

[interferers_h]
norm = euclidean
amplitude = 3e-5
alpha = 2
fading = exponential

[interferers_v]
norm = euclidean
amplitude = 3e-5
alpha = 2
fading = exponential
)";

constexpr const char* kLinkBudget = R"(
power_w = 0.1
noise_dbm = -99
beta_db = 8
)";

const std::map<std::string, std::string, std::less<>>& presets() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"fig2", std::string(R"([experiment]
name = fig2
outputs = outage
engines = both
)") + kRoads + "mac = aloha\n" + kRural + R"(
[link]
rx_x_m = 0
rx_y_m = 0
)" + kLinkBudget + R"(
[sweep]
axis = tx_rx_distance
values = 10:700:30
d_m = 0, 100, 500
aloha_p = 0, 0.005, 0.1

[montecarlo]
realizations = 10000
seed = 2016
workers = 1
window_half_length_m = 20000
)"},
      {"case2", std::string(R"([experiment]
name = case2
outputs = outage
engines = both
)") + kRoads + R"(mac = aloha

# Non line of sight: Manhattan loss and log-normal shadowing on the useful
# link and from road V; line of sight from road H.
[useful]
norm = manhattan
amplitude = 3e-5
alpha = 2
fading = lognormal
fading_sigma_db = 3.2

[interferers_h]
norm = euclidean
amplitude = 3e-5
alpha = 2
fading = exponential

[interferers_v]
norm = manhattan
amplitude = 3e-5
alpha = 2
fading = lognormal
fading_sigma_db = 3.2

[link]
)" + kLinkBudget + R"(
[sweep]
axis = rx_to_intersection_d
values = 10:200:10
aloha_p = 0.002, 0.02
tx_positions_m = 0:50, 0:100

[montecarlo]
realizations = 10000
seed = 2016
workers = 1
window_half_length_m = 20000

[analytic]
lognormal_fit_samples = 1000000
lognormal_fit_seed = 1
)"},
      {"fig3", std::string(R"([experiment]
name = fig3
outputs = outage
engines = both
)") + kRoads + "mac = csma\n" + kRural + R"(
[link]
)" + kLinkBudget + R"(
[sweep]
axis = rx_to_intersection_d
values = 10, 50:500:50
csma_delta_m = 500, 10000
tx_positions_m = 0:0, 0:150

[montecarlo]
realizations = 50000
seed = 2016
workers = 1
window_half_length_m = 20000
)"},
      {"fig4", std::string(R"([experiment]
name = fig4
outputs = throughput, outage
engines = both
)") + kRoads + "mac = aloha\n" + kRural + R"(
[link]
rx_x_m = 0
rx_y_m = 0
)" + kLinkBudget + R"(
[sweep]
axis = access_probability
values = 0.002:0.05:0.002
r_comm_m = 100, 200

[montecarlo]
realizations = 10000
seed = 2016
workers = 1
window_half_length_m = 20000

[analytic]
max_outage = 0.1
)"},
      {"fig5", std::string(R"([experiment]
name = fig5
outputs = throughput, outage
engines = both
)") + kRoads + "mac = csma\n" + kRural + R"(
[link]
rx_x_m = -100
rx_y_m = 0
)" + kLinkBudget + R"(
[sweep]
axis = access_probability
values = 0.005:0.1:0.005
r_comm_m = 100, 200

[montecarlo]
realizations = 10000
seed = 2016
workers = 1
window_half_length_m = 20000

[analytic]
max_outage = 0.1
)"},
  };
  return table;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : presets()) {
    names.push_back(name);
  }
  return names;
}

std::string preset_config(std::string_view name) {
  const auto& table = presets();
  const auto it = table.find(name);
  if (it == table.end()) {
    std::string known;
    for (const auto& n : preset_names()) {
      known += (known.empty() ? "" : ", ") + n;
    }
    throw UnknownPreset("unknown preset '" + std::string(name) + "' (known: " + known + ")");
  }
  return it->second;
}

}  // namespace xroads::app
