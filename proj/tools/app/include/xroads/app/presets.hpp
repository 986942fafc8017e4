#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace xroads::app {

/// Names of the built-in experiments: fig2, case2, fig3, fig4, fig5.
std::vector<std::string> preset_names();

/// Configuration text of a built-in experiment. Throws UnknownPreset.
std::string preset_config(std::string_view name);

}  // namespace xroads::app
