#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "xroads/app/compare.hpp"
#include "xroads/app/config.hpp"
#include "xroads/app/errors.hpp"
#include "xroads/app/presets.hpp"
#include "xroads/app/sweep.hpp"
#include "xroads/errors.hpp"
#include "xroads/propagation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Overrides {
  std::string out_dir = ".";
  std::optional<int> workers;
  std::optional<std::uint64_t> realizations;
  std::optional<std::uint64_t> seed;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--out-dir", o.out_dir, "Directory for CSV output")->capture_default_str();
  cmd->add_option("--workers", o.workers, "Monte Carlo worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--realizations", o.realizations, "Monte Carlo realizations")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Monte Carlo master seed");
}

int run_experiment(xroads::app::Experiment ex, const Overrides& o) {
  using namespace xroads::app;
  if (o.workers) {
    ex.montecarlo.workers = *o.workers;
  }
  if (o.realizations) {
    ex.montecarlo.realizations = *o.realizations;
  }
  if (o.seed) {
    ex.montecarlo.seed = *o.seed;
  }
  const auto report = xroads::validate(ex.scenario, ex.link);
  for (const auto& w : report.warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  const SweepResult result = run_sweep(ex);
  for (const auto& path : write_csvs(result, o.out_dir)) {
    std::cout << "wrote " << path.string() << "\n";
  }
  for (const auto& line : summarize(result)) {
    std::cout << line << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reception probability and throughput of vehicular links at a road intersection"};
  app.require_subcommand(1);

  Overrides overrides;

  auto* run = app.add_subcommand("run", "Run the sweep described by a configuration file");
  std::string config_path;
  run->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  add_overrides(run, overrides);

  auto* preset = app.add_subcommand("preset", "Run or print a built-in experiment");
  std::string preset_name;
  bool emit_config = false;
  preset->add_option("name", preset_name, "fig2, case2, fig3, fig4 or fig5")->required();
  preset->add_flag("--emit-config", emit_config, "Print the configuration instead of running it");
  add_overrides(preset, overrides);

  auto* compare = app.add_subcommand("compare", "Compare two result files point by point");
  std::string file_a;
  std::string file_b;
  std::string tol_spec;
  bool verbose = false;
  compare->add_option("a", file_a, "First CSV")->required()->check(CLI::ExistingFile);
  compare->add_option("b", file_b, "Second CSV")->required()->check(CLI::ExistingFile);
  compare->add_option("--tol", tol_spec, "abs:<x>, sigma:<k> or both, comma separated")->required();
  compare->add_flag("-v,--verbose", verbose, "Print every point");

  auto* fit = app.add_subcommand("fit-erlang", "Fit an Erlang distribution to log-normal shadowing");
  double sigma_db = 0.0;
  std::uint64_t samples = 1000000;
  std::uint64_t fit_seed = 1;
  fit->add_option("--sigma-db", sigma_db, "Log-normal standard deviation in dB")->required();
  fit->add_option("--samples", samples, "Number of log-normal draws")->capture_default_str();
  fit->add_option("--seed", fit_seed, "Sampling seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    using namespace xroads::app;
    if (*run) {
      return run_experiment(load_config(config_path), overrides);
    }
    if (*preset) {
      const std::string text = preset_config(preset_name);
      if (emit_config) {
        std::cout << text;
        return kExitOk;
      }
      return run_experiment(parse_config(text, "preset:" + preset_name), overrides);
    }
    if (*compare) {
      const auto report = compare_files(file_a, file_b, parse_tolerance(tol_spec));
      for (const auto& p : report.points) {
        if (verbose || !p.ok) {
          std::printf("%s row %zu [%s]: a=%.6e b=%.6e delta=%.3e limit=%.3e\n", p.ok ? "ok  " : "FAIL", p.row + 1,
                      p.key.c_str(), p.a, p.b, p.delta, p.limit);
        }
      }
      if (!report.points.empty()) {
        const auto& w = report.points[report.worst];
        std::printf("worst point: row %zu [%s] delta=%.3e limit=%.3e\n", w.row + 1, w.key.c_str(), w.delta, w.limit);
      }
      std::printf("%s: %zu points, max delta %.3e\n", report.pass ? "PASS" : "FAIL", report.points.size(),
                  report.max_delta);
      return report.pass ? kExitOk : kExitFail;
    }
    if (*fit) {
      xroads::SeededStream rng(fit_seed);
      const auto f = xroads::erlang_fit(sigma_db, samples, rng);
      std::printf("k = %d\ntheta = %.6f\nmean = %.6f\n", f.shape(), f.scale(), f.mean());
      return kExitOk;
    }
  } catch (const xroads::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const xroads::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
