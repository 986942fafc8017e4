#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "xroads/app/compare.hpp"
#include "xroads/app/config.hpp"
#include "xroads/app/errors.hpp"
#include "xroads/app/presets.hpp"
#include "xroads/app/sweep.hpp"

using namespace xroads;
using namespace xroads::app;

namespace {

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("xroads_unit_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

CsvTable table(std::vector<std::string> header, std::vector<std::vector<std::string>> rows) {
  return {std::move(header), std::move(rows)};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("fig2 preset parameters") {
    const auto e = parse_config(preset_config("fig2"));
    CHECK(e.scenario.roads.lambda_h == 0.01);
    CHECK(e.scenario.roads.lambda_v == 0.01);
    CHECK(e.link.power == 0.1);
    CHECK(e.link.noise == doctest::Approx(dbm_to_watts(-99.0)));
    CHECK(e.link.beta == doctest::Approx(db_to_linear(8.0)));
    CHECK(e.scenario.loss_useful.amplitude == 3e-5);
    CHECK(e.sweep.d_m == std::vector<double>{0, 100, 500});
    CHECK(e.sweep.aloha_p == std::vector<double>{0, 0.005, 0.1});
    CHECK(e.sweep.values.size() == 24);
    CHECK(e.sweep.values.front() == 10);
    CHECK(e.sweep.values.back() == 700);
  }

  TEST_CASE("every preset parses and names its experiment") {
    for (const auto& name : preset_names()) {
      const auto e = parse_config(preset_config(name));
      CHECK(e.name == name);
      CHECK(!expand_sweep(e).rows.empty());
    }
    CHECK_THROWS_AS(preset_config("fig9"), UnknownPreset);
  }

  TEST_CASE("fig3 contention radii give the stated far-field access") {
    const auto e = parse_config(preset_config("fig3"));
    REQUIRE(e.sweep.csma_delta_m.size() == 2);
    const double far0 = (1 - std::exp(-2 * e.sweep.csma_delta_m[0] * 0.01)) / (2 * e.sweep.csma_delta_m[0] * 0.01);
    const double far1 = (1 - std::exp(-2 * e.sweep.csma_delta_m[1] * 0.01)) / (2 * e.sweep.csma_delta_m[1] * 0.01);
    CHECK(far0 == doctest::Approx(0.1).epsilon(1e-3));
    CHECK(far1 == doctest::Approx(0.005).epsilon(1e-3));
    CHECK(e.sweep.tx_positions_m == std::vector<Position>{{0, 0}, {0, 150}});
  }

  TEST_CASE("fig5 receiver and transmitter placement") {
    const auto e = parse_config(preset_config("fig5"));
    CHECK(e.link.rx == Position{-100, 0});
    const auto layout = expand_sweep(e);
    for (const auto& row : layout.rows) {
      CHECK(row.link.tx.y == 0.0);
      const double r = std::abs(row.link.tx.x - row.link.rx.x);
      CHECK((r == doctest::Approx(100.0) || r == doctest::Approx(200.0)));
    }
  }

  TEST_CASE("configuration round trip") {
    for (const auto& name : preset_names()) {
      const auto e = parse_config(preset_config(name));
      const auto text = to_config(e);
      const auto back = parse_config(text);
      CHECK(back.scenario == e.scenario);
      CHECK(back.link == e.link);
      CHECK(back.sweep == e.sweep);
      CHECK(back.outputs == e.outputs);
      CHECK(back.engines == e.engines);
      CHECK(back.analytic == e.analytic);
      CHECK(back.montecarlo.realizations == e.montecarlo.realizations);
      CHECK(back.montecarlo.seed == e.montecarlo.seed);
      CHECK(back.montecarlo.window_half_length == e.montecarlo.window_half_length);
      CHECK(to_config(back) == text);
    }
  }

  TEST_CASE("typo in a key names the nearest valid key") {
    const auto text = replace(preset_config("fig2"), "lambda_h_per_m", "lamda_h");
    try {
      parse_config(text);
      FAIL("expected SchemaError");
    } catch (const SchemaError& err) {
      const std::string msg = err.what();
      CHECK(msg.find("lamda_h") != std::string::npos);
      CHECK(msg.find("lambda_h_per_m") != std::string::npos);
    }
    CHECK(levenshtein("lamda_h", "lambda_h") == 1);
    CHECK(levenshtein("", "abc") == 3);
    CHECK(levenshtein("kitten", "sitting") == 3);
  }

  TEST_CASE("schema and syntax errors") {
    const auto base = preset_config("fig2");
    CHECK_THROWS_AS(parse_config(replace(base, "values = 10:700:30", "values =")), SchemaError);
    CHECK_THROWS_AS(parse_config(replace(base, "values = 10:700:30", "values = 10, 5, 20")), SchemaError);
    CHECK_THROWS_AS(parse_config(replace(base, "beta_db = 8", "beta_db = 8\nbeta = 6.3")), SchemaError);
    CHECK_THROWS_AS(parse_config(replace(base, "mac = aloha", "mac = tdma")), SchemaError);
    CHECK_THROWS_AS(parse_config(replace(base, "[sweep]", "[sweeps]")), SchemaError);
    CHECK_THROWS_AS(parse_config(replace(base, "power_w = 0.1", "power_w = lots")), SchemaError);
    try {
      parse_config(replace(base, "seed = 2016", "seed 2016"), "doc.ini");
      FAIL("expected ConfigParseError");
    } catch (const ConfigParseError& err) {
      CHECK(std::string(err.what()).rfind("doc.ini:", 0) == 0);
      CHECK(err.line() > 1);
    }
    CHECK_THROWS_AS(parse_config(replace(base, "[link]", "[link")), ConfigParseError);
  }

  TEST_CASE("sweep layout of fig2") {
    const auto layout = expand_sweep(parse_config(preset_config("fig2")));
    CHECK(layout.key_columns == std::vector<std::string>{"distance_m", "d_m", "p"});
    CHECK(layout.rows.size() == 24 * 9);
    const auto& first = layout.rows.front();
    CHECK(first.keys == std::vector<double>{10, 0, 0});
    CHECK(layout.rows[1].keys == std::vector<double>{40, 0, 0});
    for (const auto& row : layout.rows) {
      CHECK(row.link.rx == Position{row.keys[1], 0});
      CHECK(std::abs(distance(row.link.tx, row.link.rx, Norm::Euclidean) - row.keys[0]) < 1e-9);
      CHECK(std::get<Aloha>(row.scenario.mac).p == row.keys[2]);
    }
  }

  TEST_CASE("CSV column contract") {
    auto e = parse_config(preset_config("fig2"));
    e.montecarlo.realizations = 200;
    const auto result = run_sweep(e);
    const auto dir = scratch_dir("csv");
    const auto files = write_csvs(result, dir);
    const auto main = read_csv(dir / "fig2_outage.csv");
    CHECK(main.header ==
          std::vector<std::string>{"distance_m", "d_m", "p", "outage_analytic", "outage_mc", "mc_stderr"});
    CHECK(main.rows.size() == 216);
    const auto text = slurp(dir / "fig2_outage.csv");
    CHECK(text.find('\r') == std::string::npos);
    CHECK(format_number(0.1) == "1.0000000000000001e-01");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);

    const auto analytic = read_csv(dir / "fig2_outage_analytic.csv");
    const auto mc = read_csv(dir / "fig2_outage_montecarlo.csv");
    CHECK(analytic.header.back() == "value");
    CHECK(std::vector<std::string>(mc.header.end() - 3, mc.header.end()) ==
          std::vector<std::string>{"value", "stderr", "realizations"});

    auto again = run_sweep(e);
    const auto dir2 = scratch_dir("csv2");
    write_csvs(again, dir2);
    CHECK(slurp(dir / "fig2_outage.csv") == slurp(dir2 / "fig2_outage.csv"));
  }

  TEST_CASE("compare: identical tables pass") {
    const auto t = table({"x", "value", "stderr"}, {{"1", "0.5", "0.01"}, {"2", "0.25", "0.02"}});
    const auto report = compare_tables(t, t, parse_tolerance("abs:0"));
    CHECK(report.pass);
    CHECK(report.max_delta == 0.0);
  }

  TEST_CASE("compare: perturbed column fails and names the worst point") {
    const auto a = table({"x", "value"}, {{"1", "0.10"}, {"2", "0.20"}, {"3", "0.30"}});
    auto b = a;
    for (auto& row : b.rows) {
      row[1] = std::to_string(std::stod(row[1]) + 0.05);
    }
    b.rows[1][1] = "0.26";
    const auto report = compare_tables(a, b, parse_tolerance("abs:0.02"));
    CHECK_FALSE(report.pass);
    CHECK(report.points[report.worst].key.find("x=2") != std::string::npos);
    CHECK(report.max_delta == doctest::Approx(0.06));
  }

  TEST_CASE("compare: sigma and mixed tolerances") {
    const auto a = table({"x", "value"}, {{"1", "0.10"}});
    const auto b = table({"x", "value", "stderr"}, {{"1", "0.13", "0.01"}});
    CHECK(compare_tables(a, b, parse_tolerance("sigma:3")).pass);
    CHECK_FALSE(compare_tables(a, b, parse_tolerance("sigma:2")).pass);
    CHECK(compare_tables(a, b, parse_tolerance("abs:0.05,sigma:1")).pass);
    CHECK_THROWS_AS(parse_tolerance("rel:0.1"), SchemaError);
    CHECK_THROWS_AS(parse_tolerance(""), SchemaError);
  }

  TEST_CASE("compare: saturated estimates use the binomial floor") {
    const auto a = table({"x", "value"}, {{"1", "0.99998"}, {"2", "0.5"}});
    const auto b = table({"x", "value", "stderr", "realizations"}, {{"1", "1", "0", "100000"}, {"2", "0.5", "0", "100000"}});
    CHECK(compare_tables(a, b, parse_tolerance("sigma:3")).pass);
    const auto no_n = table({"x", "value", "stderr"}, {{"1", "1", "0"}, {"2", "0.5", "0"}});
    CHECK_FALSE(compare_tables(a, no_n, parse_tolerance("sigma:3")).pass);
  }

  TEST_CASE("compare on the fig2 sweep") {
    auto e = parse_config(preset_config("fig2"));
    e.montecarlo.realizations = 100000;
    const auto dir = scratch_dir("fig2");
    write_csvs(run_sweep(e), dir);
    const auto analytic = dir / "fig2_outage_analytic.csv";
    const auto mc = dir / "fig2_outage_montecarlo.csv";
    CHECK(compare_files(analytic, mc, parse_tolerance("sigma:3")).pass);
    const auto same = compare_files(analytic, analytic, parse_tolerance("abs:0"));
    CHECK(same.pass);
    CHECK(same.max_delta == 0.0);

    auto perturbed = read_csv(analytic);
    const std::size_t value = perturbed.header.size() - 1;
    for (auto& row : perturbed.rows) {
      row[value] = format_number(std::stod(row[value]) + 0.05);
    }
    const auto bad = compare_tables(perturbed, read_csv(mc), parse_tolerance("sigma:3"));
    CHECK_FALSE(bad.pass);
    CHECK_FALSE(bad.points[bad.worst].ok);
    CHECK(bad.points[bad.worst].key.find("distance_m=") == 0);
    CHECK(bad.max_delta > 0.045);
  }

  TEST_CASE("compare: mismatched axes") {
    const auto a = table({"x", "value"}, {{"1", "0.1"}, {"2", "0.2"}});
    CHECK_THROWS_AS(compare_tables(a, table({"y", "value"}, {{"1", "0.1"}, {"2", "0.2"}}), parse_tolerance("abs:1")),
                    AxisMismatch);
    CHECK_THROWS_AS(compare_tables(a, table({"x", "value"}, {{"1", "0.1"}, {"3", "0.2"}}), parse_tolerance("abs:1")),
                    AxisMismatch);
    CHECK_THROWS_AS(compare_tables(a, table({"x", "value"}, {{"1", "0.1"}}), parse_tolerance("abs:1")),
                    AxisMismatch);
  }
}
