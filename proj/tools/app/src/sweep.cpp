#include "xroads/app/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>

#include "xroads/analytic.hpp"
#include "xroads/app/errors.hpp"
#include "xroads/mac.hpp"
#include "xroads/montecarlo.hpp"
#include "xroads/propagation.hpp"

namespace xroads::app {

std::string format_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

namespace {

const char* axis_column(Axis a) {
  switch (a) {
    case Axis::TxRxDistance:
      return "distance_m";
    case Axis::RxToIntersectionD:
      return "d_m";
    case Axis::AccessProbability:
      return "p_access";
    case Axis::AlohaP:
      return "p";
    default:
      return "delta_m";
  }
}

// One grid dimension: its columns and how a value modifies a row.
struct Dimension {
  std::vector<std::string> columns;
  std::size_t size;
  std::function<std::vector<double>(std::size_t)> keys;
  std::function<void(std::size_t, SweepRow&)> apply;
};

}  // namespace

SweepLayout expand_sweep(const Experiment& ex) {
  const SweepSpec& sw = ex.sweep;
  std::vector<Dimension> dims;
  const auto scalar = [&](const char* column, const std::vector<double>& v,
                          std::function<void(double, SweepRow&)> apply) {
    if (!v.empty()) {
      dims.push_back({{column}, v.size(), [&v](std::size_t i) { return std::vector<double>{v[i]}; },
                      [&v, apply](std::size_t i, SweepRow& r) { apply(v[i], r); }});
    }
  };
  const auto set_rx = [](double d, SweepRow& r) { r.link.rx = {d, 0.0}; };
  const auto set_p = [](double p, SweepRow& r) { r.scenario.mac = Aloha{p}; };
  const auto set_delta = [](double delta, SweepRow& r) { r.scenario.mac = Csma{delta}; };
  const auto set_r = [](double dist, SweepRow& r) { r.link.tx = {r.link.rx.x + dist, r.link.rx.y}; };

  // Receiver first, then transmitter, then the MAC, so each step sees the
  // geometry it depends on.
  scalar("d_m", sw.d_m, set_rx);
  if (!sw.tx_positions_m.empty()) {
    const auto& v = sw.tx_positions_m;
    dims.push_back({{"tx_x_m", "tx_y_m"}, v.size(), [&v](std::size_t i) { return std::vector<double>{v[i].x, v[i].y}; },
                    [&v](std::size_t i, SweepRow& r) { r.link.tx = v[i]; }});
  }
  scalar("r_comm_m", sw.r_comm_m, set_r);
  scalar("p", sw.aloha_p, set_p);
  scalar("delta_m", sw.csma_delta_m, set_delta);

  SweepLayout layout;
  layout.key_columns.push_back(axis_column(sw.axis));
  for (const auto& d : dims) {
    layout.key_columns.insert(layout.key_columns.end(), d.columns.begin(), d.columns.end());
  }

  // First dimension outermost.
  std::size_t combos = 1;
  for (const auto& d : dims) {
    combos *= d.size;
  }
  std::vector<std::size_t> idx(dims.size(), 0);
  for (std::size_t c = 0; c < combos; ++c) {
    std::size_t rem = c;
    for (std::size_t k = dims.size(); k-- > 0;) {
      idx[k] = rem % dims[k].size;
      rem /= dims[k].size;
    }
    for (double value : sw.values) {
      SweepRow row{{value}, ex.scenario, ex.link};
      for (std::size_t k = 0; k < dims.size(); ++k) {
        const auto keys = dims[k].keys(idx[k]);
        row.keys.insert(row.keys.end(), keys.begin(), keys.end());
      }
      // Geometry and MAC in dependency order: rx, tx, MAC.
      const auto apply_named = [&](const char* column) {
        for (std::size_t k = 0; k < dims.size(); ++k) {
          if (dims[k].columns.front() == column) {
            dims[k].apply(idx[k], row);
          }
        }
      };
      apply_named("d_m");
      if (sw.axis == Axis::RxToIntersectionD) {
        set_rx(value, row);
      }
      apply_named("tx_x_m");
      apply_named("r_comm_m");
      if (sw.axis == Axis::TxRxDistance) {
        set_r(value, row);
      }
      apply_named("p");
      apply_named("delta_m");
      switch (sw.axis) {
        case Axis::AlohaP:
          set_p(value, row);
          break;
        case Axis::CsmaDelta:
          set_delta(value, row);
          break;
        case Axis::AccessProbability:
          row.scenario = with_access_probability(row.scenario, row.link.tx, value);
          break;
        default:
          break;
      }
      layout.rows.push_back(std::move(row));
    }
  }
  return layout;
}

namespace {

// Replaces each log-normal fading spec by its Erlang fit, fitting each
// distinct sigma once.
class ErlangFits {
 public:
  explicit ErlangFits(const AnalyticSettings& s) : settings_(s) {}

  Scenario apply(const Scenario& scenario) {
    Scenario out = scenario;
    for (FadingSpec* f : {&out.fading_useful, &out.fading_h, &out.fading_v}) {
      if (f->is_lognormal()) {
        auto it = fits_.find(f->sigma_db());
        if (it == fits_.end()) {
          SeededStream rng(settings_.lognormal_fit_seed);
          it = fits_.emplace(f->sigma_db(), erlang_fit(f->sigma_db(), settings_.lognormal_fit_samples, rng)).first;
          notes_.push_back("log-normal " + format_number(f->sigma_db()) + " dB approximated by " +
                           describe(it->second));
        }
        *f = it->second;
      }
    }
    return out;
  }

  std::vector<std::string>& notes() { return notes_; }

 private:
  AnalyticSettings settings_;
  std::map<double, FadingSpec> fits_;
  std::vector<std::string> notes_;
};

}  // namespace

SweepResult run_sweep(const Experiment& ex) {
  SweepResult result;
  result.name = ex.name;
  result.layout = expand_sweep(ex);
  result.has_analytic = ex.engines != Engines::MonteCarlo;
  result.has_mc = ex.engines != Engines::Analytic;
  result.mc_realizations = ex.montecarlo.realizations;
  const auto& rows = result.layout.rows;
  const std::size_t n = rows.size();

  std::vector<double> rec_a(n, 0.0);
  std::vector<double> out_mc(n, 0.0);
  std::vector<double> se_mc(n, 0.0);
  ErlangFits fits(ex.analytic);

  if (result.has_analytic) {
    for (std::size_t i = 0; i < n; ++i) {
      rec_a[i] = reception(fits.apply(rows[i].scenario), rows[i].link);
    }
  }
  if (result.has_mc) {
    std::vector<bool> done(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) {
        continue;
      }
      std::vector<std::size_t> members;
      std::vector<LinkSpec> links;
      for (std::size_t j = i; j < n; ++j) {
        if (!done[j] && rows[j].scenario == rows[i].scenario) {
          members.push_back(j);
          links.push_back(rows[j].link);
          done[j] = true;
        }
      }
      const auto est = simulate_outage(rows[i].scenario, links, ex.montecarlo);
      for (std::size_t k = 0; k < members.size(); ++k) {
        out_mc[members[k]] = est[k].p_out;
        se_mc[members[k]] = est[k].std_err;
      }
    }
  }

  for (Output o : ex.outputs) {
    OutputSeries s;
    s.output = o;
    for (std::size_t i = 0; i < n; ++i) {
      double scale = 1.0;
      if (o == Output::Throughput) {
        scale = transmit_probability(rows[i].scenario, rows[i].link.tx) * spectral_efficiency(rows[i].link.beta);
      }
      if (result.has_analytic) {
        s.analytic.push_back(o == Output::Outage ? 1.0 - rec_a[i]
                                                 : o == Output::Reception ? rec_a[i] : scale * rec_a[i]);
      }
      if (result.has_mc) {
        s.mc.push_back(o == Output::Outage ? out_mc[i]
                                           : o == Output::Reception ? 1.0 - out_mc[i] : scale * (1.0 - out_mc[i]));
        s.mc_stderr.push_back(o == Output::Outage || o == Output::Reception ? se_mc[i] : scale * se_mc[i]);
      }
    }
    result.series.push_back(std::move(s));
  }

  result.notes = fits.notes();
  const bool wants_throughput =
      std::find(ex.outputs.begin(), ex.outputs.end(), Output::Throughput) != ex.outputs.end();
  if (result.has_analytic && wants_throughput && ex.sweep.axis == Axis::AccessProbability) {
    const std::size_t per = ex.sweep.values.size();
    for (std::size_t c = 0; c < n; c += per) {
      const auto opt = optimize_access(fits.apply(rows[c].scenario), rows[c].link, ex.analytic.max_outage);
      std::string where;
      for (std::size_t k = 1; k < result.layout.key_columns.size(); ++k) {
        where += result.layout.key_columns[k] + "=" + format_number(rows[c].keys[k]) + " ";
      }
      result.notes.push_back("optimum " + where + "(outage <= " + format_number(ex.analytic.max_outage) +
                             "): p_access=" + format_number(opt.p_access) + " throughput=" +
                             format_number(opt.throughput) + " outage=" + format_number(opt.outage));
    }
  }
  return result;
}

namespace {

void write_file(const std::filesystem::path& path, const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& columns) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw SchemaError("cannot write " + path.string());
  }
  for (std::size_t c = 0; c < header.size(); ++c) {
    out << (c ? "," : "") << header[c];
  }
  out << "\n";
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << (c ? "," : "") << format_number(columns[c][r]);
    }
    out << "\n";
  }
}

}  // namespace

std::vector<std::filesystem::path> write_csvs(const SweepResult& result, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto& layout = result.layout;
  std::vector<std::vector<double>> keys(layout.key_columns.size());
  for (const auto& row : layout.rows) {
    for (std::size_t k = 0; k < keys.size(); ++k) {
      keys[k].push_back(row.keys[k]);
    }
  }
  std::vector<std::filesystem::path> written;
  for (const auto& s : result.series) {
    const std::string base = result.name + "_" + to_string(s.output);
    const std::string out = to_string(s.output);

    auto header = layout.key_columns;
    auto cols = keys;
    if (result.has_analytic) {
      header.push_back(out + "_analytic");
      cols.push_back(s.analytic);
    }
    if (result.has_mc) {
      header.push_back(out + "_mc");
      cols.push_back(s.mc);
      header.push_back("mc_stderr");
      cols.push_back(s.mc_stderr);
    }
    written.push_back(out_dir / (base + ".csv"));
    write_file(written.back(), header, cols);

    if (result.has_analytic) {
      auto h = layout.key_columns;
      auto c = keys;
      h.push_back("value");
      c.push_back(s.analytic);
      written.push_back(out_dir / (base + "_analytic.csv"));
      write_file(written.back(), h, c);
    }
    if (result.has_mc) {
      auto h = layout.key_columns;
      auto c = keys;
      h.insert(h.end(), {"value", "stderr"});
      c.push_back(s.mc);
      c.push_back(s.mc_stderr);
      if (s.output != Output::Throughput) {
        h.push_back("realizations");
        c.emplace_back(s.mc.size(), double(result.mc_realizations));
      }
      written.push_back(out_dir / (base + "_montecarlo.csv"));
      write_file(written.back(), h, c);
    }
  }
  return written;
}

std::vector<std::string> summarize(const SweepResult& result) {
  std::vector<std::string> lines;
  for (const auto& s : result.series) {
    std::string line = result.name + " " + to_string(s.output) + ": " +
                       std::to_string(result.layout.rows.size()) + " points";
    if (result.has_analytic && result.has_mc) {
      double max_gap = 0.0;
      double max_se = 0.0;
      for (std::size_t i = 0; i < s.mc.size(); ++i) {
        max_gap = std::max(max_gap, std::abs(s.analytic[i] - s.mc[i]));
        max_se = std::max(max_se, s.mc_stderr[i]);
      }
      line += ", max |analytic - mc| = " + format_number(max_gap) + ", max mc stderr = " + format_number(max_se);
    }
    lines.push_back(line);
  }
  lines.insert(lines.end(), result.notes.begin(), result.notes.end());
  return lines;
}

}  // namespace xroads::app
