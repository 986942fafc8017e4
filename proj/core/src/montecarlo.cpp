#include "xroads/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <thread>
#include <utility>

#include "xroads/analytic.hpp"
#include "xroads/errors.hpp"
#include "xroads/mac.hpp"
#include "xroads/numerics.hpp"
#include "xroads/propagation.hpp"

namespace xroads {

namespace {

// Substream tags per realization.
constexpr std::uint64_t kTagHPos = 1;
constexpr std::uint64_t kTagHNeg = 2;
constexpr std::uint64_t kTagVPos = 3;
constexpr std::uint64_t kTagVNeg = 4;
constexpr std::uint64_t kTagUseful = 5;

class MinTable {
 public:
  void build(std::span<const double> v) {
    const std::size_t n = v.size();
    levels_.clear();
    levels_.emplace_back(v.begin(), v.end());
    for (std::size_t w = 1; 2 * w <= n; w *= 2) {
      const auto& prev = levels_.back();
      std::vector<double> next(n - 2 * w + 1);
      for (std::size_t i = 0; i < next.size(); ++i) {
        next[i] = std::min(prev[i], prev[i + w]);
      }
      levels_.push_back(std::move(next));
    }
  }

  // Minimum over [lo, hi); +inf when empty.
  double query(std::size_t lo, std::size_t hi) const {
    if (lo >= hi) {
      return std::numeric_limits<double>::infinity();
    }
    const std::size_t len = hi - lo;
    const int k = std::bit_width(len) - 1;
    const auto& level = levels_[k];
    return std::min(level[lo], level[hi - (std::size_t{1} << k)]);
  }

 private:
  std::vector<std::vector<double>> levels_;
};

std::pair<std::size_t, std::size_t> index_range(std::span<const double> z, double lo, double hi) {
  const auto first = std::lower_bound(z.begin(), z.end(), lo);
  const auto last = std::upper_bound(first, z.end(), hi);
  return {static_cast<std::size_t>(first - z.begin()), static_cast<std::size_t>(last - z.begin())};
}

void mask_road(Road road, std::span<const double> z, std::span<const double> mark, const MinTable& same,
               std::span<const double> z_other, const MinTable& other, Position tx, double delta,
               std::vector<char>& keep) {
  keep.assign(z.size(), 0);
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (distance(point_on(road, z[j]), tx, Norm::Euclidean) <= delta) {
      continue;
    }
    const auto [lo, hi] = index_range(z, z[j] - delta, z[j] + delta);
    double best = std::min(same.query(lo, j), same.query(j + 1, hi));
    if (std::abs(z[j]) <= delta) {
      const double reach = std::sqrt(delta * delta - z[j] * z[j]);
      const auto [olo, ohi] = index_range(z_other, -reach, reach);
      best = std::min(best, other.query(olo, ohi));
    }
    keep[j] = mark[j] < best ? 1 : 0;
  }
}

}  // namespace

void matern2_mask(std::span<const double> z_h, std::span<const double> mark_h, std::span<const double> z_v,
                  std::span<const double> mark_v, Position tx, double delta, std::vector<char>& keep_h,
                  std::vector<char>& keep_v) {
  MinTable th;
  MinTable tv;
  th.build(mark_h);
  tv.build(mark_v);
  mask_road(Road::H, z_h, mark_h, th, z_v, tv, tx, delta, keep_h);
  mask_road(Road::V, z_v, mark_v, tv, z_h, th, tx, delta, keep_v);
}

std::vector<Position> sample_road(Road road, double lambda, double window, SeededStream& rng) {
  std::vector<double> z;
  if (lambda > 0.0) {
    for (const double sign : {1.0, -1.0}) {
      double pos = 0.0;
      for (;;) {
        pos += rng.exponential(1.0 / lambda);
        if (pos > window) {
          break;
        }
        z.push_back(sign * pos);
      }
    }
  }
  std::sort(z.begin(), z.end());
  std::vector<Position> out;
  out.reserve(z.size());
  for (double c : z) {
    out.push_back(point_on(road, c));
  }
  return out;
}

std::vector<Position> thin_aloha(const std::vector<Position>& points, double p, SeededStream& rng) {
  std::vector<Position> out;
  for (const auto& pt : points) {
    if (rng.uniform() < p) {
      out.push_back(pt);
    }
  }
  return out;
}

RoadPoints thin_csma_matern2(const std::vector<Position>& points_h, const std::vector<Position>& points_v,
                             Position tx, double delta, SeededStream& rng) {
  struct Marked {
    double z;
    double mark;
  };
  const auto marked = [&](const std::vector<Position>& pts, Road road) {
    std::vector<Marked> m;
    m.reserve(pts.size());
    for (const auto& p : pts) {
      m.push_back({road == Road::H ? p.x : p.y, rng.uniform()});
    }
    std::sort(m.begin(), m.end(), [](const Marked& a, const Marked& b) { return a.z < b.z; });
    return m;
  };
  const auto mh = marked(points_h, Road::H);
  const auto mv = marked(points_v, Road::V);
  const auto split = [](const std::vector<Marked>& m, std::vector<double>& z, std::vector<double>& mark) {
    for (const auto& e : m) {
      z.push_back(e.z);
      mark.push_back(e.mark);
    }
  };
  std::vector<double> zh, markh, zv, markv;
  split(mh, zh, markh);
  split(mv, zv, markv);
  std::vector<char> keep_h, keep_v;
  matern2_mask(zh, markh, zv, markv, tx, delta, keep_h, keep_v);
  RoadPoints out;
  for (std::size_t i = 0; i < zh.size(); ++i) {
    if (keep_h[i]) {
      out.h.push_back(point_on(Road::H, zh[i]));
    }
  }
  for (std::size_t i = 0; i < zv.size(); ++i) {
    if (keep_v[i]) {
      out.v.push_back(point_on(Road::V, zv[i]));
    }
  }
  return out;
}

namespace {

double interferer_gain(const PathLossSpec& loss, Road road, double z, double rx_x) {
  if (road == Road::H) {
    return path_loss_at(loss, std::abs(z - rx_x));
  }
  if (loss.norm == Norm::Manhattan) {
    return path_loss_at(loss, std::abs(rx_x) + std::abs(z));
  }
  if (loss.alpha == 2.0) {
    return loss.amplitude / (rx_x * rx_x + z * z);
  }
  return path_loss_at(loss, std::hypot(rx_x, z));
}

}  // namespace

double far_field_interference(const Scenario& scenario, Road road, Position rx, double window,
                              double intensity) {
  if (intensity == 0.0) {
    return 0.0;
  }
  const PathLossSpec& loss = scenario.loss(road);
  const auto tail = [&](double sign) {
    const numerics::Function f = [&](double z) { return interferer_gain(loss, road, sign * z, rx.x); };
    return numerics::integrate_line(f, numerics::LineDomain::half_from(window)).value;
  };
  return intensity * scenario.fading(road).mean() * (tail(1.0) + tail(-1.0));
}

namespace {

struct RoadDraw {
  std::vector<double> z;
  std::vector<double> fade;
  std::vector<double> mark;

  void clear() {
    z.clear();
    fade.clear();
    mark.clear();
  }
};

// Points are generated outward from the intersection, each consuming its gap,
// fading and mark in turn, so a larger window extends the same realization.
void draw_road(double mu, double limit, const FadingSpec& fading, bool marks, SeededStream pos_rng,
               SeededStream neg_rng, RoadDraw& out) {
  out.clear();
  if (mu <= 0.0) {
    return;
  }
  const auto walk = [&](SeededStream& rng, double sign) {
    double pos = 0.0;
    for (;;) {
      pos += rng.exponential(1.0 / mu);
      if (pos > limit) {
        return;
      }
      out.z.push_back(sign * pos);
      out.fade.push_back(fading_sample(fading, rng));
      if (marks) {
        out.mark.push_back(rng.uniform());
      }
    }
  };
  walk(neg_rng, -1.0);
  std::reverse(out.z.begin(), out.z.end());
  std::reverse(out.fade.begin(), out.fade.end());
  std::reverse(out.mark.begin(), out.mark.end());
  walk(pos_rng, 1.0);
}

struct LinkPlan {
  double rx_x;
  double useful_gain;
  double beta;
  double floor;  // N / P plus the far-field mean
};

struct Group {
  Position tx;
  std::vector<std::size_t> links;
};

class Simulation {
 public:
  Simulation(const Scenario& scenario, std::span<const LinkSpec> links, const SimSettings& settings)
      : scenario_(scenario), settings_(settings) {
    if (settings.realizations < 1) {
      throw InvalidArgument("realizations must be >= 1");
    }
    if (settings.workers < 1) {
      throw InvalidArgument("workers must be >= 1");
    }
    double min_window = 0.0;
    for (double lambda : {scenario.roads.lambda_h, scenario.roads.lambda_v}) {
      if (lambda > 0.0) {
        min_window = std::max(min_window, 10.0 / lambda);
      }
    }
    if (!(settings.window_half_length >= min_window)) {
      throw InvalidArgument("window half-length must be at least 10 mean inter-vehicle distances");
    }

    csma_ = std::get_if<Csma>(&scenario.mac) != nullptr;
    window_ = settings.window_half_length;
    double mu_h = 0.0;
    double mu_v = 0.0;
    if (const auto* aloha = std::get_if<Aloha>(&scenario.mac)) {
      mu_h = aloha->p * scenario.roads.lambda_h;
      mu_v = aloha->p * scenario.roads.lambda_v;
      draw_mu_h_ = mu_h;
      draw_mu_v_ = mu_v;
    } else if (csma_) {
      delta_ = std::get<Csma>(scenario.mac).delta;
      for (const auto& link : links) {
        window_ = std::max(window_, norm2(link.tx) + delta_);
      }
      draw_mu_h_ = scenario.roads.lambda_h;
      draw_mu_v_ = scenario.roads.lambda_v;
      // Far from the intersection and the transmitter every node contends
      // with 2 delta lambda_R others on average.
      mu_h = scenario.roads.lambda_h * access_probability_from_mass(2.0 * delta_ * scenario.roads.lambda_h);
      mu_v = scenario.roads.lambda_v * access_probability_from_mass(2.0 * delta_ * scenario.roads.lambda_v);
    }
    draw_limit_ = csma_ ? window_ + delta_ : window_;

    for (std::size_t i = 0; i < links.size(); ++i) {
      const LinkSpec& link = links[i];
      require_valid(scenario, link);
      if (!(std::abs(link.rx.x) < window_)) {
        throw InvalidArgument("receiver lies outside the simulation window");
      }
      double floor = link.noise_over_power();
      if (settings.far_field_compensation) {
        floor += far_field_interference(scenario, Road::H, link.rx, window_, mu_h) +
                 far_field_interference(scenario, Road::V, link.rx, window_, mu_v);
      }
      plans_.push_back({link.rx.x, path_loss(scenario.loss_useful, link.tx, link.rx), link.beta, floor});

      const Position tx = csma_ ? link.tx : Position{};
      auto it = std::find_if(groups_.begin(), groups_.end(), [&](const Group& g) { return g.tx == tx; });
      if (it == groups_.end()) {
        groups_.push_back({tx, {}});
        it = groups_.end() - 1;
      }
      it->links.push_back(i);
    }
  }

  std::vector<std::uint64_t> run() const {
    const std::uint64_t n = settings_.realizations;
    const auto workers = static_cast<std::uint64_t>(std::min<std::uint64_t>(settings_.workers, n));
    std::vector<std::vector<std::uint64_t>> partial(workers);
    const auto chunk = [&](std::uint64_t w) {
      const std::uint64_t begin = n * w / workers;
      const std::uint64_t end = n * (w + 1) / workers;
      partial[w] = run_range(begin, end);
    };
    if (workers == 1) {
      chunk(0);
    } else {
      std::vector<std::thread> threads;
      for (std::uint64_t w = 0; w < workers; ++w) {
        threads.emplace_back(chunk, w);
      }
      for (auto& t : threads) {
        t.join();
      }
    }
    std::vector<std::uint64_t> total(plans_.size(), 0);
    for (const auto& p : partial) {
      for (std::size_t i = 0; i < total.size(); ++i) {
        total[i] += p[i];
      }
    }
    return total;
  }

 private:
  std::vector<std::uint64_t> run_range(std::uint64_t begin, std::uint64_t end) const {
    std::vector<std::uint64_t> successes(plans_.size(), 0);
    RoadDraw h;
    RoadDraw v;
    std::vector<char> keep_h;
    std::vector<char> keep_v;
    const std::uint64_t seed = settings_.seed;
    for (std::uint64_t r = begin; r < end; ++r) {
      SeededStream useful = SeededStream::derive(seed, r, kTagUseful);
      const double s0 = fading_sample(scenario_.fading_useful, useful);
      draw_road(draw_mu_h_, draw_limit_, scenario_.fading_h, csma_, SeededStream::derive(seed, r, kTagHPos),
                SeededStream::derive(seed, r, kTagHNeg), h);
      draw_road(draw_mu_v_, draw_limit_, scenario_.fading_v, csma_, SeededStream::derive(seed, r, kTagVPos),
                SeededStream::derive(seed, r, kTagVNeg), v);
      for (const Group& g : groups_) {
        if (csma_) {
          matern2_mask(h.z, h.mark, v.z, v.mark, g.tx, delta_, keep_h, keep_v);
        } else {
          keep_h.assign(h.z.size(), 1);
          keep_v.assign(v.z.size(), 1);
        }
        for (std::size_t idx : g.links) {
          const LinkPlan& plan = plans_[idx];
          double interference = 0.0;
          accumulate(Road::H, h, keep_h, plan.rx_x, interference);
          accumulate(Road::V, v, keep_v, plan.rx_x, interference);
          if (s0 * plan.useful_gain >= plan.beta * (interference + plan.floor)) {
            ++successes[idx];
          }
        }
      }
    }
    return successes;
  }

  void accumulate(Road road, const RoadDraw& d, const std::vector<char>& keep, double rx_x, double& sum) const {
    const PathLossSpec& loss = scenario_.loss(road);
    for (std::size_t j = 0; j < d.z.size(); ++j) {
      if (keep[j] && std::abs(d.z[j]) <= window_) {
        sum += d.fade[j] * interferer_gain(loss, road, d.z[j], rx_x);
      }
    }
  }

  const Scenario& scenario_;
  SimSettings settings_;
  bool csma_ = false;
  double delta_ = 0.0;
  double window_ = 0.0;
  double draw_limit_ = 0.0;
  double draw_mu_h_ = 0.0;
  double draw_mu_v_ = 0.0;
  std::vector<LinkPlan> plans_;
  std::vector<Group> groups_;
};

}  // namespace

std::vector<OutageEstimate> simulate_outage(const Scenario& scenario, std::span<const LinkSpec> links,
                                            const SimSettings& settings) {
  if (links.empty()) {
    return {};
  }
  const Simulation sim(scenario, links, settings);
  const auto successes = sim.run();
  std::vector<OutageEstimate> out;
  const double n = static_cast<double>(settings.realizations);
  for (std::uint64_t s : successes) {
    const double p = 1.0 - static_cast<double>(s) / n;
    out.push_back({p, std::sqrt(p * (1.0 - p) / n), settings.realizations});
  }
  return out;
}

OutageEstimate simulate_outage(const Scenario& scenario, const LinkSpec& link, const SimSettings& settings) {
  return simulate_outage(scenario, std::span<const LinkSpec>(&link, 1), settings).front();
}

ThroughputEstimate simulate_throughput(const Scenario& scenario, const LinkSpec& link,
                                       const SimSettings& settings) {
  ThroughputEstimate est;
  est.p_access = transmit_probability(scenario, link.tx);
  est.outage = simulate_outage(scenario, link, settings);
  const double scale = est.p_access * spectral_efficiency(link.beta);
  est.throughput = scale * (1.0 - est.outage.p_out);
  est.std_err = scale * est.outage.std_err;
  return est;
}

}  // namespace xroads
