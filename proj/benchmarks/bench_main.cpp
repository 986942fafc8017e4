#include <benchmark/benchmark.h>

#include <cmath>

#include "xroads/analytic.hpp"
#include "xroads/mac.hpp"
#include "xroads/montecarlo.hpp"
#include "xroads/numerics.hpp"

using namespace xroads;

namespace {

Scenario rural(double p) {
  Scenario s;
  s.roads = {0.01, 0.01};
  s.mac = Aloha{p};
  s.loss_useful = s.loss_h = s.loss_v = {Norm::Euclidean, 3e-5, 2.0};
  return s;
}

Scenario urban(double p) {
  Scenario s = rural(p);
  s.loss_useful = s.loss_v = {Norm::Manhattan, 3e-5, 2.0};
  s.fading_useful = s.fading_v = FadingSpec::erlang(2, 0.66);
  return s;
}

Scenario csma(double delta) {
  Scenario s = rural(0.0);
  s.mac = Csma{delta};
  return s;
}

LinkSpec make_link(Position tx, Position rx) { return {tx, rx, 0.1, dbm_to_watts(-99.0), db_to_linear(8.0)}; }

void BM_Hyp2f1(benchmark::State& state) {
  const double z = -double(state.range(0)) / 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(numerics::hyp2f1_regularized(0.5, 2.5, 1.5, z));
  }
}
BENCHMARK(BM_Hyp2f1)->Arg(1)->Arg(8)->Arg(50);

void BM_IntegrateLineAlgebraicTail(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        numerics::integrate_line([](double u) { return 1.0 / (1.0 + std::pow(std::abs(u), 1.5)); },
                                 numerics::LineDomain::full())
            .value);
  }
}
BENCHMARK(BM_IntegrateLineAlgebraicTail);

void BM_DerivativeN(benchmark::State& state) {
  const int n = int(state.range(0));
  const numerics::Function f = [](double s) { return std::exp(-2e-5 * std::sqrt(s)); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(numerics::derivative_n(f, 1e8, n));
  }
}
BENCHMARK(BM_DerivativeN)->DenseRange(1, 4);

void BM_ReceptionRural(benchmark::State& state) {
  const auto s = rural(0.005);
  const auto l = make_link({100, 0}, {0, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(reception_rural(s, l));
  }
}
BENCHMARK(BM_ReceptionRural);

void BM_ReceptionUrban(benchmark::State& state) {
  const auto s = urban(0.02);
  const auto l = make_link({0, 100}, {50, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(reception_urban(s, l));
  }
}
BENCHMARK(BM_ReceptionUrban);

void BM_ReceptionCsma(benchmark::State& state) {
  const auto s = csma(double(state.range(0)));
  const auto l = make_link({0, 150}, {200, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(reception_csma(s, l));
  }
}
BENCHMARK(BM_ReceptionCsma)->Arg(500)->Arg(10000);

void BM_ReceptionGeneric(benchmark::State& state) {
  const auto s = urban(0.02);
  const auto l = make_link({0, 100}, {50, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(reception_generic(s, l));
  }
}
BENCHMARK(BM_ReceptionGeneric)->Unit(benchmark::kMillisecond);

void BM_OptimizeAccessCsma(benchmark::State& state) {
  const auto s = csma(500);
  const auto l = make_link({0, 0}, {-100, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_access(s, l, 0.1).p_access);
  }
}
BENCHMARK(BM_OptimizeAccessCsma)->Unit(benchmark::kMillisecond);

void BM_SimulateRural(benchmark::State& state) {
  const auto s = rural(0.1);
  const auto l = make_link({100, 0}, {0, 0});
  SimSettings set;
  set.realizations = 1000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_outage(s, l, set).p_out);
  }
  state.SetItemsProcessed(state.iterations() * set.realizations);
}
BENCHMARK(BM_SimulateRural)->Unit(benchmark::kMillisecond);

void BM_SimulateCsma(benchmark::State& state) {
  const auto s = csma(500);
  const auto l = make_link({0, 150}, {200, 0});
  SimSettings set;
  set.realizations = 1000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_outage(s, l, set).p_out);
  }
  state.SetItemsProcessed(state.iterations() * set.realizations);
}
BENCHMARK(BM_SimulateCsma)->Unit(benchmark::kMillisecond);

void BM_Matern2Thinning(benchmark::State& state) {
  SeededStream rng(1);
  const auto h = sample_road(Road::H, 0.01, 20000, rng);
  const auto v = sample_road(Road::V, 0.01, 20000, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(thin_csma_matern2(h, v, {0, 150}, double(state.range(0)), rng).h.size());
  }
}
BENCHMARK(BM_Matern2Thinning)->Arg(500)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
