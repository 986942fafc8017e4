#include <doctest.h>

#include <cmath>
#include <vector>

#include "support/fixtures.hpp"
#include "xroads/errors.hpp"
#include "xroads/mac.hpp"
#include "xroads/montecarlo.hpp"

using namespace xroads;
using namespace xroads::testing;

namespace {

double bin_mass(const IntensityFn& f, double a, double b) {
  const int m = 400;
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    sum += f(a + (i + 0.5) * (b - a) / m);
  }
  return sum * (b - a) / m;
}

}  // namespace

TEST_SUITE("mac") {
  TEST_CASE("Aloha intensity") {
    CHECK(aloha_intensity(Road::H, rural(0.005), {0, 0})(123.0) == doctest::Approx(5e-5));
    CHECK(aloha_intensity(Road::V, rural(0.0), {0, 0})(-7.0) == 0.0);
    CHECK(aloha_intensity(Road::V, rural(1.0), {0, 0})(-7.0) == kLambda);
    CHECK_THROWS_AS(aloha_intensity(Road::H, csma(500), {0, 0}), WrongMac);
    CHECK_THROWS_AS(csma_intensity(Road::H, rural(0.1), {0, 0}), WrongMac);
  }

  TEST_CASE("contention mass examples") {
    const RoadConfig roads{kLambda, kLambda};
    CHECK(contention_mass({600, 0}, 500, roads) == doctest::Approx(10.0));
    CHECK(contention_mass({0, 0}, 500, roads) == doctest::Approx(20.0));
    CHECK(contention_mass({300, 0}, 500, roads) == doctest::Approx(18.0));
    CHECK(contention_mass({0, -300}, 500, RoadConfig{0.02, 0.01}) == doctest::Approx(10.0 + 16.0));
    CHECK_THROWS_AS(contention_mass({3, 4}, 500, roads), OffRoadPosition);
  }

  TEST_CASE("contention mass equals the mean count in the disc") {
    const RoadConfig roads{kLambda, kLambda};
    const Position z{300, 0};
    const double delta = 500;
    const int n = 100000;
    double sum = 0.0;
    double sum2 = 0.0;
    for (int r = 0; r < n; ++r) {
      auto rng = SeededStream::derive(17, r);
      int count = 0;
      for (Road road : {Road::H, Road::V}) {
        for (const auto& p : sample_road(road, kLambda, 1000.0, rng)) {
          count += distance(p, z, Norm::Euclidean) <= delta ? 1 : 0;
        }
      }
      sum += count;
      sum2 += double(count) * count;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::abs(mean - contention_mass(z, delta, roads)) < 3.0 * se);
  }

  TEST_CASE("access probability") {
    const RoadConfig roads{kLambda, kLambda};
    CHECK(access_probability({5000, 0}, 500, roads) == doctest::Approx((1 - std::exp(-10.0)) / 10.0));
    CHECK(access_probability({5000, 0}, 500, roads) == doctest::Approx(0.1).epsilon(1e-3));
    CHECK(access_probability({0, 50000}, 10000, roads) == doctest::Approx(0.005).epsilon(1e-9));
    CHECK(access_probability_from_mass(0.0) == 1.0);
    CHECK(access_probability_from_mass(1e-10) == doctest::Approx(1.0 - 0.5e-10).epsilon(1e-15));
    CHECK(access_probability_from_mass(1e-7) == doctest::Approx(-std::expm1(-1e-7) / 1e-7).epsilon(1e-14));
    double prev = 1.0;
    for (double m = 1e-9; m < 1e4; m *= 1.7) {
      const double p = access_probability_from_mass(m);
      CHECK(p <= prev);
      prev = p;
    }
  }

  TEST_CASE("CSMA intensity examples") {
    const auto s = csma(500);
    CHECK(csma_intensity(Road::H, s, {0, 0})(200.0) == 0.0);
    CHECK(csma_intensity(Road::H, s, {0, 0})(800.0) == doctest::Approx((1 - std::exp(-10.0)) / 1000.0));
    CHECK(csma_intensity(Road::H, s, {0, 150})(400.0) == 0.0);
    // Just outside the tx disc but still coupled to road V.
    const double z = 480.0;
    const double expect = access_probability({z, 0}, 500, s.roads) * kLambda;
    CHECK(csma_intensity(Road::H, s, {0, 150})(z) == doctest::Approx(expect));
  }

  TEST_CASE("CSMA intensity bounds and limits") {
    for (double delta : {50.0, 500.0, 10000.0}) {
      const auto s = csma(delta);
      for (Position tx : {Position{0, 0}, Position{0, 150}, Position{-100, 0}}) {
        for (Road road : {Road::H, Road::V}) {
          const auto f = csma_intensity(road, s, tx);
          for (double z = -3.0 * delta; z <= 3.0 * delta; z += delta / 37.0) {
            const double v = f(z);
            CHECK(v >= 0.0);
            CHECK(v <= kLambda);
            if (distance(point_on(road, z), tx, Norm::Euclidean) <= delta) {
              CHECK(v == 0.0);
            }
          }
          const double far = 50.0 * delta;
          CHECK(f(far) == doctest::Approx(access_probability_from_mass(2 * delta * kLambda) * kLambda));
        }
      }
    }
    const auto tiny = csma(1e-6);
    for (double z : {-300.0, -1.0, 2.0, 40.0}) {
      CHECK(csma_intensity(Road::H, tiny, {0, 150})(z) == doctest::Approx(kLambda).epsilon(1e-7));
    }
  }

  TEST_CASE("delta for a target access probability") {
    const RoadConfig roads{kLambda, kLambda};
    for (Position tx : {Position{0, 0}, Position{100, 0}, Position{0, -900}}) {
      for (double p : {0.005, 0.023, 0.1, 0.5}) {
        const double delta = csma_delta_for_access(p, tx, roads);
        CHECK(access_probability(tx, delta, roads) == doctest::Approx(p).epsilon(1e-9));
      }
    }
    const auto s = with_access_probability(csma(500), {100, 0}, 0.023);
    CHECK(transmit_probability(s, {100, 0}) == doctest::Approx(0.023).epsilon(1e-9));
    CHECK(std::get<Aloha>(with_access_probability(rural(0.1), {100, 0}, 0.023).mac).p == 0.023);
    CHECK(transmit_probability(Scenario{}, {1, 0}) == 1.0);
  }

  TEST_CASE("Matern II retained intensity matches the CSMA intensity") {
    const auto s = csma(500);
    const Position tx{0, 150};
    const int realizations = 100000;
    const double lo = -1500.0;
    const double hi = 1500.0;
    const int bins = 20;
    const double width = (hi - lo) / bins;
    std::vector<double> count_h(bins, 0.0);
    std::vector<double> count_v(bins, 0.0);
    for (int r = 0; r < realizations; ++r) {
      auto rng = SeededStream::derive(99, r);
      const auto h = sample_road(Road::H, kLambda, 2500.0, rng);
      const auto v = sample_road(Road::V, kLambda, 2500.0, rng);
      const auto kept = thin_csma_matern2(h, v, tx, 500.0, rng);
      for (const auto& p : kept.h) {
        if (p.x >= lo && p.x < hi) {
          count_h[int((p.x - lo) / width)] += 1;
        }
      }
      for (const auto& p : kept.v) {
        if (p.y >= lo && p.y < hi) {
          count_v[int((p.y - lo) / width)] += 1;
        }
      }
    }
    const auto fh = csma_intensity(Road::H, s, tx);
    const auto fv = csma_intensity(Road::V, s, tx);
    for (int b = 0; b < bins; ++b) {
      const double a = lo + b * width;
      for (auto [f, counts] : {std::pair{&fh, &count_h}, std::pair{&fv, &count_v}}) {
        const double expect = bin_mass(*f, a, a + width) * realizations;
        const double observed = (*counts)[b];
        // Counts per bin are sums of independent per-realization counts;
        // a Poisson-type standard error is sqrt(expect).
        CAPTURE(a);
        CHECK(std::abs(observed - expect) <= 3.0 * std::sqrt(std::max(expect, 1.0)));
      }
    }
  }
}
