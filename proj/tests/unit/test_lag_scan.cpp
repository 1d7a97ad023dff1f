#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <utility>
#include <vector>

#include "support/test_support.hpp"
#include "telag/lag_scan.hpp"
#include "telag/repro.hpp"
#include "telag/simulators.hpp"

using namespace telag;

TEST_CASE("identify_lag picks the smallest lag attaining the maximum") {
  using Entry = std::pair<std::size_t, double>;
  const std::vector<Entry> peaked{{1, 0.1}, {2, 0.9}, {3, 0.2}};
  REQUIRE(identify_lag(peaked).lag == 2);

  const std::vector<Entry> tied{{1, 0.5}, {2, 0.5}};
  REQUIRE(identify_lag(tied).lag == 1);

  const std::vector<Entry> negative{{1, -0.02}, {2, -0.01}};
  REQUIRE(identify_lag(negative).lag == 2);

  const std::vector<Entry> flat{{3, 0.25}, {4, 0.25}, {5, 0.25}};
  REQUIRE(identify_lag(flat).lag == 3);

  const std::vector<Entry> empty;
  REQUIRE_THROWS_AS(identify_lag(empty), InvalidInputError);
}

TEST_CASE("scan recovers the lag of a shifted gaussian system") {
  SimulatorSpec spec;
  spec.system = SystemId::gaussian_shift;
  spec.lag = 2;
  spec.seed = repro_seed(1, 2);
  const Trajectory tr = simulate(spec);
  LagScanConfig cfg;
  const TeCurve curve = scan_lags(tr.state, tr.output, cfg);
  REQUIRE(curve.entries.size() == 8);
  REQUIRE(curve.identified_lag == 2);
}

TEST_CASE("self scan recovers the delayed-state lag") {
  for (const std::size_t true_lag : {1, 3, 4}) {
    SimulatorSpec spec;
    spec.system = SystemId::delayed_ar;
    spec.lag = true_lag;
    spec.seed = repro_seed(4, true_lag);
    const Trajectory tr = simulate(spec);
    LagScanConfig cfg;
    const TeCurve curve = self_scan(tr.state, cfg);
    REQUIRE(curve.identified_lag == true_lag);
  }
}

TEST_CASE("the sine system's curve stays elevated off-peak, the gaussian one's does not") {
  for (const std::uint64_t seed : {101, 102, 103}) {
    SimulatorSpec spec;
    spec.lag = 3;
    spec.seed = seed;
    LagScanConfig scan;

    spec.system = SystemId::sine_shift;
    const Trajectory sine = simulate(spec);
    const TeCurve sine_curve = scan_lags(sine.state, sine.output, scan);
    REQUIRE(sine_curve.identified_lag == 3);
    for (const auto& [lag, te] : sine_curve.entries) REQUIRE(te > 0.15);

    spec.system = SystemId::gaussian_shift;
    const Trajectory gauss = simulate(spec);
    const TeCurve gauss_curve = scan_lags(gauss.state, gauss.output, scan);
    REQUIRE(gauss_curve.identified_lag == 3);
    for (const auto& [lag, te] : gauss_curve.entries)
      if (lag >= 6) REQUIRE(std::fabs(te) < 0.15);
  }
}

TEST_CASE("white-noise self scan has no meaningful peak") {
  for (std::uint64_t seed = 600; seed < 605; ++seed) {
    const auto x = ts::gaussian_series(seed, 2000);
    LagScanConfig cfg;
    const TeCurve curve = self_scan(x, cfg);
    REQUIRE(curve.max_te <= 0.05);
  }
}

TEST_CASE("scan entries equal individually estimated lags") {
  const auto x = ts::gaussian_series(40, 400, 0.0, 1.0, 0);
  const auto y = ts::gaussian_series(40, 400, 0.0, 1.0, 1);
  LagScanConfig cfg;
  cfg.lag_min = 2;
  cfg.lag_max = 6;
  const TeCurve curve = scan_lags(x, y, cfg);
  REQUIRE(curve.entries.size() == 5);
  for (const auto& [lag, te] : curve.entries)
    REQUIRE(te == transfer_entropy(x, y, lag, cfg.history_order, cfg.estimator).value);
}

TEST_CASE("parallel scan equals sequential scan") {
  const auto x = ts::gaussian_series(41, 600, 0.0, 1.0, 0);
  const auto y = ts::gaussian_series(41, 600, 0.0, 1.0, 1);
  LagScanConfig seq;
  LagScanConfig par = seq;
  par.jobs = 4;
  const TeCurve a = scan_lags(x, y, seq);
  const TeCurve b = scan_lags(x, y, par);
  REQUIRE(a.entries == b.entries);
  REQUIRE(a.identified_lag == b.identified_lag);
  REQUIRE(a.max_te == b.max_te);
}

TEST_CASE("the whole curve is invariant under increasing transforms") {
  const auto x = ts::gaussian_series(42, 500, 0.0, 1.0, 0);
  const auto y = ts::gaussian_series(42, 500, 0.0, 1.0, 1);
  std::vector<double> xg(x.size()), yg(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xg[i] = std::exp(x[i]);
    yg[i] = y[i] * std::fabs(y[i]);  // signed square, strictly increasing
  }
  LagScanConfig cfg;
  const TeCurve a = scan_lags(x, y, cfg);
  const TeCurve b = scan_lags(xg, yg, cfg);
  REQUIRE(a.entries == b.entries);
  REQUIRE(a.identified_lag == b.identified_lag);
}

TEST_CASE("curve length always covers the lag range") {
  const auto x = ts::gaussian_series(43, 200, 0.0, 1.0, 0);
  const auto y = ts::gaussian_series(43, 200, 0.0, 1.0, 1);
  for (std::size_t lo = 1; lo <= 3; ++lo)
    for (std::size_t hi = lo; hi <= lo + 5; ++hi) {
      LagScanConfig cfg;
      cfg.lag_min = lo;
      cfg.lag_max = hi;
      REQUIRE(scan_lags(x, y, cfg).entries.size() == hi - lo + 1);
    }
}

TEST_CASE("a failing lag aborts the scan naming the lag") {
  const std::vector<double> flat(64, 1.0);
  const auto y = ts::gaussian_series(44, 64);
  LagScanConfig cfg;
  cfg.lag_max = 2;
  REQUIRE_THROWS_MATCHES(
      scan_lags(flat, y, cfg), DegenerateSampleError,
      Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("lag 1")));
}

TEST_CASE("direction y_to_x swaps the roles") {
  const auto x = ts::gaussian_series(45, 300, 0.0, 1.0, 0);
  const auto y = ts::gaussian_series(45, 300, 0.0, 1.0, 1);
  LagScanConfig forward;
  LagScanConfig reversed;
  reversed.direction = Direction::y_to_x;
  REQUIRE(scan_lags(x, y, reversed).entries == scan_lags(y, x, forward).entries);

  const BidirectionalScan both = scan_both(x, y, forward);
  REQUIRE(both.forward.entries == scan_lags(x, y, forward).entries);
  REQUIRE(both.backward.entries == scan_lags(y, x, forward).entries);
}

TEST_CASE("scan validates the lag range against the series length") {
  const auto x = ts::gaussian_series(46, 20, 0.0, 1.0, 0);
  const auto y = ts::gaussian_series(46, 20, 0.0, 1.0, 1);
  LagScanConfig cfg;
  cfg.lag_max = 18;
  REQUIRE_THROWS_AS(scan_lags(x, y, cfg), ConfigError);
  cfg.lag_max = 0;
  REQUIRE_THROWS_AS(scan_lags(x, y, cfg), ConfigError);
}
