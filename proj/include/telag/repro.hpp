// The fixed reproduction grid: every system x true lag 1..4 simulated with
// published constant seeds, scanned over lags 1..8, identification checked
// against the true lag. Shared by the CLI `repro` subcommand and the
// acceptance suite so both run the identical experiment.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "telag/lag_scan.hpp"
#include "telag/simulators.hpp"

namespace telag {

// Documented in the README; chosen once and never tuned per case.
inline constexpr std::uint64_t kReproSeedBase = 20170001;

inline constexpr std::uint64_t repro_seed(int system, std::size_t true_lag) {
  return kReproSeedBase + static_cast<std::uint64_t>(system) * 100 + true_lag;
}

struct ReproCase {
  SystemId system;
  std::size_t true_lag;
  std::uint64_t seed;
};

struct ReproResult {
  ReproCase c;
  TeCurve curve;
  bool pass = false;
};

inline std::vector<ReproCase> repro_grid(const std::vector<int>& systems) {
  std::vector<ReproCase> grid;
  for (const int s : systems)
    for (std::size_t l = 1; l <= 4; ++l)
      grid.push_back({system_from_int(s), l, repro_seed(s, l)});
  return grid;
}

// Default-parameter simulation (mu 0, variance 0.001, length 500, alpha 0.2,
// beta 0.8) scanned over lags 1..8 with the default estimator.
inline ReproResult run_repro_case(const ReproCase& c, std::size_t jobs = 1) {
  SimulatorSpec spec;
  spec.system = c.system;
  spec.lag = c.true_lag;
  spec.seed = c.seed;
  const Trajectory tr = simulate(spec);
  LagScanConfig scan;
  scan.lag_min = 1;
  scan.lag_max = 8;
  scan.jobs = jobs;
  ReproResult res;
  res.c = c;
  res.curve = c.system == SystemId::delayed_ar ? self_scan(tr.state, scan)
                                               : scan_lags(tr.state, tr.output, scan);
  res.pass = res.curve.identified_lag == c.true_lag;
  return res;
}

}  // namespace telag
