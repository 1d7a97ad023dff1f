// Seeded generators for four stochastic test systems with a known time lag.
//
//   1  gaussian_shift  X_i = xi1,              Y_{i+l} = X_i + xi2
//   2  sine_shift      X_i = sin(2 pi i/m)+xi1, Y_{i+l} = X_i + xi2
//   3  wiener_shift    X_i = X_{i-1} + xi1,    Y_{i+l} = X_i + xi2
//   4  delayed_ar      X_i = a X_{i-1} + b X_{i-l} + xi1     (state only)
//
// xi_j ~ N(mu_j, delta_j) with delta the *variance*. Noise source j draws
// from RNG substream j of the spec seed. For systems 1-3 the output is
// defined on indices l+1..m+l, so both series are cropped to the common
// index range l+1..m and returned with length m - l. System 4 seeds the
// first max(1, l) values from the noise stream and discards a 100-sample
// warmup before returning m values.
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "telag/errors.hpp"
#include "telag/rng.hpp"

namespace telag {

enum class SystemId : int {
  gaussian_shift = 1,
  sine_shift = 2,
  wiener_shift = 3,
  delayed_ar = 4,
};

inline constexpr std::size_t kDelayedArWarmup = 100;

struct SimulatorSpec {
  SystemId system = SystemId::gaussian_shift;
  std::size_t lag = 1;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double delta1 = 0.001;  // variances
  double delta2 = 0.001;
  double alpha = 0.2;  // delayed_ar only
  double beta = 0.8;   // delayed_ar only
  std::size_t length = 500;
  std::uint64_t seed = 0;

  void validate() const {
    if (lag < 1) throw ConfigError("simulator lag must be >= 1");
    if (!(delta1 >= 0.0) || !(delta2 >= 0.0))
      throw ConfigError("noise variances must be >= 0");
    const std::size_t warmup = system == SystemId::delayed_ar ? kDelayedArWarmup : 0;
    if (length <= lag + warmup)
      throw ConfigError("simulated length must exceed lag + warmup (" +
                        std::to_string(lag + warmup) + "), got " + std::to_string(length));
  }
};

struct Trajectory {
  std::vector<double> state;   // X
  std::vector<double> output;  // Y; empty for delayed_ar
  std::size_t true_lag = 0;
  std::vector<std::string> warnings;
};

namespace detail {

struct NoiseStreams {
  GaussianSampler xi1;
  GaussianSampler xi2;
  explicit NoiseStreams(std::uint64_t seed)
      : xi1(Xoshiro256pp::substream(seed, 0)), xi2(Xoshiro256pp::substream(seed, 1)) {}
};

// Crops state (defined on 1..m) and output (defined on l+1..m+l) to the
// common index range l+1..m.
inline Trajectory crop_output_delay(const std::vector<double>& state_full,
                                    const std::vector<double>& output_full, std::size_t lag) {
  const std::size_t m = state_full.size();
  Trajectory tr;
  tr.true_lag = lag;
  tr.state.assign(state_full.begin() + static_cast<std::ptrdiff_t>(lag), state_full.end());
  // output_full[i] holds Y_{i+1+l} = X_{i+1} + xi2, i.e. Y on indices l+1..m+l;
  // the first m - l of them are the in-range samples Y_{l+1}..Y_m.
  tr.output.assign(output_full.begin(),
                   output_full.begin() + static_cast<std::ptrdiff_t>(m - lag));
  return tr;
}

}  // namespace detail

inline Trajectory simulate_system1(const SimulatorSpec& spec) {
  spec.validate();
  const std::size_t m = spec.length;
  detail::NoiseStreams noise(spec.seed);
  const double s1 = std::sqrt(spec.delta1), s2 = std::sqrt(spec.delta2);
  std::vector<double> x(m), y(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = noise.xi1.next(spec.mu1, s1);
  for (std::size_t i = 0; i < m; ++i) y[i] = x[i] + noise.xi2.next(spec.mu2, s2);
  return detail::crop_output_delay(x, y, spec.lag);
}

inline Trajectory simulate_system2(const SimulatorSpec& spec) {
  spec.validate();
  const std::size_t m = spec.length;
  detail::NoiseStreams noise(spec.seed);
  const double s1 = std::sqrt(spec.delta1), s2 = std::sqrt(spec.delta2);
  std::vector<double> x(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double phase = 2.0 * M_PI * static_cast<double>(i + 1) / static_cast<double>(m);
    x[i] = std::sin(phase) + noise.xi1.next(spec.mu1, s1);
  }
  for (std::size_t i = 0; i < m; ++i) y[i] = x[i] + noise.xi2.next(spec.mu2, s2);
  return detail::crop_output_delay(x, y, spec.lag);
}

inline Trajectory simulate_system3(const SimulatorSpec& spec) {
  spec.validate();
  const std::size_t m = spec.length;
  detail::NoiseStreams noise(spec.seed);
  const double s1 = std::sqrt(spec.delta1), s2 = std::sqrt(spec.delta2);
  std::vector<double> x(m), y(m);
  double prev = 0.0;  // X_0
  for (std::size_t i = 0; i < m; ++i) {
    prev += noise.xi1.next(spec.mu1, s1);
    x[i] = prev;
  }
  for (std::size_t i = 0; i < m; ++i) y[i] = x[i] + noise.xi2.next(spec.mu2, s2);
  return detail::crop_output_delay(x, y, spec.lag);
}

inline Trajectory simulate_system4(const SimulatorSpec& spec) {
  spec.validate();
  const std::size_t m = spec.length;
  const std::size_t total = m + kDelayedArWarmup;
  detail::NoiseStreams noise(spec.seed);
  const double s1 = std::sqrt(spec.delta1);
  const std::size_t init = std::max<std::size_t>(1, spec.lag);
  std::vector<double> x(total);
  for (std::size_t i = 0; i < init; ++i) x[i] = noise.xi1.next(spec.mu1, s1);
  for (std::size_t i = init; i < total; ++i)
    x[i] = spec.alpha * x[i - 1] + spec.beta * x[i - spec.lag] + noise.xi1.next(spec.mu1, s1);
  Trajectory tr;
  tr.true_lag = spec.lag;
  tr.state.assign(x.begin() + kDelayedArWarmup, x.end());
  if (std::fabs(spec.alpha) + std::fabs(spec.beta) >= 1.0)
    tr.warnings.push_back("|alpha| + |beta| >= 1: the state recursion is not stationary");
  return tr;
}

inline Trajectory simulate(const SimulatorSpec& spec) {
  switch (spec.system) {
    case SystemId::gaussian_shift: return simulate_system1(spec);
    case SystemId::sine_shift: return simulate_system2(spec);
    case SystemId::wiener_shift: return simulate_system3(spec);
    case SystemId::delayed_ar: return simulate_system4(spec);
  }
  throw ConfigError("unknown system id");
}

inline SystemId system_from_int(int id) {
  if (id < 1 || id > 4)
    throw ConfigError("system must be 1, 2, 3, or 4; got " + std::to_string(id));
  return static_cast<SystemId>(id);
}

}  // namespace telag
