// Scan transfer entropy over candidate lags and identify the lag of maximal
// TE. Per-lag evaluations are independent; a failing lag aborts the scan with
// that lag named.
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "telag/copula_te.hpp"
#include "telag/errors.hpp"
#include "telag/parallel.hpp"

namespace telag {

enum class Direction { x_to_y, y_to_x, both };

struct LagScanConfig {
  std::size_t lag_min = 1;
  std::size_t lag_max = 8;
  std::size_t history_order = 1;
  EstimatorConfig estimator;
  Direction direction = Direction::x_to_y;
  std::size_t jobs = 1;

  void validate() const {
    estimator.validate();
    if (lag_min < 1) throw ConfigError("lag_min must be >= 1");
    if (lag_min > lag_max) throw ConfigError("lag_min must not exceed lag_max");
    if (history_order < 1) throw ConfigError("history order must be >= 1");
  }
};

struct TeCurve {
  std::vector<std::pair<std::size_t, double>> entries;  // ascending lags, nats
  std::size_t identified_lag = 0;
  double max_te = 0.0;
};

struct LagIdentification {
  std::size_t lag = 0;
  double te = 0.0;
};

// Smallest lag attaining the maximal TE value (ties break to the smaller lag).
inline LagIdentification identify_lag(
    std::span<const std::pair<std::size_t, double>> entries) {
  if (entries.empty()) throw InvalidInputError("identify_lag: empty curve");
  LagIdentification best{entries.front().first, entries.front().second};
  for (const auto& [lag, te] : entries) {
    if (te > best.te || (te == best.te && lag < best.lag)) best = {lag, te};
  }
  return best;
}

namespace detail {

template <typename EvalFn>
TeCurve scan_list(const std::vector<std::size_t>& lags, std::size_t jobs, EvalFn&& eval) {
  TeCurve curve;
  curve.entries.resize(lags.size());
  parallel_for(lags.size(), jobs, [&](std::size_t i) {
    const std::size_t lag = lags[i];
    const double te = with_context("lag " + std::to_string(lag),
                                   [&] { return eval(lag).value; });
    curve.entries[i] = {lag, te};
  });
  const LagIdentification id = identify_lag(curve.entries);
  curve.identified_lag = id.lag;
  curve.max_te = id.te;
  return curve;
}

inline std::vector<std::size_t> lag_range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> lags;
  lags.reserve(hi - lo + 1);
  for (std::size_t lag = lo; lag <= hi; ++lag) lags.push_back(lag);
  return lags;
}

}  // namespace detail

// TE of x -> y at each lag in an explicit ascending lag list.
inline TeCurve scan_lag_list(std::span<const double> x, std::span<const double> y,
                             const std::vector<std::size_t>& lags, std::size_t history_order,
                             const EstimatorConfig& estimator, std::size_t jobs = 1) {
  if (lags.empty()) throw ConfigError("lag list is empty");
  for (std::size_t i = 1; i < lags.size(); ++i)
    if (lags[i] <= lags[i - 1]) throw ConfigError("lag list must be strictly ascending");
  return detail::scan_list(lags, jobs, [&](std::size_t lag) {
    return transfer_entropy(x, y, lag, history_order, estimator);
  });
}

inline TeCurve scan_lags(std::span<const double> x, std::span<const double> y,
                         const LagScanConfig& cfg) {
  cfg.validate();
  if (cfg.direction == Direction::both)
    throw ConfigError("scan_lags evaluates a single direction; call scan_both");
  if (x.size() != y.size())
    throw InvalidInputError("scan: series lengths differ (" + std::to_string(x.size()) +
                            " vs " + std::to_string(y.size()) + ")");
  if (x.size() < cfg.lag_max + cfg.history_order + cfg.estimator.k)
    throw ConfigError("lag_max " + std::to_string(cfg.lag_max) +
                      " leaves too few effective observations");
  std::span<const double> src = cfg.direction == Direction::y_to_x ? y : x;
  std::span<const double> dst = cfg.direction == Direction::y_to_x ? x : y;
  return scan_lag_list(src, dst, detail::lag_range(cfg.lag_min, cfg.lag_max),
                       cfg.history_order, cfg.estimator, cfg.jobs);
}

struct BidirectionalScan {
  TeCurve forward;   // x -> y
  TeCurve backward;  // y -> x
};

inline BidirectionalScan scan_both(std::span<const double> x, std::span<const double> y,
                                   LagScanConfig cfg) {
  BidirectionalScan result;
  cfg.direction = Direction::x_to_y;
  result.forward = scan_lags(x, y, cfg);
  cfg.direction = Direction::y_to_x;
  result.backward = scan_lags(x, y, cfg);
  return result;
}

// Lag scan of a series against itself (delayed self-influence).
inline TeCurve self_scan(std::span<const double> x, const LagScanConfig& cfg) {
  cfg.validate();
  if (x.size() < cfg.lag_max + cfg.history_order + cfg.estimator.k)
    throw ConfigError("lag_max " + std::to_string(cfg.lag_max) +
                      " leaves too few effective observations");
  return detail::scan_list(detail::lag_range(cfg.lag_min, cfg.lag_max), cfg.jobs,
                           [&](std::size_t lag) {
                             return self_transfer_entropy(x, lag, cfg.history_order,
                                                          cfg.estimator);
                           });
}

}  // namespace telag
