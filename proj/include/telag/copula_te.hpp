// Copula entropy, mutual information, and transfer entropy estimators.
//
// Copula entropy is the kNN entropy of the rank-transformed sample; mutual
// information is its exact negation. Transfer entropy from x to y at a lag is
// the conditional mutual information I(future; source | history) expanded in
// copula entropies:
//   TE = H_c(future, history) + H_c(source, history)
//      - H_c(future, history, source) - H_c(history),
// with all four terms estimated on one shared row alignment. The H_c(history)
// term vanishes when the history is a single column.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "telag/estimator_core.hpp"
#include "telag/errors.hpp"
#include "telag/matrix.hpp"
#include "telag/rng.hpp"

namespace telag {

struct CeEstimate {
  double value = 0.0;  // nats; theoretical CE <= 0, estimates may slightly exceed 0
  std::size_t sample_size = 0;
  EstimatorConfig config;
  EntropyDiagnostics diagnostics;
};

struct TeTerms {
  double future_history = 0.0;         // H_c(A, C)
  double source_history = 0.0;         // H_c(B, C)
  double future_history_source = 0.0;  // H_c(A, C, B)
  double history = 0.0;                // H_c(C); 0 for a single history column
};

struct TeEstimate {
  double value = 0.0;  // nats, reported as-is (negative estimates not clamped)
  std::size_t lag = 0;
  std::size_t history_order = 1;
  std::size_t effective_length = 0;
  TeTerms terms;
  EstimatorConfig config;
  EntropyDiagnostics diagnostics;
};

// Aligned columns for one transfer-entropy evaluation: row j pairs the target
// value `lag` samples after the newest history entry with that history block
// and the source value at the history's newest index.
struct LaggedEmbedding {
  std::vector<double> future;
  SampleMatrix history;  // column h holds y[t - h]
  std::vector<double> source;
  std::size_t lag = 0;
  std::size_t history_order = 1;

  std::size_t effective_length() const { return future.size(); }
};

namespace detail {

inline void require_series(std::span<const double> s, const std::string& name) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!std::isfinite(s[i]))
      throw InvalidInputError(name + ": non-finite value at index " + std::to_string(i));
}

inline bool is_constant(std::span<const double> s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] != s[0]) return false;
  return !s.empty();
}

inline std::vector<double> jittered_copy(std::span<const double> s, double scale,
                                         std::uint64_t seed, std::uint64_t stream) {
  std::vector<double> out(s.begin(), s.end());
  Xoshiro256pp rng = Xoshiro256pp::substream(seed, stream);
  for (auto& v : out) v += rng.uniform(0.0, scale);
  return out;
}

}  // namespace detail

inline CeEstimate copula_entropy(const SampleMatrix& x, const EstimatorConfig& cfg) {
  cfg.validate();
  if (x.cols() < 2)
    throw DimensionError("copula entropy needs at least two columns; one variable has CE 0");
  if (x.rows() <= cfg.k)
    throw InsufficientSampleError("copula entropy needs more than k=" + std::to_string(cfg.k) +
                                  " observations, got " + std::to_string(x.rows()));
  const SampleMatrix* source = &x;
  SampleMatrix jittered;
  if (cfg.jitter_scale > 0.0) {
    x.require_finite("copula entropy");
    jittered = SampleMatrix(x.rows(), x.cols());
    // one jitter substream per column, keyed on the column index
    for (std::size_t c = 0; c < x.cols(); ++c) {
      Xoshiro256pp rng = Xoshiro256pp::substream(cfg.seed, c);
      for (std::size_t r = 0; r < x.rows(); ++r)
        jittered(r, c) = x(r, c) + rng.uniform(0.0, cfg.jitter_scale);
    }
    source = &jittered;
  }
  const PseudoObservations u = empirical_copula_transform(*source);
  CeEstimate est;
  est.sample_size = x.rows();
  est.config = cfg;
  est.value = knn_entropy(u.matrix(), cfg, &est.diagnostics);
  return est;
}

// An identity, not a second estimator: MI is exactly the negated copula entropy.
inline double mutual_information(const SampleMatrix& x, const EstimatorConfig& cfg) {
  return -copula_entropy(x, cfg).value;
}

inline LaggedEmbedding build_lagged_embedding(std::span<const double> x,
                                              std::span<const double> y, std::size_t lag,
                                              std::size_t history_order = 1) {
  if (x.size() != y.size())
    throw InvalidInputError("lagged embedding: series lengths differ (" +
                            std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
  if (lag < 1) throw ConfigError("lag must be >= 1");
  if (history_order < 1) throw ConfigError("history order must be >= 1");
  const std::size_t t_count = x.size();
  if (t_count < lag + history_order)
    throw InsufficientSampleError("lagged embedding: need length > lag + history_order - 1, got " +
                                  std::to_string(t_count) + " with lag " + std::to_string(lag));
  const std::size_t n = t_count - lag - (history_order - 1);
  LaggedEmbedding emb;
  emb.lag = lag;
  emb.history_order = history_order;
  emb.future.resize(n);
  emb.source.resize(n);
  emb.history = SampleMatrix(n, history_order);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t t = j + history_order - 1;
    emb.future[j] = y[t + lag];
    emb.source[j] = x[t];
    for (std::size_t h = 0; h < history_order; ++h) emb.history(j, h) = y[t - h];
  }
  return emb;
}

// Self-analysis embedding: the pair embedding of a series with itself, so the
// newest history entry and the source share the index a full lag before the
// future sample. Anchoring the history at the future's preceding index
// instead looks natural but measures I(x_{t+lag}; x_t | x_{t+lag-1}), which is
// identically zero whenever the recursion is one-step (the delayed and
// one-step influences coincide at lag 1) and never peaks there; this form
// ranks lags by the delayed self-dependence and recovers the true state
// delay across the whole lag grid.
inline LaggedEmbedding build_self_embedding(std::span<const double> x, std::size_t lag,
                                            std::size_t history_order = 1) {
  return build_lagged_embedding(x, x, lag, history_order);
}

namespace detail {

inline SampleMatrix assemble(const LaggedEmbedding& emb, bool with_future, bool with_source) {
  const std::size_t n = emb.effective_length();
  const std::size_t cols = (with_future ? 1 : 0) + emb.history_order + (with_source ? 1 : 0);
  SampleMatrix m(n, cols);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t c = 0;
    if (with_future) m(j, c++) = emb.future[j];
    for (std::size_t h = 0; h < emb.history_order; ++h) m(j, c++) = emb.history(j, h);
    if (with_source) m(j, c++) = emb.source[j];
  }
  return m;
}

inline TeEstimate transfer_entropy_from_embedding(const LaggedEmbedding& emb,
                                                  const EstimatorConfig& cfg) {
  const std::size_t n = emb.effective_length();
  if (n <= cfg.k)
    throw InsufficientSampleError("transfer entropy: effective length " + std::to_string(n) +
                                  " must exceed k=" + std::to_string(cfg.k));
  if (is_constant(emb.source))
    throw DegenerateSampleError("transfer entropy: source series is constant");
  if (is_constant(emb.future))
    throw DegenerateSampleError("transfer entropy: target series is constant");
  for (std::size_t h = 0; h < emb.history_order; ++h) {
    const auto col = emb.history.column(h);
    if (is_constant(col))
      throw DegenerateSampleError("transfer entropy: target history is constant");
  }

  // Raw-data jitter, when configured, was already applied at series level, so
  // the per-term estimates must not jitter again.
  EstimatorConfig term_cfg = cfg;
  term_cfg.jitter_scale = 0.0;

  TeEstimate est;
  est.lag = emb.lag;
  est.history_order = emb.history_order;
  est.effective_length = n;
  est.config = cfg;

  EntropyDiagnostics diag;
  auto term = [&](bool with_future, bool with_source) {
    const SampleMatrix m = assemble(emb, with_future, with_source);
    const PseudoObservations u = empirical_copula_transform(m);
    EntropyDiagnostics local;
    const double h = knn_entropy(u.matrix(), term_cfg, &local);
    diag.clamped_distances += local.clamped_distances;
    return h;
  };

  est.terms.future_history = term(true, false);
  est.terms.source_history = term(false, true);
  est.terms.future_history_source = term(true, true);
  est.terms.history = 0.0;
  if (emb.history_order >= 2) {
    const PseudoObservations u = empirical_copula_transform(emb.history);
    EntropyDiagnostics local;
    est.terms.history = knn_entropy(u.matrix(), term_cfg, &local);
    diag.clamped_distances += local.clamped_distances;
  }
  est.diagnostics = diag;
  est.value = est.terms.future_history + est.terms.source_history -
              est.terms.future_history_source - est.terms.history;
  return est;
}

}  // namespace detail

inline TeEstimate transfer_entropy(std::span<const double> x, std::span<const double> y,
                                   std::size_t lag, std::size_t history_order,
                                   const EstimatorConfig& cfg) {
  cfg.validate();
  detail::require_series(x, "source series");
  detail::require_series(y, "target series");
  if (cfg.jitter_scale > 0.0) {
    // substream 0 jitters the source series, substream 1 the target
    const std::vector<double> xj = detail::jittered_copy(x, cfg.jitter_scale, cfg.seed, 0);
    const std::vector<double> yj = detail::jittered_copy(y, cfg.jitter_scale, cfg.seed, 1);
    return detail::transfer_entropy_from_embedding(
        build_lagged_embedding(xj, yj, lag, history_order), cfg);
  }
  return detail::transfer_entropy_from_embedding(build_lagged_embedding(x, y, lag, history_order),
                                                 cfg);
}

inline TeEstimate self_transfer_entropy(std::span<const double> x, std::size_t lag,
                                        std::size_t history_order, const EstimatorConfig& cfg) {
  cfg.validate();
  detail::require_series(x, "series");
  if (cfg.jitter_scale > 0.0) {
    const std::vector<double> xj = detail::jittered_copy(x, cfg.jitter_scale, cfg.seed, 0);
    return detail::transfer_entropy_from_embedding(build_self_embedding(xj, lag, history_order),
                                                   cfg);
  }
  return detail::transfer_entropy_from_embedding(build_self_embedding(x, lag, history_order), cfg);
}

}  // namespace telag
