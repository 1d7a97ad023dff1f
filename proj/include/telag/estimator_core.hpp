// Low-level estimation kernels: the empirical-CDF rank transform, k-th
// nearest-neighbor distances, and the kNN differential entropy estimator
// H = psi(T) - psi(k) + log c_d + (d/T) * sum_t log(2 * dist_t),
// where dist_t is the k-th neighbor distance of observation t and c_d the
// unit-ball volume of the metric (1 for the max norm).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "telag/errors.hpp"
#include "telag/kdtree.hpp"
#include "telag/matrix.hpp"
#include "telag/special_functions.hpp"

namespace telag {

enum class KnnBackend {
  automatic,    // kd-tree for large samples, brute force otherwise
  brute_force,  // reference path, O(T^2 d)
  kd_tree,
};

struct EstimatorConfig {
  std::size_t k = 3;
  Norm norm = Norm::chebyshev;
  double jitter_scale = 0.0;  // uniform noise in [0, jitter_scale) before ranking
  std::uint64_t seed = 0;
  KnnBackend backend = KnnBackend::automatic;

  void validate() const {
    if (k < 1) throw ConfigError("neighbor count k must be >= 1");
    if (!(jitter_scale >= 0.0)) throw ConfigError("jitter_scale must be >= 0");
  }
};

struct EntropyDiagnostics {
  std::size_t clamped_distances = 0;  // zero neighbor distances clamped to the floor
};

// Floor for a zero k-th neighbor scale 2*dist before taking its log.
inline constexpr double kMinNeighborScale = 1e-15;

// Per-column empirical CDF evaluated at the sample itself (weak inequality,
// so the largest rank is exactly 1 and ties share the rank of their last
// sorted member). Exactly invariant under strictly increasing per-column
// transforms and equivariant under row permutations.
inline PseudoObservations empirical_copula_transform(const SampleMatrix& x) {
  if (x.rows() < 1 || x.cols() < 1)
    throw InvalidInputError("empirical copula transform: empty sample");
  x.require_finite("empirical copula transform");
  const std::size_t t_count = x.rows();
  const std::size_t d = x.cols();
  SampleMatrix u(t_count, d);
  std::vector<std::uint32_t> idx(t_count);
  for (std::size_t c = 0; c < d; ++c) {
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
      return x(a, c) < x(b, c);
    });
    std::size_t i = 0;
    while (i < t_count) {
      std::size_t j = i;
      while (j + 1 < t_count && x(idx[j + 1], c) == x(idx[i], c)) ++j;
      const double rank = static_cast<double>(j + 1) / static_cast<double>(t_count);
      for (std::size_t r = i; r <= j; ++r) u(idx[r], c) = rank;
      i = j + 1;
    }
  }
  return PseudoObservations(std::move(u));
}

namespace detail {

inline std::vector<double> knn_distances_brute(const SampleMatrix& pts, std::size_t k,
                                               Norm norm) {
  const std::size_t n = pts.rows();
  std::vector<double> result(n);
  std::vector<double> scratch(n - 1);
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t m = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (s == t) continue;
      scratch[m++] = row_distance(pts, t, s, norm);
    }
    std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
    result[t] = scratch[k - 1];
  }
  return result;
}

inline std::vector<double> knn_distances_tree(const SampleMatrix& pts, std::size_t k,
                                              Norm norm) {
  const std::size_t n = pts.rows();
  KdTree tree(pts);
  std::vector<double> result(n);
  for (std::size_t t = 0; t < n; ++t) result[t] = tree.kth_neighbor_distance(t, k, norm);
  return result;
}

}  // namespace detail

// Distance from each observation to its k-th nearest other observation.
// The two backends return bit-identical values; `automatic` picks by size.
inline std::vector<double> knn_distances(const SampleMatrix& pts, std::size_t k, Norm norm,
                                         KnnBackend backend = KnnBackend::automatic) {
  if (k < 1) throw ConfigError("neighbor count k must be >= 1");
  if (pts.rows() <= k)
    throw InsufficientSampleError("need more than k=" + std::to_string(k) +
                                  " observations, got " + std::to_string(pts.rows()));
  if (backend == KnnBackend::automatic)
    backend = (pts.rows() >= 512) ? KnnBackend::kd_tree : KnnBackend::brute_force;
  return backend == KnnBackend::kd_tree ? detail::knn_distances_tree(pts, k, norm)
                                        : detail::knn_distances_brute(pts, k, norm);
}

// log of the unit-ball volume c_d in the estimator's convention: distances
// enter doubled, so the max-norm ball has volume 1 and the Euclidean ball
// pi^(d/2) / (2^d Gamma(d/2 + 1)).
inline double log_unit_ball_volume(Norm norm, std::size_t d) {
  if (norm == Norm::chebyshev) return 0.0;
  const double dd = static_cast<double>(d);
  return 0.5 * dd * std::log(M_PI) - dd * std::log(2.0) - std::lgamma(0.5 * dd + 1.0);
}

// kNN differential entropy in nats.
inline double knn_entropy(const SampleMatrix& pts, const EstimatorConfig& cfg,
                          EntropyDiagnostics* diag = nullptr) {
  cfg.validate();
  const std::size_t t_count = pts.rows();
  const std::size_t d = pts.cols();
  if (t_count <= cfg.k)
    throw InsufficientSampleError("kNN entropy needs more than k=" + std::to_string(cfg.k) +
                                  " observations, got " + std::to_string(t_count));
  if (pts.all_rows_identical())
    throw DegenerateSampleError("kNN entropy: all observations are identical");
  const std::vector<double> dists = knn_distances(pts, cfg.k, cfg.norm, cfg.backend);
  double sum_log = 0.0;
  std::size_t clamped = 0;
  for (const double dist : dists) {
    double scale = 2.0 * dist;
    if (scale == 0.0) {
      scale = kMinNeighborScale;
      ++clamped;
    }
    sum_log += std::log(scale);
  }
  if (diag) diag->clamped_distances = clamped;
  return digamma(static_cast<double>(t_count)) - digamma(static_cast<double>(cfg.k)) +
         log_unit_ball_volume(cfg.norm, d) +
         (static_cast<double>(d) / static_cast<double>(t_count)) * sum_log;
}

}  // namespace telag
