// kd-tree accelerated k-nearest-neighbor distance queries.
//
// The tree only changes which candidate pairs are examined; every distance is
// computed by the same row_distance() used by the brute-force path, and the
// reported value is the k-th order statistic of those distances. The two
// paths therefore return bit-identical results (asserted by tests).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>
#include <vector>

#include "telag/errors.hpp"
#include "telag/matrix.hpp"

namespace telag {

enum class Norm { chebyshev, euclidean };

inline double row_distance(const SampleMatrix& m, std::size_t a, std::size_t b, Norm norm) {
  const double* pa = m.row_ptr(a);
  const double* pb = m.row_ptr(b);
  const std::size_t d = m.cols();
  if (norm == Norm::chebyshev) {
    double best = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = std::fabs(pa[j] - pb[j]);
      if (diff > best) best = diff;
    }
    return best;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double diff = pa[j] - pb[j];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

class KdTree {
 public:
  explicit KdTree(const SampleMatrix& points) : points_(&points) {
    const std::size_t n = points.rows();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0u);
    if (n > 0) {
      nodes_.reserve(2 * n / kLeafSize + 4);
      root_ = build(0, static_cast<std::uint32_t>(n));
    }
  }

  // Distance from row `query` to its k-th nearest other row.
  double kth_neighbor_distance(std::size_t query, std::size_t k, Norm norm) const {
    std::priority_queue<double> best;  // max-heap of the k smallest distances
    search(root_, query, k, norm, best);
    return best.top();
  }

 private:
  static constexpr std::uint32_t kLeafSize = 24;

  struct Node {
    double split_value = 0.0;
    std::int32_t split_dim = -1;  // -1 marks a leaf
    std::uint32_t begin = 0, end = 0;
    std::int32_t left = -1, right = -1;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end) {
    const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    if (end - begin <= kLeafSize) {
      nodes_[id].begin = begin;
      nodes_[id].end = end;
      return id;
    }
    const std::size_t dim = widest_dimension(begin, end);
    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                       return (*points_)(a, dim) < (*points_)(b, dim);
                     });
    const double split = (*points_)(order_[mid], dim);
    const std::int32_t left = build(begin, mid);
    const std::int32_t right = build(mid, end);
    nodes_[id].split_dim = static_cast<std::int32_t>(dim);
    nodes_[id].split_value = split;
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  std::size_t widest_dimension(std::uint32_t begin, std::uint32_t end) const {
    const std::size_t d = points_->cols();
    std::size_t best_dim = 0;
    double best_spread = -1.0;
    for (std::size_t j = 0; j < d; ++j) {
      double lo = (*points_)(order_[begin], j);
      double hi = lo;
      for (std::uint32_t i = begin + 1; i < end; ++i) {
        const double v = (*points_)(order_[i], j);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (hi - lo > best_spread) {
        best_spread = hi - lo;
        best_dim = j;
      }
    }
    return best_dim;
  }

  void search(std::int32_t id, std::size_t query, std::size_t k, Norm norm,
              std::priority_queue<double>& best) const {
    const Node& node = nodes_[id];
    if (node.split_dim < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const std::uint32_t idx = order_[i];
        if (idx == query) continue;
        const double dist = row_distance(*points_, query, idx, norm);
        if (best.size() < k) {
          best.push(dist);
        } else if (dist < best.top()) {
          best.pop();
          best.push(dist);
        }
      }
      return;
    }
    const double diff = (*points_)(query, static_cast<std::size_t>(node.split_dim)) - node.split_value;
    const std::int32_t near = diff < 0.0 ? node.left : node.right;
    const std::int32_t far = diff < 0.0 ? node.right : node.left;
    search(near, query, k, norm, best);
    // |diff| lower-bounds the distance to anything beyond the split plane in
    // both norms, so the far side can only matter when it is within the
    // current k-th best.
    if (best.size() < k || std::fabs(diff) <= best.top()) search(far, query, k, norm, best);
  }

  const SampleMatrix* points_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
};

}  // namespace telag
