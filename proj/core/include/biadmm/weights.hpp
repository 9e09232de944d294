#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "biadmm/matrix.hpp"

namespace biadmm {

struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;  // a < b always
  bool operator==(const Edge&) const = default;
};

/// Edge list over row indices or column indices with nonnegative fusion
/// weights. Pairs are stored once with a < b; zero-weight edges are dropped.
struct WeightedEdgeSet {
  std::vector<Edge> edges;
  std::vector<double> weights;
  std::size_t dimension = 0;

  std::size_t size() const noexcept { return edges.size(); }
  double total_weight() const;

  /// Throws std::invalid_argument if any structural invariant is broken.
  void validate() const;
};

enum class Axis { rows, columns };

/// Gaussian-kernel k-nearest-neighbor weights over the rows (or columns) of X.
/// An edge (a, b) is kept when b is among a's m nearest neighbors in squared
/// Euclidean distance or vice versa; its weight is exp(-phi * d^2).
/// Distance ties break toward the lower index. Requires m < dimension.
WeightedEdgeSet build_knn_weights(const Matrix& X, Axis axis, std::size_t m, double phi);

/// Complete graph with unit weights. Requires dimension >= 2.
WeightedEdgeSet full_edge_set(std::size_t dimension);

/// Rescale for the single-tuning-parameter mode: row weights are normalized
/// to sum to 1/sqrt(p) and column weights to 1/sqrt(n), preserving ratios.
std::pair<WeightedEdgeSet, WeightedEdgeSet> rescale_single_gamma(const WeightedEdgeSet& rows,
                                                                 const WeightedEdgeSet& cols,
                                                                 std::size_t n, std::size_t p);

}  // namespace biadmm
