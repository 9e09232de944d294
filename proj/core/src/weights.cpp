#include "biadmm/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace biadmm {

double WeightedEdgeSet::total_weight() const {
  double total = 0.0;
  for (double w : weights) total += w;
  return total;
}

void WeightedEdgeSet::validate() const {
  if (edges.size() != weights.size())
    throw std::invalid_argument("edge set: edge/weight count mismatch");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.a >= e.b) throw std::invalid_argument("edge set: pairs must satisfy a < b");
    if (e.b >= dimension) throw std::invalid_argument("edge set: index out of range");
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw std::invalid_argument("edge set: weights must be finite and positive");
  }
  for (std::size_t i = 1; i < edges.size(); ++i) {
    const Edge& prev = edges[i - 1];
    const Edge& cur = edges[i];
    if (prev.a > cur.a || (prev.a == cur.a && prev.b >= cur.b))
      throw std::invalid_argument("edge set: edges must be sorted and unique");
  }
}

namespace {

// Gather the axis vectors as rows of a contiguous matrix.
Matrix axis_vectors(const Matrix& X, Axis axis) {
  if (axis == Axis::rows) return X;
  return transpose(X);
}

}  // namespace

WeightedEdgeSet build_knn_weights(const Matrix& X, Axis axis, std::size_t m, double phi) {
  const Matrix items = axis_vectors(X, axis);
  const std::size_t d = items.rows();
  const std::size_t len = items.cols();
  if (d < 2) throw std::invalid_argument("build_knn_weights: need at least 2 items");
  if (m < 1) throw std::invalid_argument("build_knn_weights: m must be >= 1");
  if (m >= d) throw std::invalid_argument("build_knn_weights: m must be < dimension");
  if (!(phi >= 0.0)) throw std::invalid_argument("build_knn_weights: phi must be >= 0");
  if (!X.all_finite()) throw std::invalid_argument("build_knn_weights: non-finite data");

  Matrix dist2(d, d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double* xi = items.row(i);
      const double* xj = items.row(j);
      double acc = 0.0;
      for (std::size_t t = 0; t < len; ++t) {
        const double diff = xi[t] - xj[t];
        acc += diff * diff;
      }
      dist2(i, j) = acc;
      dist2(j, i) = acc;
    }
  }

  // Directed m-nearest-neighbor indicator, ties broken by lower index,
  // then symmetrized as a union.
  std::vector<char> keep(d * d, 0);
  std::vector<std::size_t> order(d);
  for (std::size_t i = 0; i < d; ++i) {
    order.clear();
    for (std::size_t j = 0; j < d; ++j)
      if (j != i) order.push_back(j);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (dist2(i, a) != dist2(i, b)) return dist2(i, a) < dist2(i, b);
      return a < b;
    });
    for (std::size_t t = 0; t < m; ++t) {
      const std::size_t j = order[t];
      keep[std::min(i, j) * d + std::max(i, j)] = 1;
    }
  }

  WeightedEdgeSet out;
  out.dimension = d;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      if (!keep[a * d + b]) continue;
      const double w = std::exp(-phi * dist2(a, b));
      if (w <= 0.0) continue;  // underflow, contributes nothing
      out.edges.push_back({a, b});
      out.weights.push_back(w);
    }
  }
  return out;
}

WeightedEdgeSet full_edge_set(std::size_t dimension) {
  if (dimension < 2) throw std::invalid_argument("full_edge_set: dimension must be >= 2");
  WeightedEdgeSet out;
  out.dimension = dimension;
  out.edges.reserve(dimension * (dimension - 1) / 2);
  for (std::size_t a = 0; a < dimension; ++a)
    for (std::size_t b = a + 1; b < dimension; ++b) out.edges.push_back({a, b});
  out.weights.assign(out.edges.size(), 1.0);
  return out;
}

namespace {

WeightedEdgeSet rescale_to(const WeightedEdgeSet& in, double target_total, const char* what) {
  const double total = in.total_weight();
  if (!(total > 0.0))
    throw std::invalid_argument(std::string("rescale_single_gamma: ") + what +
                                " weights have zero total");
  WeightedEdgeSet out = in;
  const double factor = target_total / total;
  for (double& w : out.weights) w *= factor;
  return out;
}

}  // namespace

std::pair<WeightedEdgeSet, WeightedEdgeSet> rescale_single_gamma(const WeightedEdgeSet& rows,
                                                                 const WeightedEdgeSet& cols,
                                                                 std::size_t n, std::size_t p) {
  return {rescale_to(rows, 1.0 / std::sqrt(static_cast<double>(p)), "row"),
          rescale_to(cols, 1.0 / std::sqrt(static_cast<double>(n)), "column")};
}

}  // namespace biadmm
