#pragma once

#include <vector>

#include "biadmm/admm.hpp"
#include "biadmm/weights.hpp"

namespace biadmm {

/// Row/column cluster assignments. Labels are 0-based, contiguous, and
/// assigned in first-occurrence order.
struct BiclusterLabels {
  std::vector<int> row_labels;
  std::vector<int> col_labels;
  int n_row_clusters = 0;
  int n_col_clusters = 0;
};

/// Read clusters off a fitted state: a row edge whose final splitting block
/// satisfies ||v_l||_2 <= eps * max(1, ||A_hat||_F / sqrt(n p)) fuses its two
/// endpoints; clusters are the connected components. Columns analogously
/// through Z. The splitting blocks carry exact zeros from the shrinkage
/// step, so the default eps of 1e-6 is not delicate.
BiclusterLabels extract_labels(const FitResult& result, const WeightedEdgeSet& rows,
                               const WeightedEdgeSet& cols, double eps = 1e-6);

/// Hubert-Arabie adjusted Rand index between two equal-length label vectors.
/// Returns 1 for identical partitions (including the degenerate zero-
/// denominator cases). Throws on length mismatch or length < 2.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

/// Co-membership labels over the n*p cells of the matrix: cell (i, j) gets a
/// label identifying the pair (row_labels[i], col_labels[j]). Row-major.
std::vector<int> product_labels(const std::vector<int>& row_labels,
                                const std::vector<int>& col_labels);

/// Agreement between two biclusterings, scored three ways: rows, columns,
/// and the co-membership product labels over all cells.
struct BiclusterAri {
  double rows = 0.0;
  double cols = 0.0;
  double product = 0.0;
};
BiclusterAri bicluster_ari(const BiclusterLabels& a, const BiclusterLabels& b);

/// Canonicalize to 0-based labels in first-occurrence order.
std::vector<int> canonicalize_labels(const std::vector<int>& labels);

}  // namespace biadmm
