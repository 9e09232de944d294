#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "biadmm/admm.hpp"
#include "biadmm/clusters.hpp"
#include "biadmm/matrix.hpp"
#include "biadmm/weights.hpp"

namespace biadmm {

/// Candidate penalty levels. When `coupled` is set the two sequences must
/// match and only the diagonal (g, g) is evaluated (single-gamma mode);
/// otherwise the full cartesian grid is searched.
struct TuningGrid {
  std::vector<double> gamma1_values;
  std::vector<double> gamma2_values;
  bool coupled = false;

  std::vector<std::pair<double, double>> points() const;
  void validate() const;

  static TuningGrid log_spaced(double lo, double hi, std::size_t count);
  static TuningGrid coupled_grid(std::vector<double> gammas);
};

struct TuningReport {
  struct Entry {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double score = 0.0;
  };
  std::vector<Entry> table;  // one row per grid point, grid order
  double selected_gamma1 = 0.0;
  double selected_gamma2 = 0.0;
  std::string method;
};

/// How to build fusion graphs from a data matrix (used where tuning has to
/// re-derive weights, e.g. on bootstrap resamples).
struct GraphSpec {
  bool full_graph = false;
  std::size_t m1 = 5;
  std::size_t m2 = 5;
  double phi = 1.0;
  bool rescale_single_gamma = false;

  std::pair<WeightedEdgeSet, WeightedEdgeSet> build(const Matrix& X) const;
};

/// Mask a random fraction of entries, impute them with column means, fit at
/// every grid point and score by mean squared error of A_hat against the
/// held-out truth. The minimizing point wins; ties break toward larger
/// gamma1 + gamma2. A draw that fully masks some column is retried up to 10
/// times, then rejected.
TuningReport holdout_validate(const Matrix& X, const WeightedEdgeSet& rows,
                              const WeightedEdgeSet& cols, const TuningGrid& grid,
                              const AdmmConfig& base, double holdout_frac, std::uint64_t seed,
                              unsigned threads = 1);

/// Per repetition, fit two bootstrap row-resamples (graphs rebuilt per
/// resample) at every grid point and score agreement as the ARI between the
/// two column-label partitions; repetitions where either fit collapses to a
/// single column cluster score 0. The point with the highest mean agreement
/// wins.
TuningReport stability_select(const Matrix& X, const GraphSpec& graphs, const TuningGrid& grid,
                              const AdmmConfig& base, std::size_t repetitions, std::uint64_t seed,
                              unsigned threads = 1);

/// Simulation-only tuning: fit the validation matrix at every grid point and
/// pick the point whose product-label ARI against the known truth is
/// largest.
TuningReport ari_oracle_tune(const Matrix& X_valid, const WeightedEdgeSet& rows,
                             const WeightedEdgeSet& cols, const BiclusterLabels& truth,
                             const TuningGrid& grid, const AdmmConfig& base, unsigned threads = 1);

/// Single-tuning-parameter setup: rescales the weights (rows to 1/sqrt(p),
/// columns to 1/sqrt(n)) and sets gamma1 = gamma2 = gamma.
struct SingleGammaSetup {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  WeightedEdgeSet rows;
  WeightedEdgeSet cols;
};
SingleGammaSetup single_gamma_mode(const WeightedEdgeSet& rows, const WeightedEdgeSet& cols,
                                   std::size_t n, std::size_t p, double gamma);

}  // namespace biadmm
