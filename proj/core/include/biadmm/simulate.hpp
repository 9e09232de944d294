#pragma once

#include <cstdint>
#include <vector>

#include "biadmm/clusters.hpp"
#include "biadmm/matrix.hpp"

namespace biadmm {

/// Checkerboard Gaussian design: rows fall into K clusters and columns into
/// R clusters (assignments uniform), each bicluster mean is drawn uniformly
/// from the integers -10..10, and entries get i.i.d. Normal(mean, sigma^2)
/// noise.
struct CheckerboardSpec {
  std::size_t n = 50;
  std::size_t p = 40;
  std::size_t K = 4;
  std::size_t R = 4;
  double sigma = 2.0;
  std::uint64_t seed = 0;
};

struct CheckerboardData {
  Matrix X;
  BiclusterLabels truth;
};

CheckerboardData gen_checkerboard(const CheckerboardSpec& spec);

enum class TaxonGroup { enlarged, shrunk, unchanged };

/// Compositional two-arm design. Counts come from a Dirichlet-multinomial
/// with the given proportion means and dispersion; the treatment arm is then
/// manipulated so the "enlarged" group gains relative abundance at the
/// expense of the "shrunk" group while the "unchanged" group keeps its
/// relative abundances, and samples are normalized to the simplex.
struct CompositionalSpec {
  std::size_t samples_per_arm = 50;
  std::vector<double> proportion_means;  // positive, sums to 1
  double dispersion = 0.01;              // DM overdispersion in (0, 1)
  long long reads_per_sample = 10000;
  std::vector<TaxonGroup> groups;  // one entry per taxon
  double ratio_fold_reduction = 1400.0;
  std::uint64_t seed = 0;

  /// 24 taxa with skewed means: the 6 smallest sum to 0.03 (enlarged), the
  /// 5 largest to 0.87 (shrunk), the middle 13 to 0.10 (unchanged).
  static CompositionalSpec defaults();

  void validate() const;
};

struct CompositionalData {
  Matrix X;  // relative abundances; control rows first, then treatment
  BiclusterLabels truth;
};

CompositionalData gen_compositional(const CompositionalSpec& spec);

}  // namespace biadmm
