#include "biadmm/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "biadmm/rng.hpp"

namespace biadmm {

namespace {

// Uniform cluster assignment with every cluster realized; re-draws the whole
// labeling when one comes up empty.
std::vector<int> assign_clusters(Rng& rng, std::size_t count, std::size_t clusters) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<int> labels(count);
    std::vector<char> hit(clusters, 0);
    for (std::size_t i = 0; i < count; ++i) {
      labels[i] = static_cast<int>(rng.uniform_below(clusters));
      hit[labels[i]] = 1;
    }
    if (std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; })) return labels;
  }
  throw std::runtime_error("gen_checkerboard: could not realize all clusters in 100 attempts");
}

}  // namespace

CheckerboardData gen_checkerboard(const CheckerboardSpec& spec) {
  if (spec.K < 1 || spec.K > spec.n || spec.R < 1 || spec.R > spec.p)
    throw std::invalid_argument("gen_checkerboard: need 1 <= K <= n and 1 <= R <= p");
  if (!(spec.sigma > 0.0)) throw std::invalid_argument("gen_checkerboard: sigma must be > 0");

  Rng rng(spec.seed);
  CheckerboardData out;
  out.truth.row_labels = assign_clusters(rng, spec.n, spec.K);
  out.truth.col_labels = assign_clusters(rng, spec.p, spec.R);
  out.truth.n_row_clusters = static_cast<int>(spec.K);
  out.truth.n_col_clusters = static_cast<int>(spec.R);

  // Bicluster means, uniform over the 21 integers -10..10.
  Matrix means(spec.K, spec.R);
  for (std::size_t k = 0; k < spec.K; ++k)
    for (std::size_t r = 0; r < spec.R; ++r)
      means(k, r) = -10.0 + static_cast<double>(rng.uniform_below(21));

  out.X = Matrix(spec.n, spec.p);
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t j = 0; j < spec.p; ++j) {
      const double mu = means(out.truth.row_labels[i], out.truth.col_labels[j]);
      out.X(i, j) = mu + spec.sigma * rng.normal();
    }
  }
  return out;
}

CompositionalSpec CompositionalSpec::defaults() {
  CompositionalSpec spec;
  const std::size_t taxa = 24;
  spec.proportion_means.resize(taxa);
  spec.groups.resize(taxa);

  auto fill_group = [&](std::size_t begin, std::size_t count, double lo, double hi,
                        double group_total, TaxonGroup g) {
    double raw_total = 0.0;
    for (std::size_t t = 0; t < count; ++t)
      raw_total += lo + (hi - lo) * static_cast<double>(t) / static_cast<double>(count - 1);
    for (std::size_t t = 0; t < count; ++t) {
      const double raw = lo + (hi - lo) * static_cast<double>(t) / static_cast<double>(count - 1);
      spec.proportion_means[begin + t] = raw * group_total / raw_total;
      spec.groups[begin + t] = g;
    }
  };
  // Taxa ordered by ascending mean proportion.
  fill_group(0, 6, 0.0030, 0.0068, 0.03, TaxonGroup::enlarged);
  fill_group(6, 13, 0.0070, 0.0085, 0.10, TaxonGroup::unchanged);
  fill_group(19, 5, 0.1000, 0.2500, 0.87, TaxonGroup::shrunk);
  return spec;
}

void CompositionalSpec::validate() const {
  if (samples_per_arm < 1)
    throw std::invalid_argument("CompositionalSpec: samples_per_arm must be >= 1");
  if (proportion_means.empty() || proportion_means.size() != groups.size())
    throw std::invalid_argument("CompositionalSpec: proportion_means/groups size mismatch");
  double total = 0.0;
  for (double m : proportion_means) {
    if (!(m > 0.0)) throw std::invalid_argument("CompositionalSpec: proportion means must be > 0");
    total += m;
  }
  if (std::fabs(total - 1.0) > 1e-10)
    throw std::invalid_argument("CompositionalSpec: proportion means must sum to 1");
  if (!(dispersion > 0.0) || !(dispersion < 1.0))
    throw std::invalid_argument("CompositionalSpec: dispersion must lie in (0, 1)");
  if (reads_per_sample < 1)
    throw std::invalid_argument("CompositionalSpec: reads_per_sample must be >= 1");
  if (!(ratio_fold_reduction > 0.0))
    throw std::invalid_argument("CompositionalSpec: ratio_fold_reduction must be > 0");
  bool any_enlarged = false, any_shrunk = false;
  for (TaxonGroup g : groups) {
    any_enlarged = any_enlarged || g == TaxonGroup::enlarged;
    any_shrunk = any_shrunk || g == TaxonGroup::shrunk;
  }
  if (!any_enlarged || !any_shrunk)
    throw std::invalid_argument("CompositionalSpec: need at least one enlarged and one shrunk taxon");
}

namespace {

std::vector<double> draw_counts(Rng& rng, const CompositionalSpec& spec,
                                const std::vector<double>& alpha) {
  const std::vector<double> proportions = rng.dirichlet(alpha);
  const std::vector<long long> counts = rng.multinomial(spec.reads_per_sample, proportions);
  std::vector<double> out(counts.size());
  for (std::size_t j = 0; j < counts.size(); ++j) out[j] = static_cast<double>(counts[j]);
  return out;
}

// Shift count mass from the shrunk group to the enlarged group: the ratio
// sum(shrunk)/sum(enlarged) is divided by the fold reduction while the
// combined total of the two groups stays fixed; each taxon within a group
// scales proportionally. Rescaled counts stay real-valued. Returns false
// when a group has zero counts (ratio undefined; caller redraws).
bool manipulate_sample(std::vector<double>& counts, const CompositionalSpec& spec) {
  double enlarged_total = 0.0, shrunk_total = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (spec.groups[j] == TaxonGroup::enlarged) enlarged_total += counts[j];
    if (spec.groups[j] == TaxonGroup::shrunk) shrunk_total += counts[j];
  }
  if (enlarged_total <= 0.0 || shrunk_total <= 0.0) return false;

  const double ratio = shrunk_total / enlarged_total;
  const double adjusted_ratio = ratio / spec.ratio_fold_reduction;
  const double combined = enlarged_total + shrunk_total;
  const double new_enlarged = combined / (1.0 + adjusted_ratio);
  const double new_shrunk = combined - new_enlarged;

  const double enlarged_scale = new_enlarged / enlarged_total;
  const double shrunk_scale = new_shrunk / shrunk_total;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (spec.groups[j] == TaxonGroup::enlarged) counts[j] *= enlarged_scale;
    if (spec.groups[j] == TaxonGroup::shrunk) counts[j] *= shrunk_scale;
  }
  return true;
}

void normalize_row(std::vector<double>& counts) {
  double total = 0.0;
  for (double c : counts) total += c;
  for (double& c : counts) c /= total;
}

}  // namespace

CompositionalData gen_compositional(const CompositionalSpec& spec) {
  spec.validate();
  const std::size_t p = spec.proportion_means.size();
  const std::size_t n = 2 * spec.samples_per_arm;

  // Dirichlet concentration from the overdispersion parameter:
  // alpha_j = mean_j * (1 - theta) / theta.
  const double concentration = (1.0 - spec.dispersion) / spec.dispersion;
  std::vector<double> alpha(p);
  for (std::size_t j = 0; j < p; ++j) alpha[j] = spec.proportion_means[j] * concentration;

  CompositionalData out;
  out.X = Matrix(n, p);
  Rng rng(spec.seed);

  for (std::size_t i = 0; i < spec.samples_per_arm; ++i) {
    std::vector<double> counts = draw_counts(rng, spec, alpha);
    normalize_row(counts);
    for (std::size_t j = 0; j < p; ++j) out.X(i, j) = counts[j];
  }
  for (std::size_t i = 0; i < spec.samples_per_arm; ++i) {
    bool done = false;
    for (int attempt = 0; attempt < 100 && !done; ++attempt) {
      std::vector<double> counts = draw_counts(rng, spec, alpha);
      if (!manipulate_sample(counts, spec)) continue;
      normalize_row(counts);
      for (std::size_t j = 0; j < p; ++j) out.X(spec.samples_per_arm + i, j) = counts[j];
      done = true;
    }
    if (!done)
      throw std::runtime_error("gen_compositional: zero-count group persisted in 100 redraws");
  }

  out.truth.row_labels.assign(n, 0);
  for (std::size_t i = spec.samples_per_arm; i < n; ++i) out.truth.row_labels[i] = 1;
  out.truth.n_row_clusters = 2;
  std::vector<int> group_ids(p);
  for (std::size_t j = 0; j < p; ++j) group_ids[j] = static_cast<int>(spec.groups[j]);
  out.truth.col_labels = canonicalize_labels(group_ids);
  out.truth.n_col_clusters =
      1 + *std::max_element(out.truth.col_labels.begin(), out.truth.col_labels.end());
  return out;
}

}  // namespace biadmm
