#include <stdexcept>
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "biadmm/simulate.hpp"

using biadmm::CheckerboardSpec;
using biadmm::CompositionalSpec;
using biadmm::gen_checkerboard;
using biadmm::gen_compositional;
using biadmm::Matrix;
using biadmm::TaxonGroup;

TEST_CASE("checkerboard: vanishing noise gives constant biclusters") {
  CheckerboardSpec spec;
  spec.n = 30;
  spec.p = 20;
  spec.K = 3;
  spec.R = 2;
  spec.sigma = 1e-9;
  spec.seed = 5;
  const auto data = gen_checkerboard(spec);
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t i2 = 0; i2 < spec.n; ++i2) {
      if (data.truth.row_labels[i] != data.truth.row_labels[i2]) continue;
      for (std::size_t j = 0; j < spec.p; ++j) {
        for (std::size_t j2 = 0; j2 < spec.p; ++j2) {
          if (data.truth.col_labels[j] != data.truth.col_labels[j2]) continue;
          CHECK(std::fabs(data.X(i, j) - data.X(i2, j2)) < 1e-6);
        }
      }
    }
  }
}

TEST_CASE("checkerboard: deterministic under seed, distinct across seeds") {
  CheckerboardSpec spec;
  spec.seed = 9;
  const auto a = gen_checkerboard(spec);
  const auto b = gen_checkerboard(spec);
  CHECK(std::memcmp(a.X.data(), b.X.data(), sizeof(double) * a.X.size()) == 0);
  CHECK(a.truth.row_labels == b.truth.row_labels);
  spec.seed = 10;
  const auto c = gen_checkerboard(spec);
  CHECK(std::memcmp(a.X.data(), c.X.data(), sizeof(double) * a.X.size()) != 0);
}

TEST_CASE("checkerboard: truth partitions cover all clusters") {
  CheckerboardSpec spec;
  spec.n = 40;
  spec.p = 30;
  spec.K = 6;
  spec.R = 5;
  spec.seed = 2;
  const auto data = gen_checkerboard(spec);
  std::vector<char> row_seen(spec.K, 0), col_seen(spec.R, 0);
  for (int l : data.truth.row_labels) row_seen[l] = 1;
  for (int l : data.truth.col_labels) col_seen[l] = 1;
  for (char s : row_seen) CHECK(s == 1);
  for (char s : col_seen) CHECK(s == 1);
  CHECK(data.truth.n_row_clusters == 6);
  CHECK(data.truth.n_col_clusters == 5);
}

TEST_CASE("checkerboard: empirical noise level within 5% over 10000 cells") {
  CheckerboardSpec spec;
  spec.n = 100;
  spec.p = 100;
  spec.K = 2;
  spec.R = 2;
  spec.sigma = 3.0;
  spec.seed = 31;
  const auto data = gen_checkerboard(spec);

  // Pooled within-bicluster variance over all 10,000 cells.
  double mean[2][2] = {};
  std::size_t count[2][2] = {};
  for (std::size_t i = 0; i < spec.n; ++i)
    for (std::size_t j = 0; j < spec.p; ++j) {
      mean[data.truth.row_labels[i]][data.truth.col_labels[j]] += data.X(i, j);
      ++count[data.truth.row_labels[i]][data.truth.col_labels[j]];
    }
  for (int k = 0; k < 2; ++k)
    for (int r = 0; r < 2; ++r) mean[k][r] /= static_cast<double>(count[k][r]);
  double ss = 0.0;
  for (std::size_t i = 0; i < spec.n; ++i)
    for (std::size_t j = 0; j < spec.p; ++j) {
      const double d = data.X(i, j) - mean[data.truth.row_labels[i]][data.truth.col_labels[j]];
      ss += d * d;
    }
  const double sd = std::sqrt(ss / (spec.n * spec.p - 4));
  CHECK(std::fabs(sd - spec.sigma) < 0.05 * spec.sigma);
}

TEST_CASE("checkerboard: invalid specs rejected") {
  CheckerboardSpec spec;
  spec.K = 0;
  CHECK_THROWS_AS(gen_checkerboard(spec), std::invalid_argument);
  spec = CheckerboardSpec{};
  spec.K = spec.n + 1;
  CHECK_THROWS_AS(gen_checkerboard(spec), std::invalid_argument);
  spec = CheckerboardSpec{};
  spec.sigma = 0.0;
  CHECK_THROWS_AS(gen_checkerboard(spec), std::invalid_argument);
}

TEST_CASE("compositional defaults satisfy the stated group structure") {
  const auto spec = CompositionalSpec::defaults();
  REQUIRE(spec.proportion_means.size() == 24);
  double total = 0.0, g1 = 0.0, g2 = 0.0, g3 = 0.0;
  for (std::size_t j = 0; j < 24; ++j) {
    total += spec.proportion_means[j];
    if (spec.groups[j] == TaxonGroup::enlarged) g1 += spec.proportion_means[j];
    if (spec.groups[j] == TaxonGroup::shrunk) g2 += spec.proportion_means[j];
    if (spec.groups[j] == TaxonGroup::unchanged) g3 += spec.proportion_means[j];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g1 == doctest::Approx(0.03).epsilon(1e-12));
  CHECK(g2 == doctest::Approx(0.87).epsilon(1e-12));
  CHECK(g3 == doctest::Approx(0.10).epsilon(1e-12));
  // Means ascend across the enlarged -> unchanged -> shrunk layout.
  for (std::size_t j = 1; j < 24; ++j)
    CHECK(spec.proportion_means[j] > spec.proportion_means[j - 1]);
  CHECK_NOTHROW(spec.validate());
}

TEST_CASE("compositional samples live on the simplex") {
  auto spec = CompositionalSpec::defaults();
  spec.samples_per_arm = 10;
  spec.seed = 3;
  const auto data = gen_compositional(spec);
  REQUIRE(data.X.rows() == 20);
  REQUIRE(data.X.cols() == 24);
  for (std::size_t i = 0; i < data.X.rows(); ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < data.X.cols(); ++j) {
      CHECK(data.X(i, j) >= 0.0);
      total += data.X(i, j);
    }
    CHECK(std::fabs(total - 1.0) <= 1e-10);
  }
  CHECK(data.truth.n_row_clusters == 2);
  CHECK(data.truth.n_col_clusters == 3);
  CHECK(data.truth.row_labels[0] == 0);
  CHECK(data.truth.row_labels[19] == 1);
}

TEST_CASE("compositional: unchanged taxa keep their relative abundance") {
  // With the fold reduction at 1 the manipulation is a no-op, and the RNG
  // stream aligns with the manipulated run, so treatment rows pair up.
  auto spec = CompositionalSpec::defaults();
  spec.samples_per_arm = 15;
  spec.seed = 11;
  auto manipulated = spec;
  manipulated.ratio_fold_reduction = 1400.0;
  spec.ratio_fold_reduction = 1.0;
  const auto raw = gen_compositional(spec);
  const auto shifted = gen_compositional(manipulated);

  for (std::size_t i = spec.samples_per_arm; i < 2 * spec.samples_per_arm; ++i) {
    double raw_pair_total = 0.0, shifted_pair_total = 0.0;
    for (std::size_t j = 0; j < 24; ++j) {
      if (spec.groups[j] == TaxonGroup::unchanged) {
        CHECK(shifted.X(i, j) == doctest::Approx(raw.X(i, j)).epsilon(1e-12));
      } else {
        raw_pair_total += raw.X(i, j);
        shifted_pair_total += shifted.X(i, j);
      }
    }
    // Combined enlarged + shrunk mass is preserved by the rescaling.
    CHECK(shifted_pair_total == doctest::Approx(raw_pair_total).epsilon(1e-10));
  }
}

TEST_CASE("compositional: manipulation shifts mass from shrunk to enlarged") {
  auto spec = CompositionalSpec::defaults();
  spec.samples_per_arm = 20;
  spec.seed = 17;
  const auto data = gen_compositional(spec);
  double control_enlarged = 0.0, treatment_enlarged = 0.0;
  double control_shrunk = 0.0, treatment_shrunk = 0.0;
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t j = 0; j < 24; ++j) {
      if (spec.groups[j] == TaxonGroup::enlarged) {
        control_enlarged += data.X(i, j);
        treatment_enlarged += data.X(i + 20, j);
      }
      if (spec.groups[j] == TaxonGroup::shrunk) {
        control_shrunk += data.X(i, j);
        treatment_shrunk += data.X(i + 20, j);
      }
    }
  }
  CHECK(treatment_enlarged > 10.0 * control_enlarged);
  CHECK(treatment_shrunk < control_shrunk);
}

TEST_CASE("compositional: fold reduction of 1 leaves arms distributionally equal") {
  auto spec = CompositionalSpec::defaults();
  spec.samples_per_arm = 2500;
  spec.reads_per_sample = 2000;
  spec.ratio_fold_reduction = 1.0;
  spec.seed = 23;
  const auto data = gen_compositional(spec);
  for (std::size_t j = 0; j < 24; ++j) {
    double control_mean = 0.0, treatment_mean = 0.0, control_sq = 0.0;
    for (std::size_t i = 0; i < spec.samples_per_arm; ++i) {
      control_mean += data.X(i, j);
      control_sq += data.X(i, j) * data.X(i, j);
      treatment_mean += data.X(i + spec.samples_per_arm, j);
    }
    control_mean /= static_cast<double>(spec.samples_per_arm);
    treatment_mean /= static_cast<double>(spec.samples_per_arm);
    const double var =
        control_sq / static_cast<double>(spec.samples_per_arm) - control_mean * control_mean;
    const double se = std::sqrt(2.0 * var / static_cast<double>(spec.samples_per_arm));
    CHECK(std::fabs(control_mean - treatment_mean) < 5.0 * se + 1e-12);
  }
}

TEST_CASE("compositional: invalid specs rejected") {
  auto spec = CompositionalSpec::defaults();
  spec.dispersion = 1.5;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = CompositionalSpec::defaults();
  spec.proportion_means[0] = -0.1;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = CompositionalSpec::defaults();
  spec.proportion_means[0] += 0.5;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = CompositionalSpec::defaults();
  for (auto& g : spec.groups) g = TaxonGroup::unchanged;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
