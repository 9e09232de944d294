#include "biadmm/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "biadmm/parallel.hpp"
#include "biadmm/rng.hpp"

namespace biadmm {

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<std::pair<double, double>> TuningGrid::points() const {
  validate();
  std::vector<std::pair<double, double>> out;
  if (coupled) {
    for (double g : gamma1_values) out.emplace_back(g, g);
    return out;
  }
  for (double g1 : gamma1_values)
    for (double g2 : gamma2_values) out.emplace_back(g1, g2);
  return out;
}

void TuningGrid::validate() const {
  auto check = [](const std::vector<double>& v, const char* what) {
    if (v.empty()) throw std::invalid_argument(std::string("TuningGrid: empty ") + what);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(v[i] > 0.0))
        throw std::invalid_argument(std::string("TuningGrid: ") + what + " must be > 0");
      if (i > 0 && !(v[i] > v[i - 1]))
        throw std::invalid_argument(std::string("TuningGrid: ") + what +
                                    " must be strictly ascending");
    }
  };
  check(gamma1_values, "gamma1 values");
  check(gamma2_values, "gamma2 values");
  if (coupled && gamma1_values != gamma2_values)
    throw std::invalid_argument("TuningGrid: coupled grid needs matching sequences");
}

TuningGrid TuningGrid::log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw std::invalid_argument("TuningGrid::log_spaced: need 0 < lo < hi and count >= 2");
  std::vector<double> values(count);
  const double step = (std::log(hi) - std::log(lo)) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i)
    values[i] = std::exp(std::log(lo) + step * static_cast<double>(i));
  values.back() = hi;
  TuningGrid grid;
  grid.gamma1_values = values;
  grid.gamma2_values = std::move(values);
  return grid;
}

TuningGrid TuningGrid::coupled_grid(std::vector<double> gammas) {
  TuningGrid grid;
  grid.gamma1_values = gammas;
  grid.gamma2_values = std::move(gammas);
  grid.coupled = true;
  return grid;
}

std::pair<WeightedEdgeSet, WeightedEdgeSet> GraphSpec::build(const Matrix& X) const {
  WeightedEdgeSet rows =
      full_graph ? full_edge_set(X.rows()) : build_knn_weights(X, Axis::rows, m1, phi);
  WeightedEdgeSet cols =
      full_graph ? full_edge_set(X.cols()) : build_knn_weights(X, Axis::columns, m2, phi);
  if (rescale_single_gamma) {
    auto rescaled = biadmm::rescale_single_gamma(rows, cols, X.rows(), X.cols());
    return rescaled;
  }
  return {std::move(rows), std::move(cols)};
}

namespace {

AdmmConfig with_gammas(const AdmmConfig& base, double g1, double g2) {
  AdmmConfig c = base;
  c.gamma1 = g1;
  c.gamma2 = g2;
  return c;
}

}  // namespace

TuningReport holdout_validate(const Matrix& X, const WeightedEdgeSet& rows,
                              const WeightedEdgeSet& cols, const TuningGrid& grid,
                              const AdmmConfig& base, double holdout_frac, std::uint64_t seed,
                              unsigned threads) {
  if (!(holdout_frac > 0.0) || !(holdout_frac < 0.5))
    throw std::invalid_argument("holdout_validate: need 0 < holdout_frac < 0.5");
  const std::size_t n = X.rows();
  const std::size_t p = X.cols();

  // Draw the mask; re-draw when a column loses every entry.
  std::vector<char> masked(n * p, 0);
  bool mask_ok = false;
  Rng rng(seed);
  for (int attempt = 0; attempt < 10 && !mask_ok; ++attempt) {
    std::fill(masked.begin(), masked.end(), 0);
    for (std::size_t t = 0; t < n * p; ++t) masked[t] = rng.uniform() < holdout_frac ? 1 : 0;
    mask_ok = true;
    for (std::size_t j = 0; j < p && mask_ok; ++j) {
      bool any_kept = false;
      for (std::size_t i = 0; i < n; ++i)
        if (!masked[i * p + j]) {
          any_kept = true;
          break;
        }
      mask_ok = any_kept;
    }
  }
  if (!mask_ok)
    throw std::runtime_error("holdout_validate: a column stayed fully masked after 10 re-draws");

  // Impute masked cells with the column mean of the kept cells.
  Matrix X_imputed = X;
  for (std::size_t j = 0; j < p; ++j) {
    double total = 0.0;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!masked[i * p + j]) {
        total += X(i, j);
        ++kept;
      }
    }
    const double mean = total / static_cast<double>(kept);
    for (std::size_t i = 0; i < n; ++i)
      if (masked[i * p + j]) X_imputed(i, j) = mean;
  }

  const auto points = grid.points();
  TuningReport report;
  report.method = "holdout";
  report.table.resize(points.size());

  parallel_for(points.size(), threads, [&](std::size_t idx) {
    const auto [g1, g2] = points[idx];
    const FitResult fitres = fit(X_imputed, rows, cols, with_gammas(base, g1, g2));
    double sq_error = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        if (!masked[i * p + j]) continue;
        const double diff = fitres.A_hat(i, j) - X(i, j);
        sq_error += diff * diff;
        ++count;
      }
    }
    report.table[idx] = {g1, g2, sq_error / static_cast<double>(count)};
  });

  std::size_t best = 0;
  for (std::size_t idx = 1; idx < report.table.size(); ++idx) {
    const auto& cand = report.table[idx];
    const auto& cur = report.table[best];
    if (cand.score < cur.score ||
        (cand.score == cur.score && cand.gamma1 + cand.gamma2 > cur.gamma1 + cur.gamma2))
      best = idx;
  }
  report.selected_gamma1 = report.table[best].gamma1;
  report.selected_gamma2 = report.table[best].gamma2;
  return report;
}

namespace {

// Bootstrap row indices with at least two distinct rows.
std::vector<std::size_t> bootstrap_rows(Rng& rng, std::size_t n) {
  for (;;) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = rng.uniform_below(n);
    bool distinct = false;
    for (std::size_t i = 1; i < n && !distinct; ++i) distinct = idx[i] != idx[0];
    if (distinct) return idx;
  }
}

Matrix take_rows(const Matrix& X, const std::vector<std::size_t>& idx) {
  Matrix out(idx.size(), X.cols());
  for (std::size_t i = 0; i < idx.size(); ++i)
    std::copy(X.row(idx[i]), X.row(idx[i]) + X.cols(), out.row(i));
  return out;
}

}  // namespace

namespace {

// Row-partition agreement between two bootstrap fits, evaluated on the
// original rows sampled by both (first occurrence in each resample).
double shared_row_agreement(const std::vector<std::size_t>& idx_a,
                            const std::vector<std::size_t>& idx_b,
                            const std::vector<int>& labels_a, const std::vector<int>& labels_b,
                            std::size_t n) {
  std::vector<int> first_a(n, -1), first_b(n, -1);
  for (std::size_t i = idx_a.size(); i-- > 0;) first_a[idx_a[i]] = labels_a[i];
  for (std::size_t i = idx_b.size(); i-- > 0;) first_b[idx_b[i]] = labels_b[i];
  std::vector<int> shared_a, shared_b;
  for (std::size_t r = 0; r < n; ++r) {
    if (first_a[r] >= 0 && first_b[r] >= 0) {
      shared_a.push_back(first_a[r]);
      shared_b.push_back(first_b[r]);
    }
  }
  if (shared_a.size() < 2) return 0.0;
  bool trivial_a = true, trivial_b = true;
  for (std::size_t i = 1; i < shared_a.size(); ++i) {
    trivial_a = trivial_a && shared_a[i] == shared_a[0];
    trivial_b = trivial_b && shared_b[i] == shared_b[0];
  }
  if (trivial_a || trivial_b) return 0.0;
  return adjusted_rand_index(shared_a, shared_b);
}

}  // namespace

TuningReport stability_select(const Matrix& X, const GraphSpec& graphs, const TuningGrid& grid,
                              const AdmmConfig& base, std::size_t repetitions, std::uint64_t seed,
                              unsigned threads) {
  if (repetitions < 2) throw std::invalid_argument("stability_select: repetitions must be >= 2");
  const auto points = grid.points();

  // agreement[rep][point]
  std::vector<std::vector<double>> agreement(repetitions,
                                             std::vector<double>(points.size(), 0.0));
  parallel_for(repetitions, threads, [&](std::size_t rep) {
    Rng rng = Rng::substream(seed, rep);
    const std::vector<std::size_t> idx_a = bootstrap_rows(rng, X.rows());
    const std::vector<std::size_t> idx_b = bootstrap_rows(rng, X.rows());
    const Matrix Xa = take_rows(X, idx_a);
    const Matrix Xb = take_rows(X, idx_b);
    const auto [rows_a, cols_a] = graphs.build(Xa);
    const auto [rows_b, cols_b] = graphs.build(Xb);
    for (std::size_t idx = 0; idx < points.size(); ++idx) {
      const auto [g1, g2] = points[idx];
      const AdmmConfig config = with_gammas(base, g1, g2);
      const FitResult fit_a = fit(Xa, rows_a, cols_a, config);
      const FitResult fit_b = fit(Xb, rows_b, cols_b, config);
      const BiclusterLabels lab_a = extract_labels(fit_a, rows_a, cols_a);
      const BiclusterLabels lab_b = extract_labels(fit_b, rows_b, cols_b);
      // Columns are shared across the two resamples, so their partitions
      // compare directly; rows compare on the commonly sampled originals.
      // All-fused partitions carry no grouping information and score 0.
      double col_part = 0.0;
      if (lab_a.n_col_clusters > 1 && lab_b.n_col_clusters > 1)
        col_part = adjusted_rand_index(lab_a.col_labels, lab_b.col_labels);
      const double row_part =
          shared_row_agreement(idx_a, idx_b, lab_a.row_labels, lab_b.row_labels, X.rows());
      agreement[rep][idx] = 0.5 * (row_part + col_part);
    }
  });

  TuningReport report;
  report.method = "stability";
  report.table.resize(points.size());
  for (std::size_t idx = 0; idx < points.size(); ++idx) {
    double total = 0.0;
    for (std::size_t rep = 0; rep < repetitions; ++rep) total += agreement[rep][idx];
    report.table[idx] = {points[idx].first, points[idx].second,
                         total / static_cast<double>(repetitions)};
  }

  std::size_t best = 0;
  for (std::size_t idx = 1; idx < report.table.size(); ++idx)
    if (report.table[idx].score > report.table[best].score) best = idx;
  report.selected_gamma1 = report.table[best].gamma1;
  report.selected_gamma2 = report.table[best].gamma2;
  return report;
}

TuningReport ari_oracle_tune(const Matrix& X_valid, const WeightedEdgeSet& rows,
                             const WeightedEdgeSet& cols, const BiclusterLabels& truth,
                             const TuningGrid& grid, const AdmmConfig& base, unsigned threads) {
  const auto points = grid.points();
  const std::vector<int> truth_product = product_labels(truth.row_labels, truth.col_labels);

  TuningReport report;
  report.method = "ari_oracle";
  report.table.resize(points.size());
  parallel_for(points.size(), threads, [&](std::size_t idx) {
    const auto [g1, g2] = points[idx];
    const FitResult fitres = fit(X_valid, rows, cols, with_gammas(base, g1, g2));
    const BiclusterLabels labels = extract_labels(fitres, rows, cols);
    const std::vector<int> estimated = product_labels(labels.row_labels, labels.col_labels);
    report.table[idx] = {g1, g2, adjusted_rand_index(estimated, truth_product)};
  });

  // Validation ARI usually saturates over a gamma plateau; both plateau edges
  // sit next to cliffs (no fusion below, over-fusion above), so ties resolve
  // to the middle of the tied stretch.
  double best_score = report.table[0].score;
  for (const auto& entry : report.table) best_score = std::max(best_score, entry.score);
  std::vector<std::size_t> tied;
  for (std::size_t idx = 0; idx < report.table.size(); ++idx)
    if (report.table[idx].score == best_score) tied.push_back(idx);
  const std::size_t best = tied[tied.size() / 2];
  report.selected_gamma1 = report.table[best].gamma1;
  report.selected_gamma2 = report.table[best].gamma2;
  return report;
}

SingleGammaSetup single_gamma_mode(const WeightedEdgeSet& rows, const WeightedEdgeSet& cols,
                                   std::size_t n, std::size_t p, double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("single_gamma_mode: gamma must be >= 0");
  auto [r, c] = rescale_single_gamma(rows, cols, n, p);
  return SingleGammaSetup{gamma, gamma, std::move(r), std::move(c)};
}

}  // namespace biadmm
