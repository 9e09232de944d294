#include "biadmm/clusters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace biadmm {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<int> components_to_labels(UnionFind& uf, std::size_t n, int& count) {
  std::vector<int> labels(n, -1);
  std::unordered_map<std::size_t, int> seen;
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = uf.find(i);
    auto [it, inserted] = seen.emplace(root, next);
    if (inserted) ++next;
    labels[i] = it->second;
  }
  count = next;
  return labels;
}

double row_norm2(const Matrix& m, std::size_t r) {
  const double* v = m.row(r);
  double acc = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) acc += v[j] * v[j];
  return std::sqrt(acc);
}

}  // namespace

BiclusterLabels extract_labels(const FitResult& result, const WeightedEdgeSet& rows,
                               const WeightedEdgeSet& cols, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("extract_labels: eps must be >= 0");
  const std::size_t n = result.A_hat.rows();
  const std::size_t p = result.A_hat.cols();
  const double scale =
      std::max(1.0, frobenius_norm(result.A_hat) / std::sqrt(static_cast<double>(n * p)));
  const double threshold = eps * scale;

  UnionFind row_uf(n);
  for (std::size_t l = 0; l < rows.size(); ++l) {
    if (row_norm2(result.V_final, l) <= threshold)
      row_uf.unite(rows.edges[l].a, rows.edges[l].b);
  }
  UnionFind col_uf(p);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (row_norm2(result.Z_final, k) <= threshold)
      col_uf.unite(cols.edges[k].a, cols.edges[k].b);
  }

  BiclusterLabels out;
  out.row_labels = components_to_labels(row_uf, n, out.n_row_clusters);
  out.col_labels = components_to_labels(col_uf, p, out.n_col_clusters);
  return out;
}

std::vector<int> canonicalize_labels(const std::vector<int>& labels) {
  std::vector<int> out(labels.size());
  std::unordered_map<int, int> seen;
  int next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = seen.emplace(labels[i], next);
    if (inserted) ++next;
    out[i] = it->second;
  }
  return out;
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("adjusted_rand_index: length mismatch");
  if (a.size() < 2) throw std::invalid_argument("adjusted_rand_index: need at least 2 items");

  const std::vector<int> ca = canonicalize_labels(a);
  const std::vector<int> cb = canonicalize_labels(b);
  const int ka = 1 + *std::max_element(ca.begin(), ca.end());
  const int kb = 1 + *std::max_element(cb.begin(), cb.end());

  std::vector<long long> contingency(static_cast<std::size_t>(ka) * kb, 0);
  std::vector<long long> row_sums(ka, 0), col_sums(kb, 0);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    ++contingency[static_cast<std::size_t>(ca[i]) * kb + cb[i]];
    ++row_sums[ca[i]];
    ++col_sums[cb[i]];
  }

  auto comb2 = [](long long m) -> double {
    return 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
  };

  double sum_cells = 0.0;
  for (long long c : contingency) sum_cells += comb2(c);
  double sum_rows = 0.0;
  for (long long r : row_sums) sum_rows += comb2(r);
  double sum_cols = 0.0;
  for (long long c : col_sums) sum_cols += comb2(c);
  const double total_pairs = comb2(static_cast<long long>(ca.size()));

  const double expected = sum_rows * sum_cols / total_pairs;
  const double maximum = 0.5 * (sum_rows + sum_cols);
  const double denom = maximum - expected;
  if (std::fabs(denom) < 1e-12) return ca == cb ? 1.0 : 0.0;
  return (sum_cells - expected) / denom;
}

std::vector<int> product_labels(const std::vector<int>& row_labels,
                                const std::vector<int>& col_labels) {
  const std::vector<int> r = canonicalize_labels(row_labels);
  const std::vector<int> c = canonicalize_labels(col_labels);
  const int kc = c.empty() ? 0 : 1 + *std::max_element(c.begin(), c.end());
  std::vector<int> out;
  out.reserve(r.size() * c.size());
  for (int ri : r)
    for (int ci : c) out.push_back(ri * kc + ci);
  return out;
}

BiclusterAri bicluster_ari(const BiclusterLabels& a, const BiclusterLabels& b) {
  BiclusterAri out;
  out.rows = adjusted_rand_index(a.row_labels, b.row_labels);
  out.cols = adjusted_rand_index(a.col_labels, b.col_labels);
  out.product = adjusted_rand_index(product_labels(a.row_labels, a.col_labels),
                                    product_labels(b.row_labels, b.col_labels));
  return out;
}

}  // namespace biadmm
