#include "biadmm/admm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "biadmm/sylvester.hpp"

namespace biadmm {

AdmmConfig AdmmConfig::compositional_defaults() {
  AdmmConfig c;
  c.nu1 = 1.0;
  c.nu2 = 1.0;
  c.nu3 = 1.0;
  c.compositional = true;
  return c;
}

void AdmmConfig::validate() const {
  if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0))
    throw std::invalid_argument("AdmmConfig: gamma1/gamma2 must be >= 0");
  if (!(nu1 > 0.0) || !(nu2 > 0.0)) throw std::invalid_argument("AdmmConfig: nu1/nu2 must be > 0");
  if (compositional && !(nu3 > 0.0))
    throw std::invalid_argument("AdmmConfig: nu3 must be > 0 for compositional fits");
  if (max_iters < 1) throw std::invalid_argument("AdmmConfig: max_iters must be >= 1");
  if (!(tol_primal >= 0.0) || !(tol_dual >= 0.0))
    throw std::invalid_argument("AdmmConfig: tolerances must be >= 0");
}

std::pair<SymmetricOperator, SymmetricOperator> assemble_MN(const WeightedEdgeSet& rows,
                                                            const WeightedEdgeSet& cols,
                                                            const AdmmConfig& config,
                                                            std::size_t n, std::size_t p) {
  if (rows.dimension != n) throw std::invalid_argument("assemble_MN: row edge set dimension != n");
  if (cols.dimension != p)
    throw std::invalid_argument("assemble_MN: column edge set dimension != p");

  Matrix M = Matrix::identity(n);
  for (const Edge& e : rows.edges) {
    M(e.a, e.a) += config.nu1;
    M(e.b, e.b) += config.nu1;
    M(e.a, e.b) -= config.nu1;
    M(e.b, e.a) -= config.nu1;
  }

  Matrix N(p, p, 0.0);
  for (const Edge& e : cols.edges) {
    N(e.a, e.a) += config.nu2;
    N(e.b, e.b) += config.nu2;
    N(e.a, e.b) -= config.nu2;
    N(e.b, e.a) -= config.nu2;
  }
  if (config.compositional) {
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) N(i, j) += config.nu3;
  }

  return {SymmetricOperator{std::move(M)}, SymmetricOperator{std::move(N)}};
}

namespace {

void add_g_terms(Matrix& G, const Matrix& V, const Matrix& L1, const Matrix& Z, const Matrix& L2,
                 const WeightedEdgeSet& rows, const WeightedEdgeSet& cols, const AdmmConfig& config,
                 const std::vector<double>* s) {
  const std::size_t n = G.rows();
  const std::size_t p = G.cols();

  for (std::size_t l = 0; l < rows.size(); ++l) {
    const Edge& e = rows.edges[l];
    const double* lam = L1.row(l);
    const double* v = V.row(l);
    double* ga = G.row(e.a);
    double* gb = G.row(e.b);
    for (std::size_t j = 0; j < p; ++j) {
      const double term = lam[j] + config.nu1 * v[j];
      ga[j] += term;
      gb[j] -= term;
    }
  }
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Edge& e = cols.edges[k];
    const double* lam = L2.row(k);
    const double* z = Z.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      const double term = lam[i] + config.nu2 * z[i];
      G(i, e.a) += term;
      G(i, e.b) -= term;
    }
  }
  if (config.compositional) {
    if (s == nullptr || s->size() != n)
      throw std::invalid_argument("assemble_G: compositional fit needs s of length n");
    for (std::size_t i = 0; i < n; ++i) {
      const double term = config.nu3 * (*s)[i];
      double* gi = G.row(i);
      for (std::size_t j = 0; j < p; ++j) gi[j] += term;
    }
  }
}

double block_norm2(const double* v, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) acc += v[i] * v[i];
  return std::sqrt(acc);
}

}  // namespace

Matrix assemble_G(const Matrix& X, const Matrix& V, const Matrix& L1, const Matrix& Z,
                  const Matrix& L2, const WeightedEdgeSet& rows, const WeightedEdgeSet& cols,
                  const AdmmConfig& config, const std::vector<double>* s) {
  Matrix G = X;
  add_g_terms(G, V, L1, Z, L2, rows, cols, config, s);
  return G;
}

std::pair<double, double> residuals(const AdmmState& state, const AdmmState& prev,
                                    const WeightedEdgeSet& rows, const WeightedEdgeSet& cols,
                                    const AdmmConfig& config) {
  const Matrix& A = state.A;
  const std::size_t n = A.rows();
  const std::size_t p = A.cols();

  double primal = 0.0;
  std::vector<double> buf(std::max(n, p));
  for (std::size_t l = 0; l < rows.size(); ++l) {
    const Edge& e = rows.edges[l];
    const double* v = state.V.row(l);
    const double* ra = A.row(e.a);
    const double* rb = A.row(e.b);
    for (std::size_t j = 0; j < p; ++j) buf[j] = v[j] - ra[j] + rb[j];
    primal = std::max(primal, block_norm2(buf.data(), p));
  }
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Edge& e = cols.edges[k];
    const double* z = state.Z.row(k);
    for (std::size_t i = 0; i < n; ++i) buf[i] = z[i] - A(i, e.a) + A(i, e.b);
    primal = std::max(primal, block_norm2(buf.data(), n));
  }
  if (config.compositional) {
    for (std::size_t i = 0; i < n; ++i) {
      double row_sum = 0.0;
      const double* ri = A.row(i);
      for (std::size_t j = 0; j < p; ++j) row_sum += ri[j];
      buf[i] = 1.0 - row_sum;
    }
    primal = std::max(primal, block_norm2(buf.data(), n));
  }

  double dual = 0.0;
  for (std::size_t l = 0; l < rows.size(); ++l) {
    const double* v = state.V.row(l);
    const double* vp = prev.V.row(l);
    for (std::size_t j = 0; j < p; ++j) buf[j] = v[j] - vp[j];
    dual = std::max(dual, config.nu1 * block_norm2(buf.data(), p));
  }
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const double* z = state.Z.row(k);
    const double* zp = prev.Z.row(k);
    for (std::size_t i = 0; i < n; ++i) buf[i] = z[i] - zp[i];
    dual = std::max(dual, config.nu2 * block_norm2(buf.data(), n));
  }
  return {primal, dual};
}

double objective_value(const Matrix& X, const Matrix& A, const WeightedEdgeSet& rows,
                       const WeightedEdgeSet& cols, double gamma1, double gamma2, PenaltyNorm q) {
  if (X.rows() != A.rows() || X.cols() != A.cols())
    throw std::invalid_argument("objective_value: X and A shapes differ");
  const std::size_t n = X.rows();
  const std::size_t p = X.cols();

  double loss = 0.0;
  for (std::size_t t = 0; t < X.size(); ++t) {
    const double diff = X.data()[t] - A.data()[t];
    loss += diff * diff;
  }
  double value = 0.5 * loss;

  std::vector<double> buf(std::max(n, p));
  for (std::size_t l = 0; l < rows.size(); ++l) {
    const Edge& e = rows.edges[l];
    const double* ra = A.row(e.a);
    const double* rb = A.row(e.b);
    for (std::size_t j = 0; j < p; ++j) buf[j] = ra[j] - rb[j];
    value += gamma1 * rows.weights[l] * vector_norm(buf.data(), p, q);
  }
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Edge& e = cols.edges[k];
    for (std::size_t i = 0; i < n; ++i) buf[i] = A(i, e.a) - A(i, e.b);
    value += gamma2 * cols.weights[k] * vector_norm(buf.data(), n, q);
  }
  return value;
}

namespace {

AdmmState default_init(const Matrix& X, const WeightedEdgeSet& rows, const WeightedEdgeSet& cols) {
  const std::size_t n = X.rows();
  const std::size_t p = X.cols();
  AdmmState st;
  st.A = X;
  st.V = Matrix(rows.size(), p);
  st.Z = Matrix(cols.size(), n);
  st.L1 = Matrix(rows.size(), p, 0.0);
  st.L2 = Matrix(cols.size(), n, 0.0);
  st.L3.assign(n, 0.0);
  for (std::size_t l = 0; l < rows.size(); ++l) {
    const Edge& e = rows.edges[l];
    double* v = st.V.row(l);
    const double* ra = X.row(e.a);
    const double* rb = X.row(e.b);
    for (std::size_t j = 0; j < p; ++j) v[j] = ra[j] - rb[j];
  }
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Edge& e = cols.edges[k];
    double* z = st.Z.row(k);
    for (std::size_t i = 0; i < n; ++i) z[i] = X(i, e.a) - X(i, e.b);
  }
  return st;
}

[[noreturn]] void abort_non_finite(std::size_t iter, const char* block) {
  throw std::runtime_error("fit: non-finite iterate at iteration " + std::to_string(iter) +
                           " in block " + block);
}

}  // namespace

FitResult fit(const Matrix& X, const WeightedEdgeSet& rows, const WeightedEdgeSet& cols,
              const AdmmConfig& config, const std::optional<AdmmState>& init) {
  config.validate();
  rows.validate();
  cols.validate();
  const std::size_t n = X.rows();
  const std::size_t p = X.cols();
  if (n < 2 || p < 2) throw std::invalid_argument("fit: need n >= 2 and p >= 2");
  if (!X.all_finite()) throw std::invalid_argument("fit: X has non-finite entries");
  if (rows.dimension != n) throw std::invalid_argument("fit: row edge set dimension != n");
  if (cols.dimension != p) throw std::invalid_argument("fit: column edge set dimension != p");
  if (config.compositional) {
    for (std::size_t i = 0; i < n; ++i) {
      double row_sum = 0.0;
      for (std::size_t j = 0; j < p; ++j) row_sum += X(i, j);
      if (std::fabs(row_sum - 1.0) > 1e-6)
        throw std::invalid_argument("fit: compositional X row " + std::to_string(i) +
                                    " does not sum to 1");
    }
  }

  auto [M, N] = assemble_MN(rows, cols, config, n, p);
  const SylvesterSolver solver(M, N);

  AdmmState st = init.has_value() ? *init : default_init(X, rows, cols);
  if (st.A.rows() != n || st.A.cols() != p || st.V.rows() != rows.size() || st.V.cols() != p ||
      st.Z.rows() != cols.size() || st.Z.cols() != n || st.L1.rows() != rows.size() ||
      st.L2.rows() != cols.size() || st.L3.size() != n)
    throw std::invalid_argument("fit: init state has inconsistent shapes");

  // Per-edge shrinkage levels sigma = gamma * w / nu.
  std::vector<double> sigma1(rows.size()), sigma2(cols.size());
  for (std::size_t l = 0; l < rows.size(); ++l)
    sigma1[l] = config.gamma1 * rows.weights[l] / config.nu1;
  for (std::size_t k = 0; k < cols.size(); ++k)
    sigma2[k] = config.gamma2 * cols.weights[k] / config.nu2;

  Matrix G(n, p), At(p, n), scratch1, scratch2;
  std::vector<double> s_vec(n, 0.0);
  std::vector<double> buf(std::max(n, p));

  double primal = 0.0, dual = 0.0;
  bool converged = false;

  for (std::size_t iter = 1; iter <= config.max_iters; ++iter) {
    // Step 1: A-update through the Sylvester solve.
    G = X;
    if (config.compositional) {
      for (std::size_t i = 0; i < n; ++i) s_vec[i] = 1.0 + st.L3[i] / config.nu3;
    }
    add_g_terms(G, st.V, st.L1, st.Z, st.L2, rows, cols, config,
                config.compositional ? &s_vec : nullptr);
    solver.solve_into(G, st.A, scratch1, scratch2);
    if (!st.A.all_finite()) abort_non_finite(iter, "A");
    transpose_into(st.A, At);

    primal = 0.0;
    dual = 0.0;

    // Step 2a: V-update (row fusion blocks), then its dual ascent.
    for (std::size_t l = 0; l < rows.size(); ++l) {
      const Edge& e = rows.edges[l];
      const double* ra = st.A.row(e.a);
      const double* rb = st.A.row(e.b);
      const double* lam = st.L1.row(l);
      double* v = st.V.row(l);
      const double inv_nu = 1.0 / config.nu1;
      double change_sq = 0.0, violation_sq = 0.0;
      for (std::size_t j = 0; j < p; ++j) buf[j] = ra[j] - rb[j] - lam[j] * inv_nu;
      const ProxSpec spec{config.q, sigma1[l]};
      prox_into(buf.data(), buf.data(), p, spec);
      double* lam_mut = st.L1.row(l);
      for (std::size_t j = 0; j < p; ++j) {
        const double v_new = buf[j];
        const double delta = v_new - v[j];
        change_sq += delta * delta;
        const double mismatch = v_new - ra[j] + rb[j];
        violation_sq += mismatch * mismatch;
        lam_mut[j] += config.nu1 * mismatch;
        v[j] = v_new;
      }
      if (!std::isfinite(change_sq + violation_sq)) abort_non_finite(iter, "V");
      dual = std::max(dual, config.nu1 * std::sqrt(change_sq));
      primal = std::max(primal, std::sqrt(violation_sq));
    }

    // Step 2b: Z-update (column fusion blocks) and dual ascent, on A^T rows.
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const Edge& e = cols.edges[k];
      const double* ca = At.row(e.a);
      const double* cb = At.row(e.b);
      double* z = st.Z.row(k);
      double* lam = st.L2.row(k);
      const double inv_nu = 1.0 / config.nu2;
      double change_sq = 0.0, violation_sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) buf[i] = ca[i] - cb[i] - lam[i] * inv_nu;
      const ProxSpec spec{config.q, sigma2[k]};
      prox_into(buf.data(), buf.data(), n, spec);
      for (std::size_t i = 0; i < n; ++i) {
        const double z_new = buf[i];
        const double delta = z_new - z[i];
        change_sq += delta * delta;
        const double mismatch = z_new - ca[i] + cb[i];
        violation_sq += mismatch * mismatch;
        lam[i] += config.nu2 * mismatch;
        z[i] = z_new;
      }
      if (!std::isfinite(change_sq + violation_sq)) abort_non_finite(iter, "Z");
      dual = std::max(dual, config.nu2 * std::sqrt(change_sq));
      primal = std::max(primal, std::sqrt(violation_sq));
    }

    // Step 3: row-sum dual for the compositional constraint.
    if (config.compositional) {
      double violation_sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        const double* ri = st.A.row(i);
        for (std::size_t j = 0; j < p; ++j) row_sum += ri[j];
        const double mismatch = 1.0 - row_sum;
        violation_sq += mismatch * mismatch;
        st.L3[i] += config.nu3 * mismatch;
      }
      if (!std::isfinite(violation_sq)) abort_non_finite(iter, "L3");
      primal = std::max(primal, std::sqrt(violation_sq));
    }

    st.iter = iter;
    if (primal <= config.tol_primal && dual <= config.tol_dual) {
      converged = true;
      break;
    }
  }

  FitResult result;
  result.A_hat = std::move(st.A);
  result.V_final = std::move(st.V);
  result.Z_final = std::move(st.Z);
  result.iterations = st.iter;
  result.primal_residual = primal;
  result.dual_residual = dual;
  result.converged = converged;
  result.objective =
      objective_value(X, result.A_hat, rows, cols, config.gamma1, config.gamma2, config.q);
  return result;
}

}  // namespace biadmm
