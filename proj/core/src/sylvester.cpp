#include "biadmm/sylvester.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace biadmm {

SylvesterSolver::SylvesterSolver(const SymmetricOperator& M, const SymmetricOperator& N)
    : em_(sym_eigen(M)), en_(sym_eigen(N)) {
  const std::size_t n = M.dim();
  const std::size_t p = N.dim();
  inv_denom_ = Matrix(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const double denom = em_.values[i] + en_.values[j];
      if (denom <= 1e-12)
        throw std::invalid_argument("SylvesterSolver: singular pencil (eigenvalue sum <= 1e-12)");
      inv_denom_(i, j) = 1.0 / denom;
    }
  }
}

void SylvesterSolver::solve_into(const Matrix& G, Matrix& out, Matrix& scratch1,
                                 Matrix& scratch2) const {
  const std::size_t n = em_.vectors.rows();
  const std::size_t p = en_.vectors.rows();
  if (G.rows() != n || G.cols() != p)
    throw std::invalid_argument("SylvesterSolver: G has wrong shape");

  // A = Qm [ (Qm^T G Qn) ./ (lambda_i + theta_j) ] Qn^T
  matmul_tn_into(em_.vectors, G, scratch1);        // Qm^T G
  matmul_into(scratch1, en_.vectors, scratch2);    // Qm^T G Qn
  double* s = scratch2.data();
  const double* r = inv_denom_.data();
  for (std::size_t t = 0; t < scratch2.size(); ++t) s[t] *= r[t];
  matmul_into(em_.vectors, scratch2, scratch1);    // Qm (...)
  matmul_nt_into(scratch1, en_.vectors, out);      // ... Qn^T
}

Matrix SylvesterSolver::solve(const Matrix& G) const {
  Matrix out, s1, s2;
  solve_into(G, out, s1, s2);
  return out;
}

Matrix solve_sylvester(const SymmetricOperator& M, const SymmetricOperator& N, const Matrix& G) {
  return SylvesterSolver(M, N).solve(G);
}

namespace {

// Plain Gaussian elimination with partial pivoting; test-scale only.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b, std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::fabs(a[perm[col] * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double cand = std::fabs(a[perm[r] * n + col]);
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best == 0.0) throw std::runtime_error("kron_oracle: singular system");
    std::swap(perm[col], perm[pivot]);

    const std::size_t prow = perm[col];
    const double pval = a[prow * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const std::size_t row = perm[r];
      const double factor = a[row * n + col] / pval;
      if (factor == 0.0) continue;
      a[row * n + col] = 0.0;
      for (std::size_t c = col + 1; c < n; ++c) a[row * n + c] -= factor * a[prow * n + c];
      b[row] -= factor * b[prow];
    }
  }

  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t row = perm[i];
    double acc = b[row];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[row * n + c] * x[c];
    x[i] = acc / a[row * n + i];
  }
  return x;
}

}  // namespace

Matrix kron_oracle(const SymmetricOperator& M, const SymmetricOperator& N, const Matrix& G) {
  const std::size_t n = M.dim();
  const std::size_t p = N.dim();
  if (G.rows() != n || G.cols() != p) throw std::invalid_argument("kron_oracle: G has wrong shape");
  const std::size_t np = n * p;
  if (np > 400) throw std::invalid_argument("kron_oracle: np > 400 (oracle is for tests only)");

  // Column-major vec ordering: entry (i, j) of A sits at index j*n + i.
  std::vector<double> system(np * np, 0.0);
  std::vector<double> rhs(np, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t row = j * n + i;
      rhs[row] = G(i, j);
      for (std::size_t ii = 0; ii < n; ++ii) system[row * np + (j * n + ii)] += M.values(i, ii);
      for (std::size_t jj = 0; jj < p; ++jj) system[row * np + (jj * n + i)] += N.values(j, jj);
    }
  }

  const std::vector<double> x = solve_dense(std::move(system), std::move(rhs), np);
  Matrix A(n, p);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t i = 0; i < n; ++i) A(i, j) = x[j * n + i];
  return A;
}

}  // namespace biadmm
