#pragma once

#include "biadmm/eigen_sym.hpp"
#include "biadmm/matrix.hpp"

namespace biadmm {

/// Solves M A + A N = G for symmetric M (n x n) and N (p x p) by
/// diagonalizing both operators once. Requires every eigenvalue sum
/// lambda_i(M) + theta_j(N) to stay above 1e-12; otherwise the pencil is
/// treated as singular and construction throws.
///
/// The factorizations are computed in the constructor and reused across
/// solves, which is what the ADMM loop wants: M and N never change within
/// a fit, only G does.
class SylvesterSolver {
 public:
  SylvesterSolver(const SymmetricOperator& M, const SymmetricOperator& N);

  /// out = solution A. Scratch matrices avoid per-call allocation.
  void solve_into(const Matrix& G, Matrix& out, Matrix& scratch1, Matrix& scratch2) const;
  Matrix solve(const Matrix& G) const;

  const EigenFactorization& m_eigen() const noexcept { return em_; }
  const EigenFactorization& n_eigen() const noexcept { return en_; }

 private:
  EigenFactorization em_;
  EigenFactorization en_;
  Matrix inv_denom_;  // 1 / (lambda_i + theta_j)
};

/// One-shot convenience wrapper around SylvesterSolver.
Matrix solve_sylvester(const SymmetricOperator& M, const SymmetricOperator& N, const Matrix& G);

/// Test oracle: assembles the np x np system
/// (I_p (x) M + N (x) I_n) vec(A) = vec(G) literally and solves it by
/// Gaussian elimination with partial pivoting. Deliberately shares nothing
/// with the eigendecomposition route above. Guarded to np <= 400.
Matrix kron_oracle(const SymmetricOperator& M, const SymmetricOperator& N, const Matrix& G);

}  // namespace biadmm
