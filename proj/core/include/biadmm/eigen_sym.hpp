#pragma once

#include <vector>

#include "biadmm/matrix.hpp"

namespace biadmm {

/// A d x d real symmetric matrix. Construction checks finiteness and that the
/// relative asymmetry max|a_ij - a_ji| / max(1, max|a_ij|) is below 1e-10.
struct SymmetricOperator {
  Matrix values;

  static SymmetricOperator from(Matrix m);
  std::size_t dim() const noexcept { return values.rows(); }
};

/// Orthogonal eigendecomposition S = Q diag(values) Q^T with eigenvalues in
/// ascending order. Columns of `vectors` are the eigenvectors.
struct EigenFactorization {
  Matrix vectors;
  std::vector<double> values;
};

/// Dense symmetric eigensolver: Householder tridiagonalization followed by
/// implicit-shift QL sweeps. Off-diagonal entries count as converged below
/// 1e-14 relative to the local diagonal scale; total sweep count is capped
/// at 100 * d.
EigenFactorization sym_eigen(const SymmetricOperator& S);

}  // namespace biadmm
