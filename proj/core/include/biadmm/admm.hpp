#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "biadmm/eigen_sym.hpp"
#include "biadmm/matrix.hpp"
#include "biadmm/prox.hpp"
#include "biadmm/weights.hpp"

namespace biadmm {

/// Solver configuration. nu1/nu2 default to 8, which suits dense numeric
/// data; compositional fits conventionally run with nu1 = nu2 = nu3 = 1
/// (see compositional_defaults).
struct AdmmConfig {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double nu1 = 8.0;
  double nu2 = 8.0;
  double nu3 = 1.0;
  PenaltyNorm q = PenaltyNorm::l2;
  std::size_t max_iters = 10000;
  double tol_primal = 1e-6;
  double tol_dual = 1e-6;
  bool compositional = false;

  static AdmmConfig general_defaults() { return AdmmConfig{}; }
  static AdmmConfig compositional_defaults();

  /// Throws std::invalid_argument on an out-of-range field.
  void validate() const;
};

/// Iterate state: primal matrix A, splitting blocks V (one row per row-edge,
/// length p) and Z (one row per column-edge, length n), their duals, and the
/// row-sum dual L3 used by the compositional variant.
struct AdmmState {
  Matrix A;
  Matrix V;
  Matrix Z;
  Matrix L1;
  Matrix L2;
  std::vector<double> L3;
  std::size_t iter = 0;
};

struct FitResult {
  Matrix A_hat;
  Matrix V_final;
  Matrix Z_final;
  std::size_t iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double objective = 0.0;
  bool converged = false;
};

/// M = I_n + nu1 * sum over row edges of (e_a - e_b)(e_a - e_b)^T;
/// N = nu2 * sum over column edges of the analogous outer products, plus
/// nu3 * ones*ones^T when compositional.
std::pair<SymmetricOperator, SymmetricOperator> assemble_MN(const WeightedEdgeSet& rows,
                                                            const WeightedEdgeSet& cols,
                                                            const AdmmConfig& config,
                                                            std::size_t n, std::size_t p);

/// Right-hand side of the A-update. `s` (length n) is required iff
/// config.compositional; it carries 1 + L3/nu3.
Matrix assemble_G(const Matrix& X, const Matrix& V, const Matrix& L1, const Matrix& Z,
                  const Matrix& L2, const WeightedEdgeSet& rows, const WeightedEdgeSet& cols,
                  const AdmmConfig& config, const std::vector<double>* s = nullptr);

/// Primal residual: max block norm of the constraint violations. Dual
/// residual: nu-scaled max block change of V and Z between `prev` and
/// `state`.
std::pair<double, double> residuals(const AdmmState& state, const AdmmState& prev,
                                    const WeightedEdgeSet& rows, const WeightedEdgeSet& cols,
                                    const AdmmConfig& config);

/// The convex biclustering objective:
/// 0.5*||X - A||_F^2 + gamma1 * sum_l w_l ||A_{a.} - A_{b.}||_q
///                   + gamma2 * sum_k u_k ||a_a - a_b||_q.
double objective_value(const Matrix& X, const Matrix& A, const WeightedEdgeSet& rows,
                       const WeightedEdgeSet& cols, double gamma1, double gamma2, PenaltyNorm q);

/// Run the full ADMM cycle until both residuals fall below tolerance or
/// max_iters is reached. By default V and Z start at the corresponding row
/// and column differences of X with zero duals; pass `init` to override.
/// Throws std::runtime_error naming iteration and block if an iterate goes
/// non-finite, and std::invalid_argument on config/shape errors (including
/// non-simplex rows when compositional).
FitResult fit(const Matrix& X, const WeightedEdgeSet& rows, const WeightedEdgeSet& cols,
              const AdmmConfig& config, const std::optional<AdmmState>& init = std::nullopt);

}  // namespace biadmm
