#pragma once

#include <cstddef>
#include <vector>

namespace biadmm {

enum class PenaltyNorm { l1, l2, linf };

/// Shrinkage specification for prox_{sigma * ||.||_q}.
struct ProxSpec {
  PenaltyNorm q = PenaltyNorm::l2;
  double sigma = 0.0;
};

/// v = argmin_v sigma*||v||_q + 0.5*||u - v||_2^2.
///   q = 1:   elementwise soft threshold
///   q = 2:   block soft threshold (v = 0 when ||u||_2 <= sigma)
///   q = inf: Moreau decomposition, v = u - proj_{sigma * B1}(u)
/// The in-place form may alias out with u. The l1/l2 branches do not
/// allocate.
void prox_into(const double* u, double* out, std::size_t dim, const ProxSpec& spec);
std::vector<double> prox(const std::vector<double>& u, const ProxSpec& spec);

/// Euclidean projection onto {x : ||x||_1 <= radius} via the sorted
/// threshold construction. Returns u unchanged when already inside the ball.
void project_l1_ball_into(const double* u, double* out, std::size_t dim, double radius);
std::vector<double> project_l1_ball(const std::vector<double>& u, double radius);

double vector_norm(const double* v, std::size_t dim, PenaltyNorm q);

}  // namespace biadmm
