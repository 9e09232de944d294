#include "biadmm/prox.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace biadmm {

void project_l1_ball_into(const double* u, double* out, std::size_t dim, double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("project_l1_ball: radius must be >= 0");
  double l1 = 0.0;
  for (std::size_t i = 0; i < dim; ++i) l1 += std::fabs(u[i]);
  if (l1 <= radius) {
    if (out != u) std::copy(u, u + dim, out);
    return;
  }
  if (radius == 0.0) {
    std::fill(out, out + dim, 0.0);
    return;
  }

  // Threshold tau solves sum_i max(|u_i| - tau, 0) = radius over the sorted
  // magnitudes.
  std::vector<double> mags(u, u + dim);
  for (double& x : mags) x = std::fabs(x);
  std::sort(mags.begin(), mags.end(), std::greater<double>());

  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    cumulative += mags[k];
    const double candidate = (cumulative - radius) / static_cast<double>(k + 1);
    if (mags[k] > candidate) tau = candidate;
  }

  for (std::size_t i = 0; i < dim; ++i) {
    const double mag = std::fabs(u[i]) - tau;
    out[i] = mag > 0.0 ? std::copysign(mag, u[i]) : 0.0;
  }
}

std::vector<double> project_l1_ball(const std::vector<double>& u, double radius) {
  std::vector<double> out(u.size());
  project_l1_ball_into(u.data(), out.data(), u.size(), radius);
  return out;
}

void prox_into(const double* u, double* out, std::size_t dim, const ProxSpec& spec) {
  if (!(spec.sigma >= 0.0)) throw std::invalid_argument("prox: sigma must be >= 0");
  const double sigma = spec.sigma;
  switch (spec.q) {
    case PenaltyNorm::l1:
      for (std::size_t i = 0; i < dim; ++i) {
        const double mag = std::fabs(u[i]) - sigma;
        out[i] = mag > 0.0 ? std::copysign(mag, u[i]) : 0.0;
      }
      return;
    case PenaltyNorm::l2: {
      double norm_sq = 0.0;
      for (std::size_t i = 0; i < dim; ++i) norm_sq += u[i] * u[i];
      const double norm = std::sqrt(norm_sq);
      if (norm <= sigma) {
        std::fill(out, out + dim, 0.0);
        return;
      }
      const double factor = 1.0 - sigma / norm;
      for (std::size_t i = 0; i < dim; ++i) out[i] = factor * u[i];
      return;
    }
    case PenaltyNorm::linf: {
      std::vector<double> projected(dim);
      project_l1_ball_into(u, projected.data(), dim, sigma);
      for (std::size_t i = 0; i < dim; ++i) out[i] = u[i] - projected[i];
      return;
    }
  }
  throw std::invalid_argument("prox: unknown norm selector");
}

std::vector<double> prox(const std::vector<double>& u, const ProxSpec& spec) {
  std::vector<double> out(u.size());
  prox_into(u.data(), out.data(), u.size(), spec);
  return out;
}

double vector_norm(const double* v, std::size_t dim, PenaltyNorm q) {
  switch (q) {
    case PenaltyNorm::l1: {
      double acc = 0.0;
      for (std::size_t i = 0; i < dim; ++i) acc += std::fabs(v[i]);
      return acc;
    }
    case PenaltyNorm::l2: {
      double acc = 0.0;
      for (std::size_t i = 0; i < dim; ++i) acc += v[i] * v[i];
      return std::sqrt(acc);
    }
    case PenaltyNorm::linf: {
      double acc = 0.0;
      for (std::size_t i = 0; i < dim; ++i) acc = std::max(acc, std::fabs(v[i]));
      return acc;
    }
  }
  throw std::invalid_argument("vector_norm: unknown norm selector");
}

}  // namespace biadmm
