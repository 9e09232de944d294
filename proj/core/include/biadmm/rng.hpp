#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace biadmm {

/// Deterministic random source. The engine is std::mt19937_64 (bit-exact by
/// the standard) and all variate transforms are implemented here, so a seed
/// reproduces identical streams on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream derived from (seed, stream) for per-task draws.
  static Rng substream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform();

  /// Uniform integer in [0, bound), unbiased. bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Standard normal via Box-Muller (cached pair).
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Gamma(shape, 1), Marsaglia-Tsang squeeze, shape > 0.
  double gamma(double shape);

  /// Dirichlet(alpha) on the simplex.
  std::vector<double> dirichlet(const std::vector<double>& alpha);

  /// Multinomial counts from `trials` categorical draws over `probs`
  /// (probs need not be normalized).
  std::vector<long long> multinomial(long long trials, const std::vector<double>& probs);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 mixing step, used for seed derivation.
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace biadmm
