#include <benchmark/benchmark.h>

#include "biadmm/admm.hpp"
#include "biadmm/rng.hpp"
#include "biadmm/simulate.hpp"
#include "biadmm/sylvester.hpp"
#include "biadmm/tuning.hpp"

using namespace biadmm;

namespace {

Matrix random_matrix(Rng& rng, std::size_t n, std::size_t p) {
  Matrix m(n, p);
  for (std::size_t t = 0; t < m.size(); ++t) m.data()[t] = rng.normal();
  return m;
}

SymmetricOperator shifted_gram(Rng& rng, std::size_t d) {
  const Matrix b = random_matrix(rng, d, d);
  Matrix m;
  matmul_tn_into(b, b, m);
  for (std::size_t t = 0; t < m.size(); ++t) m.data()[t] /= static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) += 1.0;
  return SymmetricOperator::from(std::move(m));
}

void BM_SymEigen(benchmark::State& state) {
  Rng rng(1);
  const auto S = shifted_gram(rng, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sym_eigen(S));
}

void BM_SylvesterSolve(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const std::size_t p = state.range(1);
  Rng rng(2);
  const auto M = shifted_gram(rng, n);
  const auto N = shifted_gram(rng, p);
  const SylvesterSolver solver(M, N);
  const Matrix G = random_matrix(rng, n, p);
  Matrix out, s1, s2;
  for (auto _ : state) {
    solver.solve_into(G, out, s1, s2);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_ProxBlock(benchmark::State& state) {
  Rng rng(3);
  std::vector<double> u(state.range(0)), v(state.range(0));
  for (double& x : u) x = rng.normal();
  const ProxSpec spec{PenaltyNorm::l2, 0.4};
  for (auto _ : state) {
    prox_into(u.data(), v.data(), u.size(), spec);
    benchmark::DoNotOptimize(v.data());
  }
}

void BM_KnnWeights(benchmark::State& state) {
  Rng rng(4);
  const Matrix X = random_matrix(rng, state.range(0), 40);
  for (auto _ : state) benchmark::DoNotOptimize(build_knn_weights(X, Axis::rows, 5, 1.0));
}

void BM_FitCheckerboard(benchmark::State& state) {
  CheckerboardSpec spec;
  spec.n = state.range(0);
  spec.p = state.range(0) / 2;
  spec.sigma = 2.0;
  spec.seed = 5;
  const auto data = gen_checkerboard(spec);
  const auto rows = build_knn_weights(data.X, Axis::rows, 5, 0.0);
  const auto cols = build_knn_weights(data.X, Axis::columns, 5, 0.0);
  auto setup = single_gamma_mode(rows, cols, spec.n, spec.p, 40.0);
  AdmmConfig cfg;
  cfg.gamma1 = setup.gamma1;
  cfg.gamma2 = setup.gamma2;
  cfg.tol_primal = cfg.tol_dual = 1e-5;
  cfg.max_iters = 2000;
  for (auto _ : state) benchmark::DoNotOptimize(fit(data.X, setup.rows, setup.cols, cfg));
}

}  // namespace

BENCHMARK(BM_SymEigen)->Arg(50)->Arg(100)->Arg(200);
BENCHMARK(BM_SylvesterSolve)->Args({50, 40})->Args({100, 80})->Args({200, 160});
BENCHMARK(BM_ProxBlock)->Arg(40)->Arg(160);
BENCHMARK(BM_KnnWeights)->Arg(50)->Arg(200);
BENCHMARK(BM_FitCheckerboard)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
