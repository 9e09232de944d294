#include <stdexcept>
#include <doctest.h>

#include <cmath>
#include <limits>

#include "biadmm/admm.hpp"
#include "biadmm/clusters.hpp"
#include "biadmm/rng.hpp"
#include "biadmm/sylvester.hpp"
#include "oracles.hpp"

using biadmm::AdmmConfig;
using biadmm::AdmmState;
using biadmm::Axis;
using biadmm::Edge;
using biadmm::fit;
using biadmm::FitResult;
using biadmm::Matrix;
using biadmm::PenaltyNorm;
using biadmm::WeightedEdgeSet;

namespace {

Matrix random_matrix(biadmm::Rng& rng, std::size_t n, std::size_t p, double scale = 1.0) {
  Matrix m(n, p);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = scale * rng.normal();
  return m;
}

WeightedEdgeSet edge_set(std::size_t dim, std::vector<Edge> edges, std::vector<double> weights) {
  WeightedEdgeSet es;
  es.dimension = dim;
  es.edges = std::move(edges);
  es.weights = std::move(weights);
  return es;
}

}  // namespace

TEST_CASE("assemble_MN") {
  AdmmConfig cfg;
  SUBCASE("full edge sets give the closed form") {
    const std::size_t n = 5, p = 4;
    cfg.nu1 = 2.0;
    cfg.nu2 = 3.0;
    auto [M, N] = biadmm::assemble_MN(biadmm::full_edge_set(n), biadmm::full_edge_set(p), cfg, n,
                                      p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double want = (i == j ? 1.0 + n * cfg.nu1 : 0.0) - cfg.nu1;
        CHECK(M.values(i, j) == doctest::Approx(want));
      }
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) {
        const double want = (i == j ? p * cfg.nu2 : 0.0) - cfg.nu2;
        CHECK(N.values(i, j) == doctest::Approx(want));
      }
  }
  SUBCASE("single row edge with nu1 = 1") {
    cfg.nu1 = 1.0;
    auto [M, N] = biadmm::assemble_MN(edge_set(2, {{0, 1}}, {0.5}), edge_set(2, {}, {}), cfg, 2,
                                      2);
    CHECK(M.values(0, 0) == doctest::Approx(2.0));
    CHECK(M.values(0, 1) == doctest::Approx(-1.0));
    CHECK(M.values(1, 0) == doctest::Approx(-1.0));
    CHECK(M.values(1, 1) == doctest::Approx(2.0));
    CHECK(biadmm::frobenius_norm(N.values) == doctest::Approx(0.0));
  }
  SUBCASE("compositional adds the ones block to N") {
    cfg.compositional = true;
    cfg.nu3 = 2.0;
    auto [M, N] = biadmm::assemble_MN(edge_set(2, {}, {}), edge_set(2, {}, {}), cfg, 2, 2);
    (void)M;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) CHECK(N.values(i, j) == doctest::Approx(2.0));
  }
}

TEST_CASE("assemble_G") {
  biadmm::Rng rng(3);
  const Matrix X = random_matrix(rng, 3, 4);
  AdmmConfig cfg;
  cfg.nu1 = 1.0;

  SUBCASE("vanishes to X with zero blocks") {
    const Matrix V(1, 4, 0.0), L1(1, 4, 0.0), Z(0, 3, 0.0), L2(0, 3, 0.0);
    const Matrix G = biadmm::assemble_G(X, V, L1, Z, L2, edge_set(3, {{0, 1}}, {1.0}),
                                        edge_set(4, {}, {}), cfg);
    CHECK(biadmm::max_abs_diff(G, X) == 0.0);
  }
  SUBCASE("single row edge with unit v") {
    const Matrix V(1, 4, 1.0), L1(1, 4, 0.0), Z(0, 3, 0.0), L2(0, 3, 0.0);
    const Matrix G = biadmm::assemble_G(X, V, L1, Z, L2, edge_set(3, {{0, 1}}, {1.0}),
                                        edge_set(4, {}, {}), cfg);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(G(0, j) == doctest::Approx(X(0, j) + 1.0));
      CHECK(G(1, j) == doctest::Approx(X(1, j) - 1.0));
      CHECK(G(2, j) == doctest::Approx(X(2, j)));
    }
  }
  SUBCASE("A-update solves the assembled stationary system") {
    // Random splitting/dual blocks; the Sylvester solution of (M, N, G)
    // must match the dense Kronecker solve of the same system.
    const std::size_t n = 5, p = 4;
    const Matrix X2 = random_matrix(rng, n, p);
    auto rows = biadmm::build_knn_weights(X2, Axis::rows, 2, 0.5);
    auto cols = biadmm::build_knn_weights(X2, Axis::columns, 2, 0.5);
    AdmmConfig c2;
    c2.nu1 = 3.0;
    c2.nu2 = 1.5;
    const Matrix V = random_matrix(rng, rows.size(), p);
    const Matrix L1 = random_matrix(rng, rows.size(), p);
    const Matrix Z = random_matrix(rng, cols.size(), n);
    const Matrix L2 = random_matrix(rng, cols.size(), n);
    auto [M, N] = biadmm::assemble_MN(rows, cols, c2, n, p);
    const Matrix G = biadmm::assemble_G(X2, V, L1, Z, L2, rows, cols, c2);
    const Matrix A_fast = biadmm::solve_sylvester(M, N, G);
    const Matrix A_dense = biadmm::kron_oracle(M, N, G);
    CHECK(biadmm::max_abs_diff(A_fast, A_dense) < 1e-8);
  }
}

TEST_CASE("gamma = 0 returns the data in one step") {
  biadmm::Rng rng(5);
  for (int round = 0; round < 3; ++round) {
    const Matrix X = random_matrix(rng, 8, 5, 3.0);
    auto rows = biadmm::build_knn_weights(X, Axis::rows, 3, 0.2);
    auto cols = biadmm::build_knn_weights(X, Axis::columns, 2, 0.2);
    const FitResult res = fit(X, rows, cols, AdmmConfig{});
    CHECK(res.converged);
    CHECK(biadmm::max_abs_diff(res.A_hat, X) < 1e-6);
  }
}

TEST_CASE("large gamma on full graphs collapses to the grand mean") {
  biadmm::Rng rng(7);
  const std::size_t n = 10, p = 6;
  const Matrix X = random_matrix(rng, n, p, 2.0);
  AdmmConfig cfg;
  cfg.gamma1 = 50.0;
  cfg.gamma2 = 50.0;
  const FitResult res = fit(X, biadmm::full_edge_set(n), biadmm::full_edge_set(p), cfg);
  REQUIRE(res.converged);
  double mean = 0.0;
  for (std::size_t t = 0; t < X.size(); ++t) mean += X.data()[t];
  mean /= static_cast<double>(X.size());
  for (std::size_t t = 0; t < res.A_hat.size(); ++t)
    CHECK(std::fabs(res.A_hat.data()[t] - mean) < 1e-4);
}

TEST_CASE("matches the subgradient oracle on a 6x4 instance") {
  biadmm::Rng rng(9);
  Matrix X(6, 4);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      X(i, j) = ((i < 3) == (j < 2) ? 1.0 : -1.0) + 0.5 * rng.normal();
  auto rows = biadmm::full_edge_set(6);
  auto cols = biadmm::full_edge_set(4);
  AdmmConfig cfg;
  cfg.gamma1 = 0.25;
  cfg.gamma2 = 0.25;
  cfg.tol_primal = cfg.tol_dual = 1e-10;
  cfg.max_iters = 100000;
  const FitResult res = fit(X, rows, cols, cfg);
  REQUIRE(res.converged);
  const auto oracle = oracles::subgradient_minimize(X, rows, cols, cfg.gamma1, cfg.gamma2,
                                                    PenaltyNorm::l2, false, 2000000, 1e-9);
  CHECK(std::fabs(res.objective - oracle.objective) < 1e-4);
  CHECK(biadmm::max_abs_diff(res.A_hat, oracle.A) < 1e-4);
}

TEST_CASE("compositional fit keeps rows on the simplex") {
  biadmm::Rng rng(11);
  const std::size_t n = 8, p = 5;
  Matrix X(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      X(i, j) = 0.05 + rng.uniform();
      total += X(i, j);
    }
    for (std::size_t j = 0; j < p; ++j) X(i, j) /= total;
  }
  auto rows = biadmm::build_knn_weights(X, Axis::rows, 3, 1.0);
  auto cols = biadmm::build_knn_weights(X, Axis::columns, 2, 1.0);
  AdmmConfig cfg = AdmmConfig::compositional_defaults();
  cfg.gamma1 = 0.05;
  cfg.gamma2 = 0.05;
  const FitResult res = fit(X, rows, cols, cfg);
  REQUIRE(res.converged);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < p; ++j) total += res.A_hat(i, j);
    CHECK(std::fabs(total - 1.0) <= 1e-6);
  }
}

TEST_CASE("compositional fit matches the projected subgradient oracle") {
  biadmm::Rng rng(27);
  const std::size_t n = 6, p = 4;
  Matrix X(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      X(i, j) = 0.1 + rng.uniform() + (i < 3 && j < 2 ? 1.0 : 0.0);
      total += X(i, j);
    }
    for (std::size_t j = 0; j < p; ++j) X(i, j) /= total;
  }
  auto rows = biadmm::full_edge_set(n);
  auto cols = biadmm::full_edge_set(p);
  AdmmConfig cfg = AdmmConfig::compositional_defaults();
  cfg.gamma1 = 0.02;
  cfg.gamma2 = 0.02;
  cfg.tol_primal = cfg.tol_dual = 1e-10;
  cfg.max_iters = 200000;
  const FitResult res = fit(X, rows, cols, cfg);
  REQUIRE(res.converged);
  const auto oracle = oracles::subgradient_minimize(X, rows, cols, cfg.gamma1, cfg.gamma2,
                                                    PenaltyNorm::l2, true, 2000000, 1e-10);
  CHECK(std::fabs(res.objective - oracle.objective) < 1e-3);
  CHECK(biadmm::max_abs_diff(res.A_hat, oracle.A) < 1e-3);
}

TEST_CASE("compositional fit rejects non-simplex rows naming the offender") {
  Matrix X(3, 3, 0.4);
  AdmmConfig cfg = AdmmConfig::compositional_defaults();
  auto rows = biadmm::full_edge_set(3);
  auto cols = biadmm::full_edge_set(3);
  CHECK_THROWS_WITH_AS(fit(X, rows, cols, cfg), doctest::Contains("row 0"),
                       std::invalid_argument);
}

TEST_CASE("non-finite init aborts naming iteration and block") {
  biadmm::Rng rng(13);
  const Matrix X = random_matrix(rng, 4, 3);
  auto rows = biadmm::full_edge_set(4);
  auto cols = biadmm::full_edge_set(3);
  AdmmState st;
  st.A = X;
  st.V = Matrix(rows.size(), 3, 0.0);
  st.Z = Matrix(cols.size(), 4, 0.0);
  st.L1 = Matrix(rows.size(), 3, 0.0);
  st.L2 = Matrix(cols.size(), 4, 0.0);
  st.L3.assign(4, 0.0);
  st.V(0, 0) = std::numeric_limits<double>::infinity();
  AdmmConfig cfg;
  cfg.gamma1 = 0.1;
  CHECK_THROWS_WITH_AS(fit(X, rows, cols, cfg, st), doctest::Contains("iteration 1"),
                       std::runtime_error);
}

TEST_CASE("residuals") {
  biadmm::Rng rng(15);
  const std::size_t n = 5, p = 4;
  const Matrix X = random_matrix(rng, n, p);
  auto rows = biadmm::build_knn_weights(X, Axis::rows, 2, 0.0);
  auto cols = biadmm::build_knn_weights(X, Axis::columns, 2, 0.0);
  AdmmConfig cfg;
  cfg.nu1 = 2.0;
  cfg.nu2 = 4.0;

  SUBCASE("zero when constraints hold and nothing moved") {
    AdmmState st;
    st.A = X;
    st.V = Matrix(rows.size(), p);
    st.Z = Matrix(cols.size(), n);
    st.L1 = Matrix(rows.size(), p, 0.0);
    st.L2 = Matrix(cols.size(), n, 0.0);
    st.L3.assign(n, 0.0);
    for (std::size_t l = 0; l < rows.size(); ++l)
      for (std::size_t j = 0; j < p; ++j)
        st.V(l, j) = X(rows.edges[l].a, j) - X(rows.edges[l].b, j);
    for (std::size_t k = 0; k < cols.size(); ++k)
      for (std::size_t i = 0; i < n; ++i)
        st.Z(k, i) = X(i, cols.edges[k].a) - X(i, cols.edges[k].b);
    const auto [primal, dual] = biadmm::residuals(st, st, rows, cols, cfg);
    CHECK(primal <= 1e-12);
    CHECK(dual == 0.0);
  }

  SUBCASE("random states match an independent recomputation") {
    auto make_state = [&] {
      AdmmState st;
      st.A = random_matrix(rng, n, p);
      st.V = random_matrix(rng, rows.size(), p);
      st.Z = random_matrix(rng, cols.size(), n);
      st.L1 = Matrix(rows.size(), p, 0.0);
      st.L2 = Matrix(cols.size(), n, 0.0);
      st.L3.assign(n, 0.0);
      return st;
    };
    const AdmmState cur = make_state();
    const AdmmState prev = make_state();
    const auto [primal, dual] = biadmm::residuals(cur, prev, rows, cols, cfg);

    double want_primal = 0.0;
    for (std::size_t l = 0; l < rows.size(); ++l) {
      double acc = 0.0;
      for (std::size_t j = 0; j < p; ++j) {
        const double r = cur.V(l, j) - cur.A(rows.edges[l].a, j) + cur.A(rows.edges[l].b, j);
        acc += r * r;
      }
      want_primal = std::max(want_primal, std::sqrt(acc));
    }
    for (std::size_t k = 0; k < cols.size(); ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = cur.Z(k, i) - cur.A(i, cols.edges[k].a) + cur.A(i, cols.edges[k].b);
        acc += r * r;
      }
      want_primal = std::max(want_primal, std::sqrt(acc));
    }
    CHECK(primal == doctest::Approx(want_primal).epsilon(1e-12));

    double want_dual = 0.0;
    for (std::size_t l = 0; l < rows.size(); ++l) {
      double acc = 0.0;
      for (std::size_t j = 0; j < p; ++j) {
        const double r = cur.V(l, j) - prev.V(l, j);
        acc += r * r;
      }
      want_dual = std::max(want_dual, cfg.nu1 * std::sqrt(acc));
    }
    for (std::size_t k = 0; k < cols.size(); ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = cur.Z(k, i) - prev.Z(k, i);
        acc += r * r;
      }
      want_dual = std::max(want_dual, cfg.nu2 * std::sqrt(acc));
    }
    CHECK(dual == doctest::Approx(want_dual).epsilon(1e-12));
  }
}

TEST_CASE("objective") {
  biadmm::Rng rng(17);
  const Matrix X = random_matrix(rng, 4, 3);
  auto rows = biadmm::full_edge_set(4);
  auto cols = biadmm::full_edge_set(3);

  SUBCASE("zero at A = X with zero gammas") {
    CHECK(biadmm::objective_value(X, X, rows, cols, 0.0, 0.0, PenaltyNorm::l2) == 0.0);
  }
  SUBCASE("half squared Frobenius at A = 0") {
    const Matrix zero(4, 3, 0.0);
    const double norm = biadmm::frobenius_norm(X);
    CHECK(biadmm::objective_value(X, zero, rows, cols, 0.0, 0.0, PenaltyNorm::l2) ==
          doctest::Approx(0.5 * norm * norm));
  }
  SUBCASE("hand-built 2x2 with one edge per side") {
    Matrix X2(2, 2), A2(2, 2);
    X2(0, 0) = 1.0;
    X2(0, 1) = 2.0;
    X2(1, 0) = 3.0;
    X2(1, 1) = 4.0;
    A2(0, 0) = 1.0;
    A2(0, 1) = 1.0;
    A2(1, 0) = 2.0;
    A2(1, 1) = 5.0;
    const auto r = edge_set(2, {{0, 1}}, {2.0});
    const auto c = edge_set(2, {{0, 1}}, {0.5});
    // loss: 0.5*(0 + 1 + 1 + 1) = 1.5
    // row diff (0,1)-(1,.): (-1,-4), l2 = sqrt(17), weighted 3*2*sqrt(17)... gamma1=3
    // col diff a_0-a_1: (0,-3), l2 = 3, gamma2=4, weight 0.5 -> 4*0.5*3 = 6
    const double want = 1.5 + 3.0 * 2.0 * std::sqrt(17.0) + 6.0;
    CHECK(biadmm::objective_value(X2, A2, r, c, 3.0, 4.0, PenaltyNorm::l2) ==
          doctest::Approx(want));
    // cross-check against the independent test-side implementation
    CHECK(oracles::objective(X2, A2, r, c, 3.0, 4.0, PenaltyNorm::l2) == doctest::Approx(want));
  }
}

TEST_CASE("fit result objective matches the reported value") {
  biadmm::Rng rng(19);
  const Matrix X = random_matrix(rng, 7, 5);
  auto rows = biadmm::build_knn_weights(X, Axis::rows, 3, 0.3);
  auto cols = biadmm::build_knn_weights(X, Axis::columns, 2, 0.3);
  AdmmConfig cfg;
  cfg.gamma1 = 0.2;
  cfg.gamma2 = 0.3;
  const FitResult res = fit(X, rows, cols, cfg);
  CHECK(res.objective == doctest::Approx(biadmm::objective_value(
                             X, res.A_hat, rows, cols, cfg.gamma1, cfg.gamma2, cfg.q)));
}

TEST_CASE("initialization independence (uniqueness)") {
  biadmm::Rng rng(21);
  const std::size_t n = 20, p = 10;
  Matrix X(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j)
      X(i, j) = ((i % 2) * 2.0 - 1.0) * ((j % 2) * 2.0 - 1.0) + 0.8 * rng.normal();
  auto rows = biadmm::build_knn_weights(X, Axis::rows, 5, 0.1);
  auto cols = biadmm::build_knn_weights(X, Axis::columns, 5, 0.1);
  AdmmConfig cfg;
  cfg.gamma1 = 0.7;
  cfg.gamma2 = 0.5;
  cfg.tol_primal = cfg.tol_dual = 1e-8;
  cfg.max_iters = 100000;

  FitResult results[2];
  for (int t = 0; t < 2; ++t) {
    biadmm::Rng ir(100 + t);
    AdmmState st;
    st.A = X;
    st.V = random_matrix(ir, rows.size(), p);
    st.Z = random_matrix(ir, cols.size(), n);
    st.L1 = random_matrix(ir, rows.size(), p);
    st.L2 = random_matrix(ir, cols.size(), n);
    st.L3.assign(n, 0.0);
    results[t] = fit(X, rows, cols, cfg, st);
    REQUIRE(results[t].converged);
  }
  CHECK(biadmm::max_abs_diff(results[0].A_hat, results[1].A_hat) < 1e-4);
}

TEST_CASE("permutation equivariance") {
  biadmm::Rng rng(23);
  const std::size_t n = 8, p = 6;
  const Matrix X = random_matrix(rng, n, p);
  auto rows = biadmm::full_edge_set(n);
  auto cols = biadmm::full_edge_set(p);
  AdmmConfig cfg;
  cfg.gamma1 = 0.15;
  cfg.gamma2 = 0.15;
  cfg.tol_primal = cfg.tol_dual = 1e-11;
  cfg.max_iters = 200000;

  // Reverse the row order; the full edge set is permutation-invariant.
  Matrix Xp(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) Xp(i, j) = X(n - 1 - i, j);

  const FitResult a = fit(X, rows, cols, cfg);
  const FitResult b = fit(Xp, rows, cols, cfg);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j)
      CHECK(std::fabs(a.A_hat(i, j) - b.A_hat(n - 1 - i, j)) < 1e-8);
}

TEST_CASE("config validation") {
  AdmmConfig cfg;
  cfg.nu1 = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = AdmmConfig{};
  cfg.gamma1 = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = AdmmConfig{};
  cfg.max_iters = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("fit input validation") {
  biadmm::Rng rng(31);
  const Matrix X = random_matrix(rng, 4, 3);
  const auto rows = biadmm::full_edge_set(4);
  const auto cols = biadmm::full_edge_set(3);

  SUBCASE("non-finite data rejected") {
    Matrix bad = X;
    bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(fit(bad, rows, cols, AdmmConfig{}), std::invalid_argument);
  }
  SUBCASE("dimension mismatch rejected") {
    CHECK_THROWS_AS(fit(X, biadmm::full_edge_set(5), cols, AdmmConfig{}), std::invalid_argument);
    CHECK_THROWS_AS(fit(X, rows, biadmm::full_edge_set(4), AdmmConfig{}), std::invalid_argument);
  }
  SUBCASE("degenerate shapes rejected") {
    const Matrix tiny(1, 3, 0.0);
    WeightedEdgeSet one_row;
    one_row.dimension = 1;
    CHECK_THROWS_AS(fit(tiny, one_row, cols, AdmmConfig{}), std::invalid_argument);
  }
}
