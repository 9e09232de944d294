// Batch front end for convex biclustering fits over CSV matrices.
//
// Exit codes: 0 success/converged, 2 input parse error, 3 non-convergence,
// 4 invalid configuration.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "biadmm/admm.hpp"
#include "biadmm/clusters.hpp"
#include "biadmm/csv.hpp"
#include "biadmm/simulate.hpp"
#include "biadmm/tuning.hpp"
#include "biadmm/weights.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNoConverge = 3;
constexpr int kExitConfig = 4;
constexpr int kFormatVersion = 1;

struct GraphFlags {
  std::size_t m1 = 5;
  std::size_t m2 = 5;
  double phi = 1.0;
  bool full_graph = false;
};

struct GammaFlags {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma = -1.0;  // single-gamma mode when >= 0
};

struct SolverFlags {
  std::string norm = "l2";
  double nu1 = -1.0;  // negative = use defaults
  double nu2 = -1.0;
  double nu3 = -1.0;
  double tol = 1e-6;
  std::size_t max_iters = 10000;
  bool compositional = false;
};

biadmm::PenaltyNorm parse_norm(const std::string& name) {
  if (name == "l1") return biadmm::PenaltyNorm::l1;
  if (name == "l2") return biadmm::PenaltyNorm::l2;
  if (name == "linf") return biadmm::PenaltyNorm::linf;
  throw std::invalid_argument("unknown norm: " + name);
}

biadmm::AdmmConfig make_config(const SolverFlags& flags) {
  biadmm::AdmmConfig config = flags.compositional ? biadmm::AdmmConfig::compositional_defaults()
                                                  : biadmm::AdmmConfig::general_defaults();
  config.q = parse_norm(flags.norm);
  if (flags.nu1 > 0.0) config.nu1 = flags.nu1;
  if (flags.nu2 > 0.0) config.nu2 = flags.nu2;
  if (flags.nu3 > 0.0) config.nu3 = flags.nu3;
  config.tol_primal = flags.tol;
  config.tol_dual = flags.tol;
  config.max_iters = flags.max_iters;
  return config;
}

std::pair<biadmm::WeightedEdgeSet, biadmm::WeightedEdgeSet> make_graphs(const biadmm::Matrix& X,
                                                                        const GraphFlags& flags) {
  if (flags.full_graph)
    return {biadmm::full_edge_set(X.rows()), biadmm::full_edge_set(X.cols())};
  return {biadmm::build_knn_weights(X, biadmm::Axis::rows, flags.m1, flags.phi),
          biadmm::build_knn_weights(X, biadmm::Axis::columns, flags.m2, flags.phi)};
}

void add_graph_flags(CLI::App* cmd, GraphFlags& flags) {
  cmd->add_option("--knn-m1", flags.m1, "row k-NN neighbor count (default 5)");
  cmd->add_option("--knn-m2", flags.m2, "column k-NN neighbor count (default 5)");
  cmd->add_option("--phi", flags.phi, "Gaussian kernel scale (default 1)");
  cmd->add_flag("--full-graph", flags.full_graph, "use complete unit-weight graphs");
}

void add_solver_flags(CLI::App* cmd, SolverFlags& flags) {
  cmd->add_option("--norm", flags.norm, "penalty norm: l1, l2, linf (default l2)")
      ->check(CLI::IsMember({"l1", "l2", "linf"}));
  cmd->add_option("--nu1", flags.nu1, "augmentation constant for row fusions");
  cmd->add_option("--nu2", flags.nu2, "augmentation constant for column fusions");
  cmd->add_option("--nu3", flags.nu3, "augmentation constant for the row-sum constraint");
  cmd->add_option("--tol", flags.tol, "primal/dual convergence tolerance (default 1e-6)");
  cmd->add_option("--max-iters", flags.max_iters, "iteration cap (default 10000)");
  cmd->add_flag("--compositional", flags.compositional,
                "enforce unit row sums (relative-abundance data)");
}

void echo_config(biadmm::KeyValueDoc& doc, const biadmm::AdmmConfig& config,
                 const GraphFlags& graphs, std::uint64_t seed) {
  doc.set("norm", config.q == biadmm::PenaltyNorm::l1
                      ? "l1"
                      : (config.q == biadmm::PenaltyNorm::l2 ? "l2" : "linf"));
  doc.set("gamma1", config.gamma1);
  doc.set("gamma2", config.gamma2);
  doc.set("nu1", config.nu1);
  doc.set("nu2", config.nu2);
  doc.set("nu3", config.nu3);
  doc.set("tol", config.tol_primal);
  doc.set("max_iters", static_cast<long long>(config.max_iters));
  doc.set("compositional", static_cast<long long>(config.compositional ? 1 : 0));
  doc.set("full_graph", static_cast<long long>(graphs.full_graph ? 1 : 0));
  doc.set("knn_m1", static_cast<long long>(graphs.m1));
  doc.set("knn_m2", static_cast<long long>(graphs.m2));
  doc.set("phi", graphs.phi);
  doc.set("seed", static_cast<long long>(seed));
}

std::vector<double> parse_gamma_list(const std::string& csv) {
  std::vector<double> values;
  std::string cell;
  std::istringstream stream(csv);
  while (std::getline(stream, cell, ',')) {
    if (cell.empty()) continue;
    values.push_back(std::stod(cell));
  }
  if (values.empty()) throw std::invalid_argument("empty gamma list");
  return values;
}

struct FitOutputs {
  biadmm::FitResult result;
  biadmm::BiclusterLabels labels;
};

FitOutputs run_fit(const biadmm::Matrix& X, const GraphFlags& graph_flags,
                   const GammaFlags& gammas, biadmm::AdmmConfig config) {
  auto [rows, cols] = make_graphs(X, graph_flags);
  if (gammas.gamma >= 0.0) {
    auto setup = biadmm::single_gamma_mode(rows, cols, X.rows(), X.cols(), gammas.gamma);
    config.gamma1 = setup.gamma1;
    config.gamma2 = setup.gamma2;
    rows = std::move(setup.rows);
    cols = std::move(setup.cols);
  } else {
    config.gamma1 = gammas.gamma1;
    config.gamma2 = gammas.gamma2;
  }
  FitOutputs out;
  out.result = biadmm::fit(X, rows, cols, config);
  out.labels = biadmm::extract_labels(out.result, rows, cols);
  return out;
}

int cmd_fit(const std::string& input, const std::string& out_dir, const GraphFlags& graph_flags,
            const GammaFlags& gammas, const SolverFlags& solver_flags, std::uint64_t seed) {
  const biadmm::CsvMatrix data = biadmm::read_matrix_csv(input);
  const biadmm::AdmmConfig config = make_config(solver_flags);
  std::filesystem::create_directories(out_dir);

  FitOutputs out = run_fit(data.values, graph_flags, gammas, config);

  biadmm::write_matrix_csv(out_dir + "/A_hat.csv", out.result.A_hat, data.col_names,
                           data.row_names);
  biadmm::write_labels(out_dir + "/row_labels.csv", out.labels.row_labels);
  biadmm::write_labels(out_dir + "/col_labels.csv", out.labels.col_labels);

  biadmm::KeyValueDoc doc;
  doc.set("format_version", static_cast<long long>(kFormatVersion));
  doc.set("subcommand", "fit");
  doc.set("input", input);
  doc.set("n", static_cast<long long>(data.values.rows()));
  doc.set("p", static_cast<long long>(data.values.cols()));
  biadmm::AdmmConfig echoed = config;
  if (gammas.gamma >= 0.0) {
    doc.set("gamma", gammas.gamma);
    echoed.gamma1 = gammas.gamma;
    echoed.gamma2 = gammas.gamma;
  } else {
    echoed.gamma1 = gammas.gamma1;
    echoed.gamma2 = gammas.gamma2;
  }
  echo_config(doc, echoed, graph_flags, seed);
  doc.set("iterations", static_cast<long long>(out.result.iterations));
  doc.set("converged", static_cast<long long>(out.result.converged ? 1 : 0));
  doc.set("primal_residual", out.result.primal_residual);
  doc.set("dual_residual", out.result.dual_residual);
  doc.set("objective", out.result.objective);
  doc.set("row_clusters", static_cast<long long>(out.labels.n_row_clusters));
  doc.set("col_clusters", static_cast<long long>(out.labels.n_col_clusters));
  biadmm::write_summary(out_dir + "/summary.txt", doc);

  return out.result.converged ? kExitOk : kExitNoConverge;
}

int cmd_path(const std::string& input, const std::string& out_dir, const GraphFlags& graph_flags,
             const std::string& grid_gamma1, const std::string& grid_gamma2,
             const std::string& grid_gamma, const SolverFlags& solver_flags, std::uint64_t seed) {
  const biadmm::CsvMatrix data = biadmm::read_matrix_csv(input);
  const biadmm::AdmmConfig base = make_config(solver_flags);
  std::filesystem::create_directories(out_dir);

  const bool coupled = !grid_gamma.empty();
  std::vector<double> g1_list, g2_list;
  if (coupled) {
    g1_list = parse_gamma_list(grid_gamma);
    g2_list = g1_list;
  } else {
    g1_list = parse_gamma_list(grid_gamma1);
    g2_list = parse_gamma_list(grid_gamma2);
  }

  biadmm::KeyValueDoc manifest;
  manifest.set("format_version", static_cast<long long>(kFormatVersion));
  manifest.set("subcommand", "path");
  manifest.set("input", input);
  manifest.set("n", static_cast<long long>(data.values.rows()));
  manifest.set("p", static_cast<long long>(data.values.cols()));
  manifest.set("coupled", static_cast<long long>(coupled ? 1 : 0));
  echo_config(manifest, base, graph_flags, seed);

  bool all_converged = true;
  std::size_t entries = 0;
  for (std::size_t i = 0; i < g1_list.size(); ++i) {
    for (std::size_t j = 0; j < g2_list.size(); ++j) {
      if (coupled && i != j) continue;
      GammaFlags gammas;
      if (coupled) {
        gammas.gamma = g1_list[i];
      } else {
        gammas.gamma1 = g1_list[i];
        gammas.gamma2 = g2_list[j];
      }
      FitOutputs out = run_fit(data.values, graph_flags, gammas, base);
      all_converged = all_converged && out.result.converged;

      const std::string tag = coupled ? std::to_string(i)
                                      : std::to_string(i) + "_" + std::to_string(j);
      const std::string a_file = "A_hat_" + tag + ".csv";
      biadmm::write_matrix_csv(out_dir + "/" + a_file, out.result.A_hat, data.col_names,
                               data.row_names);
      biadmm::write_labels(out_dir + "/row_labels_" + tag + ".csv", out.labels.row_labels);
      biadmm::write_labels(out_dir + "/col_labels_" + tag + ".csv", out.labels.col_labels);

      const std::string key = "snapshot_" + std::to_string(entries);
      manifest.set(key, biadmm::format_double(g1_list[i]) + " " +
                            biadmm::format_double(g2_list[j]) + " " + a_file + " " +
                            std::to_string(out.labels.n_row_clusters) + " " +
                            std::to_string(out.labels.n_col_clusters) + " " +
                            std::to_string(out.result.iterations) + " " +
                            (out.result.converged ? "1" : "0"));
      ++entries;
    }
  }
  manifest.set("snapshots", static_cast<long long>(entries));
  biadmm::write_summary(out_dir + "/manifest.txt", manifest);
  return all_converged ? kExitOk : kExitNoConverge;
}

int cmd_simulate(const std::string& design, const std::string& out_dir, std::uint64_t seed,
                 std::size_t n, std::size_t p, std::size_t K, std::size_t R, double sigma,
                 std::size_t samples_per_arm, double dispersion, long long reads,
                 double fold_reduction, const std::string& proportion_means,
                 const std::string& group_codes) {
  std::filesystem::create_directories(out_dir);
  biadmm::Matrix X;
  biadmm::BiclusterLabels truth;

  if (design == "checkerboard") {
    biadmm::CheckerboardSpec spec;
    spec.n = n;
    spec.p = p;
    spec.K = K;
    spec.R = R;
    spec.sigma = sigma;
    spec.seed = seed;
    auto data = biadmm::gen_checkerboard(spec);
    X = std::move(data.X);
    truth = std::move(data.truth);
  } else if (design == "compositional") {
    biadmm::CompositionalSpec spec = biadmm::CompositionalSpec::defaults();
    spec.samples_per_arm = samples_per_arm;
    spec.dispersion = dispersion;
    spec.reads_per_sample = reads;
    spec.ratio_fold_reduction = fold_reduction;
    spec.seed = seed;
    if (!proportion_means.empty()) {
      spec.proportion_means = parse_gamma_list(proportion_means);
      if (group_codes.size() != spec.proportion_means.size())
        throw std::invalid_argument(
            "--groups must give one of e/s/u per taxon when --proportion-means is set");
      spec.groups.clear();
      for (char c : group_codes) {
        if (c == 'e')
          spec.groups.push_back(biadmm::TaxonGroup::enlarged);
        else if (c == 's')
          spec.groups.push_back(biadmm::TaxonGroup::shrunk);
        else if (c == 'u')
          spec.groups.push_back(biadmm::TaxonGroup::unchanged);
        else
          throw std::invalid_argument("--groups characters must be e, s, or u");
      }
    }
    auto data = biadmm::gen_compositional(spec);
    X = std::move(data.X);
    truth = std::move(data.truth);
  } else {
    throw std::invalid_argument("unknown design: " + design);
  }

  biadmm::write_matrix_csv(out_dir + "/data.csv", X);
  biadmm::write_labels(out_dir + "/truth_row_labels.csv", truth.row_labels);
  biadmm::write_labels(out_dir + "/truth_col_labels.csv", truth.col_labels);
  return kExitOk;
}

int cmd_ari(const std::string& file_a, const std::string& file_b, const std::string& cols_a,
            const std::string& cols_b) {
  const std::vector<int> a = biadmm::read_labels(file_a);
  const std::vector<int> b = biadmm::read_labels(file_b);
  if (a.size() != b.size()) {
    std::cerr << "label files have different lengths (" << a.size() << " vs " << b.size() << ")\n";
    return kExitParse;
  }
  if (cols_a.empty() != cols_b.empty()) {
    std::cerr << "--cols-a and --cols-b must be given together\n";
    return kExitConfig;
  }
  if (cols_a.empty()) {
    std::cout << biadmm::format_double(biadmm::adjusted_rand_index(a, b)) << "\n";
    return kExitOk;
  }
  // Full biclustering comparison: positional files are row labels, the
  // --cols-* files are column labels; row, column, and product scores out.
  biadmm::BiclusterLabels la, lb;
  la.row_labels = a;
  lb.row_labels = b;
  la.col_labels = biadmm::read_labels(cols_a);
  lb.col_labels = biadmm::read_labels(cols_b);
  if (la.col_labels.size() != lb.col_labels.size()) {
    std::cerr << "column label files have different lengths (" << la.col_labels.size() << " vs "
              << lb.col_labels.size() << ")\n";
    return kExitParse;
  }
  const biadmm::BiclusterAri score = biadmm::bicluster_ari(la, lb);
  std::cout << "rows " << biadmm::format_double(score.rows) << "\n"
            << "cols " << biadmm::format_double(score.cols) << "\n"
            << "product " << biadmm::format_double(score.product) << "\n";
  return kExitOk;
}

int cmd_tune(const std::string& input, const std::string& out_dir, const std::string& method,
             const GraphFlags& graph_flags, const std::string& grid_gamma1,
             const std::string& grid_gamma2, const std::string& grid_gamma,
             const SolverFlags& solver_flags, double holdout_frac, std::size_t repetitions,
             std::uint64_t seed, unsigned threads, const std::string& valid_data,
             const std::string& valid_row_labels, const std::string& valid_col_labels) {
  const biadmm::CsvMatrix data = biadmm::read_matrix_csv(input);
  const biadmm::AdmmConfig base = make_config(solver_flags);
  std::filesystem::create_directories(out_dir);

  biadmm::TuningGrid grid;
  const bool no_grid_given = grid_gamma.empty() && grid_gamma1.empty() && grid_gamma2.empty();
  const bool coupled = !grid_gamma.empty() || no_grid_given;
  if (no_grid_given) {
    // Default: 20 log-spaced single-gamma candidates.
    grid = biadmm::TuningGrid::log_spaced(0.1, 100.0, 20);
    grid.coupled = true;
  } else if (coupled) {
    grid = biadmm::TuningGrid::coupled_grid(parse_gamma_list(grid_gamma));
  } else {
    grid.gamma1_values = parse_gamma_list(grid_gamma1);
    grid.gamma2_values = parse_gamma_list(grid_gamma2);
  }

  biadmm::GraphSpec graph_spec;
  graph_spec.full_graph = graph_flags.full_graph;
  graph_spec.m1 = graph_flags.m1;
  graph_spec.m2 = graph_flags.m2;
  graph_spec.phi = graph_flags.phi;
  graph_spec.rescale_single_gamma = coupled;

  biadmm::TuningReport report;
  if (method == "holdout") {
    auto [rows, cols] = graph_spec.build(data.values);
    report = biadmm::holdout_validate(data.values, rows, cols, grid, base, holdout_frac, seed,
                                      threads);
  } else if (method == "stability") {
    report = biadmm::stability_select(data.values, graph_spec, grid, base, repetitions, seed,
                                      threads);
  } else if (method == "ari") {
    if (valid_data.empty() || valid_row_labels.empty() || valid_col_labels.empty())
      throw std::invalid_argument(
          "--method ari needs --valid-data, --valid-row-labels, --valid-col-labels");
    const biadmm::CsvMatrix valid = biadmm::read_matrix_csv(valid_data);
    biadmm::BiclusterLabels truth;
    truth.row_labels = biadmm::read_labels(valid_row_labels);
    truth.col_labels = biadmm::read_labels(valid_col_labels);
    auto [rows, cols] = graph_spec.build(valid.values);
    report = biadmm::ari_oracle_tune(valid.values, rows, cols, truth, grid, base, threads);
  } else {
    throw std::invalid_argument("unknown method: " + method);
  }

  biadmm::KeyValueDoc doc;
  doc.set("format_version", static_cast<long long>(kFormatVersion));
  doc.set("subcommand", "tune");
  doc.set("input", input);
  doc.set("method", report.method);
  echo_config(doc, base, graph_flags, seed);
  doc.set("holdout_frac", holdout_frac);
  doc.set("repetitions", static_cast<long long>(repetitions));
  doc.set("selected_gamma1", report.selected_gamma1);
  doc.set("selected_gamma2", report.selected_gamma2);
  doc.set("points", static_cast<long long>(report.table.size()));
  for (std::size_t i = 0; i < report.table.size(); ++i) {
    const auto& entry = report.table[i];
    doc.set("point_" + std::to_string(i), biadmm::format_double(entry.gamma1) + " " +
                                              biadmm::format_double(entry.gamma2) + " " +
                                              biadmm::format_double(entry.score));
  }
  biadmm::write_summary(out_dir + "/tuning_report.txt", doc);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex biclustering by ADMM over row/column fused-lasso penalties"};
  app.require_subcommand(1);

  // fit
  std::string fit_input, fit_out = ".";
  GraphFlags fit_graphs;
  GammaFlags fit_gammas;
  SolverFlags fit_solver;
  std::uint64_t fit_seed = 0;
  CLI::App* fit = app.add_subcommand("fit", "fit one (gamma1, gamma2) point");
  fit->add_option("input", fit_input, "CSV matrix")->required();
  fit->add_option("--out-dir", fit_out, "output directory")->required();
  auto* fg1 = fit->add_option("--gamma1", fit_gammas.gamma1, "row fusion penalty");
  auto* fg2 = fit->add_option("--gamma2", fit_gammas.gamma2, "column fusion penalty");
  auto* fg = fit->add_option("--gamma", fit_gammas.gamma,
                             "single tuning parameter (rescales weights; excludes --gamma1/2)");
  fg->excludes(fg1);
  fg->excludes(fg2);
  add_graph_flags(fit, fit_graphs);
  add_solver_flags(fit, fit_solver);
  fit->add_option("--seed", fit_seed, "seed echoed for provenance");

  // path
  std::string path_input, path_out = ".";
  GraphFlags path_graphs;
  SolverFlags path_solver;
  std::string path_g1, path_g2, path_g;
  std::uint64_t path_seed = 0;
  CLI::App* path = app.add_subcommand("path", "solution-path snapshots over a gamma grid");
  path->add_option("input", path_input, "CSV matrix")->required();
  path->add_option("--out-dir", path_out, "output directory")->required();
  auto* pg1 = path->add_option("--grid-gamma1", path_g1, "comma-separated gamma1 values");
  auto* pg2 = path->add_option("--grid-gamma2", path_g2, "comma-separated gamma2 values");
  auto* pg = path->add_option("--grid-gamma", path_g, "comma-separated single-gamma values");
  pg->excludes(pg1);
  pg->excludes(pg2);
  add_graph_flags(path, path_graphs);
  add_solver_flags(path, path_solver);
  path->add_option("--seed", path_seed, "seed echoed for provenance");

  // simulate
  std::string sim_design = "checkerboard", sim_out = ".";
  std::uint64_t sim_seed = 0;
  std::size_t sim_n = 50, sim_p = 40, sim_K = 4, sim_R = 4;
  double sim_sigma = 2.0;
  std::size_t sim_arm = 50;
  double sim_dispersion = 0.01;
  long long sim_reads = 10000;
  double sim_fold = 1400.0;
  std::string sim_means, sim_groups;
  CLI::App* sim = app.add_subcommand("simulate", "generate a benchmark dataset with known truth");
  sim->add_option("--design", sim_design, "checkerboard or compositional")
      ->check(CLI::IsMember({"checkerboard", "compositional"}));
  sim->add_option("--out-dir", sim_out, "output directory")->required();
  sim->add_option("--seed", sim_seed, "generator seed");
  sim->add_option("--n", sim_n, "rows (checkerboard)");
  sim->add_option("--p", sim_p, "columns (checkerboard)");
  sim->add_option("--K", sim_K, "row clusters (checkerboard)");
  sim->add_option("--R", sim_R, "column clusters (checkerboard)");
  sim->add_option("--sigma", sim_sigma, "noise standard deviation (checkerboard)");
  sim->add_option("--samples-per-arm", sim_arm, "samples per arm (compositional)");
  sim->add_option("--dispersion", sim_dispersion, "DM overdispersion (compositional)");
  sim->add_option("--reads", sim_reads, "reads per sample (compositional)");
  sim->add_option("--fold-reduction", sim_fold, "ratio fold reduction (compositional)");
  sim->add_option("--proportion-means", sim_means, "comma-separated taxon means (compositional)");
  sim->add_option("--groups", sim_groups, "per-taxon group codes e/s/u (compositional)");

  // ari
  std::string ari_a, ari_b, ari_cols_a, ari_cols_b;
  CLI::App* ari = app.add_subcommand("ari", "adjusted Rand index between two label files");
  ari->add_option("labels_a", ari_a, "first label file")->required();
  ari->add_option("labels_b", ari_b, "second label file")->required();
  ari->add_option("--cols-a", ari_cols_a,
                  "first column-label file (positional files become row labels; emits row, "
                  "column, and product scores)");
  ari->add_option("--cols-b", ari_cols_b, "second column-label file");

  // tune
  std::string tune_input, tune_out = ".", tune_method = "holdout";
  GraphFlags tune_graphs;
  SolverFlags tune_solver;
  std::string tune_g1, tune_g2, tune_g;
  double tune_holdout = 0.1;
  std::size_t tune_reps = 50;
  std::uint64_t tune_seed = 0;
  unsigned tune_threads = 1;
  std::string tune_valid, tune_valid_rows, tune_valid_cols;
  CLI::App* tune = app.add_subcommand("tune", "select tuning parameters over a grid");
  tune->add_option("input", tune_input, "CSV matrix")->required();
  tune->add_option("--out-dir", tune_out, "output directory")->required();
  tune->add_option("--method", tune_method, "holdout, stability, or ari")
      ->check(CLI::IsMember({"holdout", "stability", "ari"}));
  auto* tg1 = tune->add_option("--grid-gamma1", tune_g1, "comma-separated gamma1 values");
  auto* tg2 = tune->add_option("--grid-gamma2", tune_g2, "comma-separated gamma2 values");
  auto* tg = tune->add_option("--grid-gamma", tune_g, "comma-separated single-gamma values");
  tg->excludes(tg1);
  tg->excludes(tg2);
  add_graph_flags(tune, tune_graphs);
  add_solver_flags(tune, tune_solver);
  tune->add_option("--holdout-frac", tune_holdout, "held-out fraction (holdout method)");
  tune->add_option("--repetitions", tune_reps, "bootstrap repetitions (stability method)");
  tune->add_option("--seed", tune_seed, "seed for masks and bootstraps");
  tune->add_option("--threads", tune_threads, "worker threads for grid evaluation");
  tune->add_option("--valid-data", tune_valid, "validation matrix (ari method)");
  tune->add_option("--valid-row-labels", tune_valid_rows, "validation row truth (ari method)");
  tune->add_option("--valid-col-labels", tune_valid_cols, "validation column truth (ari method)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (fit->parsed())
      return cmd_fit(fit_input, fit_out, fit_graphs, fit_gammas, fit_solver, fit_seed);
    if (path->parsed()) {
      if (path_g.empty() && (path_g1.empty() || path_g2.empty()))
        throw std::invalid_argument("path needs --grid-gamma or both --grid-gamma1/--grid-gamma2");
      return cmd_path(path_input, path_out, path_graphs, path_g1, path_g2, path_g, path_solver,
                      path_seed);
    }
    if (sim->parsed())
      return cmd_simulate(sim_design, sim_out, sim_seed, sim_n, sim_p, sim_K, sim_R, sim_sigma,
                          sim_arm, sim_dispersion, sim_reads, sim_fold, sim_means, sim_groups);
    if (ari->parsed()) return cmd_ari(ari_a, ari_b, ari_cols_a, ari_cols_b);
    if (tune->parsed()) {
      if (tune_g.empty() && tune_g1.empty() != tune_g2.empty())
        throw std::invalid_argument("tune needs both --grid-gamma1 and --grid-gamma2");
      return cmd_tune(tune_input, tune_out, tune_method, tune_graphs, tune_g1, tune_g2, tune_g,
                      tune_solver, tune_holdout, tune_reps, tune_seed, tune_threads, tune_valid,
                      tune_valid_rows, tune_valid_cols);
    }
  } catch (const biadmm::CsvError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}
