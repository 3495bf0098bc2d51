#ifndef WSN_EXPERIMENT_HPP_
#define WSN_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wsn/dataset.hpp"
#include "wsn/metrics.hpp"
#include "wsn/settings.hpp"
#include "wsn/simulation.hpp"

namespace wsn {

/// Simulation parameters from settings; deployment uses `nodes`,
/// `tx_radius` and `seed`.
SimConfig sim_config_from(const Settings& settings);

struct SweepSpec {
  std::vector<int> node_counts{100, 150, 200, 250, 300};
  std::vector<double> tx_radii{100, 200, 300};
  int graphs_per_cell = 30;
  std::uint64_t base_seed = 1;
  std::vector<CostVariant> methods{CostVariant::kPdtm, CostVariant::kDdtm};

  void validate() const;
};

SweepSpec sweep_spec_from(const Settings& settings);

/// Layout seed of one sweep cell. Independent of the method so every method
/// in a cell sees the same deployment.
std::uint64_t sweep_cell_seed(std::uint64_t base_seed, int n_nodes, double tx_radius, int index);

struct SweepRow {
  int n_nodes = 0;
  double tx_radius = 0.0;
  int graph_index = 0;
  std::uint64_t seed = 0;
  CostVariant method = CostVariant::kPdtm;
  ExperimentTotals totals;
  double initial_energy = 0.0;
  double final_residual = 0.0;
  double avg_neighbors = 0.0;
  double avg_hops = 0.0;
  double avg_distance = 0.0;
};

/// Rows in grid order: node count, radius, graph index, method.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SimConfig& base, int workers = 1);

struct AnalyticsSweepSpec {
  int runs = 1000;
  int repeats_per_config = 5;
  double tx_min = 30, tx_max = 250;
  int size_min = 10, size_max = 200;
  int sinks_min = 1, sinks_max = 50;
  double rx_cost_min = 0, rx_cost_max = 2000;
  int window_slots = 100;
  std::uint64_t seed = 1;

  void validate() const;
};

AnalyticsSweepSpec analytics_spec_from(const Settings& settings);

/// Columns: configuration parameters, then observed ones, then the target.
inline const std::vector<std::string> kDatasetColumns{
    "tx_radius", "network_size", "sinks", "transmission_cost", "transmission_delay",
    "avg_distance", "avg_neighbors", "receive_cost", "avg_hops"};
inline const std::string kDatasetTarget = "avg_energy_per_packet";

struct GeneratedDataset {
  Dataset data;
  int excluded = 0;  // configurations where no repeat delivered a packet
};

GeneratedDataset generate_dataset(const AnalyticsSweepSpec& spec, const SimConfig& base, int workers = 1);

struct AnalysisResult {
  DependencyReport report;
  EvalReport all_features;
  EvalReport prevalent_only;
  bool prevalent_model_fitted = false;
  std::vector<std::string> prevalent_names;
};

struct AnalysisOptions {
  double corr_threshold = 0.35;
  double p_threshold = 0.05;
  int folds = 5;
  int n_trees = 20;
  int min_leaf = 1;
  double lasso_ratio = 0.1;
  std::uint64_t seed = 1;
};

/// Correlations and Lasso, prevalent selection, then two forests (all
/// parameters vs prevalent ones) scored on pooled out-of-fold predictions.
AnalysisResult analyze_dataset(const Dataset& data, const AnalysisOptions& options);

struct EdmFitResult {
  EdmModel model;
  EdmColumnMask used{};
  EvalReport test;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
};

/// Reads b_individual ... b_sink, e_overall; flow columns that are all zero
/// are dropped from the fit.
std::vector<EdmObservation> read_edm_observations(const Dataset& data);

/// Seeded shuffle, hold out round(test_fraction * M) rows, fit on the rest.
EdmFitResult fit_edm_holdout(const std::vector<EdmObservation>& obs, double test_fraction, std::uint64_t seed);

// Command entry points. Each writes one file, starting with a '#' header that
// echoes every setting. The output file is opened before any work starts.
void cmd_sweep(const Settings& settings, const std::string& out_path);
void cmd_dataset(const Settings& settings, const std::string& out_path);
void cmd_analyze(const Settings& settings, const std::string& dataset_path, const std::string& out_path);
void cmd_fit_edm(const Settings& settings, const std::string& flows_path, const std::string& out_path);
void cmd_compare(const Settings& settings, const std::string& out_path);

}  // namespace wsn

#endif  // WSN_EXPERIMENT_HPP_
