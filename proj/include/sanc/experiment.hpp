#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sanc/optimizer.hpp"

namespace sanc {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ObjectiveKind { logistic_nonconvex, nonconvex_svm, synthetic_saddle };

enum class InitKind { ones, zeros };

struct ExperimentConfig {
  std::string dataset_path;  // empty for synthetic_saddle
  ObjectiveKind objective = ObjectiveKind::logistic_nonconvex;
  std::size_t saddle_dim = 10;
  double lambda = 1.0;
  std::vector<OptimizerKind> optimizers;
  std::vector<std::uint64_t> seeds;
  long budget = 0;  // shared oracle-call budget; 0 = run to max_iter
  std::filesystem::path out_dir = "out";
  SancConfig base;           // per-run seed/budget filled in by the runner
  long batch_g = -1;         // -1: default (ceil(n/20) for dataset objectives)
  long batch_B = -1;
  InitKind init = InitKind::ones;
  std::size_t dim_override = 0;
  bool scale_features = false;
  int workers = 1;
};

// Parse + validate a flat JSON key/value document. Unknown keys are
// rejected; errors name the offending field.
ExperimentConfig validate_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::filesystem::path& path);

struct RunSummary {
  OptimizerKind optimizer;
  std::uint64_t seed = 0;
  double final_loss = 0.0;
  std::size_t iterations = 0;
  long oracle_calls = 0;
  std::size_t unsuccessful_iterations = 0;
  double wall_time_s = 0.0;
};

struct ExperimentResult {
  std::vector<RunSummary> runs;
  std::vector<std::filesystem::path> trace_files;
  std::filesystem::path summary_file;
};

// Trace CSV body (header row + data rows, no metadata comments).
void write_trace_csv_body(std::ostream& out, const Trace& trace);

// Runs every (optimizer, seed) pair, writes one trace CSV per run plus
// runs.csv and summary.csv (per-optimizer mean loss on a shared
// oracle-call grid, linear interpolation between recorded points).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace sanc
