#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfx/attribution.hpp"
#include "cfx/model.hpp"
#include "cfx/sedc.hpp"

namespace cfx {

struct parse_error : std::runtime_error {
  parse_error(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line(line), column(column) {}
  std::size_t line;
  std::size_t column;
};

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Text format: optional comment lines, a "#dim m" header, then one instance
/// per line as "label idx:val idx:val ..." with strictly increasing indices.
Dataset load_sparse_dataset(const std::string& path);
Dataset parse_sparse_dataset(const std::string& text);
void save_sparse_dataset(const Dataset& d, const std::string& path);

struct ExperimentConfig {
  std::string dataset_path;
  std::string model_source = "train-linear";  // train-linear | train-mlp | load
  std::string model_path;                     // required for load

  double l2_strength = 1e-4;
  int epochs = 200;
  int hidden = 8;
  double learning_rate = 0.1;
  unsigned train_seed = 0;
  std::string threshold = "imbalance";  // "imbalance" or a number

  std::vector<std::string> algorithms;  // sedc, lime-c, shap-c, random, complete
  std::vector<unsigned> seeds;          // for the stochastic algorithms
  SearchConfig search;
  AttributionConfig attribution;
  std::uint64_t max_combinations = 1000000;  // complete-search budget
  std::uint64_t max_draws = 0;               // random baseline, 0 = unlimited
  std::size_t max_instances = 0;             // 0 = all positively predicted

  std::string output_dir = ".";
};

/// Flat key=value config file ('#' comments). Unknown keys and malformed
/// values raise config_error.
ExperimentConfig parse_experiment_config(const std::string& path);

struct BenchmarkRecord {
  std::size_t instance_id = 0;
  std::uint32_t active_count = 0;
  std::string algorithm;
  unsigned seed = 0;
  std::string status;         // found | budget_exhausted | not_found | error
  int switching_point = -1;   // -1 when absent
  double score_change = 0.0;
  std::int64_t elapsed_us = 0;
  std::string note;
};

/// One record per positively predicted instance x algorithm x seed, wall
/// time measured around each explanation call. Deterministic algorithms
/// (sedc, complete) run once with seed 0. A throwing call becomes a record
/// with status "error"; it never aborts the run.
std::vector<BenchmarkRecord> run_grid(const Classifier& c, const Dataset& d,
                                      const ExperimentConfig& cfg);

/// Loads the dataset, builds the model per cfg, then run_grid.
std::vector<BenchmarkRecord> run_experiment(const ExperimentConfig& cfg);

void write_records_csv(const std::vector<BenchmarkRecord>& records,
                       const std::string& path);
std::vector<BenchmarkRecord> read_records_csv(const std::string& path);

/// records.csv, summary.json, and the plot tables sp_vs_time.csv /
/// actives_vs_time.csv under out_dir.
void emit_report(std::vector<BenchmarkRecord> records,
                 const std::string& out_dir);

std::string explanation_to_json(const Explanation& e);

}  // namespace cfx
