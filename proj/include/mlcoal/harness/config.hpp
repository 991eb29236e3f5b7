// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlcoal {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Experiment {
  ConvergeMoments,
  ConvergeDist,
  Fdd,
  CkCheck,
  SemigroupCompare,
  SubordinatorCheck,
  GeneratorCheck,
};

const char* experiment_name(Experiment e);
const char* experiment_summary(Experiment e);
Experiment experiment_from_name(const std::string& name);

enum class OutputFormat { Csv, Json };

// Flat key = value experiment description. Unset lists fall back to
// per-experiment defaults (see default_config); `experiment` itself is the
// only required key when loading from text.
struct ExperimentConfig {
  Experiment experiment = Experiment::ConvergeMoments;
  std::vector<long long> n_list;
  std::vector<double> t_list;
  std::vector<double> s_list;
  std::vector<double> m_list;
  std::vector<double> x_list;
  std::vector<int> k_list;
  std::vector<double> alpha_list;
  long long replicates = 0;
  std::uint64_t seed = 42;
  int precision_bits = 256;
  double tolerance = 0.0;
  double chain_tolerance = 1e-8;
  double quad_tolerance = 1e-6;
  double significance = 0.01;
  double window = 3.0;
  double step = 0.01;
  double truncation = 1e-4;
  int jobs = 1;
  bool timings = false;
  OutputFormat format = OutputFormat::Csv;
  std::string out;  // empty or "-" = stdout

  // Sorts the lists, fills empty ones from defaults, checks experiment-specific
  // preconditions. Throws ConfigError naming the offending key.
  void finalize();
};

// Baseline configuration (grids, replicates, tolerance) for an experiment.
ExperimentConfig default_config(Experiment e);

// Parses `key = value` lines ('#' comments). Unknown or duplicate keys and a
// missing `experiment` key raise ConfigError naming the key. The result is
// finalized.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

// Writes every key explicitly; load_config(save_config(c)) round-trips.
void save_config(const ExperimentConfig& cfg, std::ostream& out);
void save_config(const ExperimentConfig& cfg, const std::string& path);

}  // namespace mlcoal
