// SPDX-License-Identifier: Apache-2.0
// Experiment runner for the block-counting chain and its scaling limit.
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mlcoal/harness/config.hpp"
#include "mlcoal/harness/experiments.hpp"
#include "mlcoal/harness/result.hpp"
#include "mlcoal/precision.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<long long> replicates;
  std::string out;
  std::optional<std::string> format;
  std::optional<int> precision_bits;
  std::optional<int> jobs;
  bool timings = false;
};

void attach_options(CLI::App* sub, Overrides& ov) {
  sub->add_option("--config", ov.config_path, "Config file (flat key=value lines)");
  sub->add_option("--seed", ov.seed, "Master seed for all random streams");
  sub->add_option("--replicates", ov.replicates, "Monte Carlo replicates per draw set");
  sub->add_option("--out", ov.out, "Output path (default: stdout)");
  sub->add_option("--format", ov.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--precision-bits", ov.precision_bits,
                  "Mantissa bits for alternating-sum evaluation");
  sub->add_option("--jobs", ov.jobs, "Worker threads (output is identical for any value)");
  sub->add_flag("--timings", ov.timings, "Record wall time per row (breaks byte determinism)");
}

mlcoal::ExperimentConfig build_config(mlcoal::Experiment experiment, const Overrides& ov) {
  mlcoal::ExperimentConfig cfg;
  if (!ov.config_path.empty()) {
    cfg = mlcoal::load_config(ov.config_path);
    if (cfg.experiment != experiment)
      throw mlcoal::ConfigError(std::string("config file selects experiment '") +
                                mlcoal::experiment_name(cfg.experiment) +
                                "' but the subcommand is '" + mlcoal::experiment_name(experiment) +
                                "'");
  } else {
    cfg = mlcoal::default_config(experiment);
  }
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.replicates) cfg.replicates = *ov.replicates;
  if (!ov.out.empty()) cfg.out = ov.out;
  if (ov.format) cfg.format = (*ov.format == "json") ? mlcoal::OutputFormat::Json
                                                     : mlcoal::OutputFormat::Csv;
  if (ov.precision_bits) cfg.precision_bits = *ov.precision_bits;
  if (ov.jobs) cfg.jobs = *ov.jobs;
  if (ov.timings) cfg.timings = true;
  cfg.finalize();
  return cfg;
}

int run(mlcoal::Experiment experiment, const Overrides& ov) {
  const mlcoal::ExperimentConfig cfg = build_config(experiment, ov);
  const mlcoal::ExperimentResult result = mlcoal::run_experiment(cfg);

  std::ostringstream body;
  if (cfg.format == mlcoal::OutputFormat::Json)
    mlcoal::write_json(result, body, cfg.timings);
  else
    mlcoal::write_csv(result, body, cfg.timings);
  if (cfg.out.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw mlcoal::ConfigError("cannot open output path '" + cfg.out + "'");
    file << body.str();
  }

  std::cerr << mlcoal::experiment_name(cfg.experiment) << ": " << result.rows.size() << " rows, "
            << result.failed_count() << " failed, seed " << cfg.seed << "\n";
  return result.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-counting chain of the uniform-measure coalescent and its scaling limit"};
  app.require_subcommand(1);

  Overrides ov;
  mlcoal::Experiment chosen{};
  for (int i = 0; i < 7; ++i) {
    const auto experiment = static_cast<mlcoal::Experiment>(i);
    CLI::App* sub = app.add_subcommand(mlcoal::experiment_name(experiment),
                                       mlcoal::experiment_summary(experiment));
    attach_options(sub, ov);
    sub->callback([&chosen, experiment] { chosen = experiment; });
  }

  CLI11_PARSE(app, argc, argv);
  try {
    return run(chosen, ov);
  } catch (const mlcoal::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const mlcoal::PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
