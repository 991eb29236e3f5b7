// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "mlcoal/harness/config.hpp"
#include "mlcoal/harness/experiments.hpp"
#include "mlcoal/harness/parallel.hpp"
#include "mlcoal/harness/result.hpp"
#include "mlcoal/rng.hpp"

using namespace mlcoal;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = std::string("/tmp/mlcoal_test_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

std::string render_csv(const ExperimentResult& r) {
  std::ostringstream out;
  write_csv(r, out, false);
  return out.str();
}

}  // namespace

TEST_CASE("experiment names round-trip") {
  for (int i = 0; i < 7; ++i) {
    const auto e = static_cast<Experiment>(i);
    CHECK(experiment_from_name(experiment_name(e)) == e);
  }
  CHECK_THROWS_AS(experiment_from_name("no-such-experiment"), ConfigError);
}

TEST_CASE("config parsing") {
  SUBCASE("missing experiment key is named") {
    const auto path = write_temp("noexp.cfg", "seed = 9\n");
    try {
      load_config(path);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("experiment") != std::string::npos);
    }
  }
  SUBCASE("unknown key is named") {
    const auto path = write_temp("unknown.cfg", "experiment = ck-check\nbogus_key = 3\n");
    try {
      load_config(path);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
    }
  }
  SUBCASE("duplicate key rejected") {
    const auto path = write_temp("dup.cfg", "experiment = ck-check\nseed = 1\nseed = 2\n");
    CHECK_THROWS_AS(load_config(path), ConfigError);
  }
  SUBCASE("comments and lists") {
    const auto path = write_temp("lists.cfg",
                                 "# comment\nexperiment = converge-moments\n"
                                 "n_list = 100, 1000\nt_list = 0.5\nm_list = 1, 2\n");
    const ExperimentConfig cfg = load_config(path);
    CHECK(cfg.n_list == std::vector<long long>{100, 1000});
    CHECK(cfg.m_list == std::vector<double>{1.0, 2.0});
  }
}

TEST_CASE("config round-trips through save and load") {
  ExperimentConfig cfg = default_config(Experiment::Fdd);
  cfg.seed = 777;
  cfg.replicates = 12345;
  cfg.tolerance = 0.125;
  cfg.format = OutputFormat::Json;
  cfg.finalize();
  const auto path = write_temp("roundtrip.cfg", "");
  {
    std::ofstream out(path);
    save_config(cfg, out);
  }
  const ExperimentConfig back = load_config(path);
  CHECK(back.experiment == cfg.experiment);
  CHECK(back.seed == cfg.seed);
  CHECK(back.replicates == cfg.replicates);
  CHECK(back.tolerance == cfg.tolerance);
  CHECK(back.n_list == cfg.n_list);
  CHECK(back.t_list == cfg.t_list);
  CHECK(back.m_list == cfg.m_list);
  CHECK(back.format == cfg.format);
}

TEST_CASE("per-experiment validation") {
  SUBCASE("fdd exponent budget") {
    ExperimentConfig cfg = default_config(Experiment::Fdd);
    cfg.m_list = {4.0, 3.0};
    CHECK_THROWS_AS(cfg.finalize(), ConfigError);
  }
  SUBCASE("fdd paired list lengths") {
    ExperimentConfig cfg = default_config(Experiment::Fdd);
    cfg.m_list = {1.0};
    CHECK_THROWS_AS(cfg.finalize(), ConfigError);
  }
  SUBCASE("fdd needs increasing times") {
    ExperimentConfig cfg = default_config(Experiment::Fdd);
    cfg.t_list = {1.5, 0.5};
    CHECK_THROWS_AS(cfg.finalize(), ConfigError);
  }
  SUBCASE("converge-dist replicate floor") {
    ExperimentConfig cfg = default_config(Experiment::ConvergeDist);
    cfg.replicates = 100;
    CHECK_THROWS_AS(cfg.finalize(), ConfigError);
  }
  SUBCASE("ck-check caps the chain size") {
    ExperimentConfig cfg = default_config(Experiment::CkCheck);
    cfg.n_list = {150};
    CHECK_THROWS_AS(cfg.finalize(), ConfigError);
  }
  SUBCASE("generator-check needs two times for extrapolation") {
    ExperimentConfig cfg = default_config(Experiment::GeneratorCheck);
    cfg.t_list = {1e-3};
    CHECK_THROWS_AS(cfg.finalize(), ConfigError);
  }
}

TEST_CASE("parallel map is independent of the worker count") {
  auto fn = [](std::int64_t i) {
    Rng rng(42, static_cast<std::uint64_t>(i));
    return rng.uniform();
  };
  const auto serial = parallel_map(5000, 1, fn);
  const auto par4 = parallel_map(5000, 4, fn);
  const auto par9 = parallel_map(5000, 9, fn);
  CHECK(serial == par4);
  CHECK(serial == par9);
}

TEST_CASE("parallel map propagates exceptions") {
  auto fn = [](std::int64_t i) -> double {
    if (i == 1234) throw std::runtime_error("boom");
    return 0.0;
  };
  CHECK_THROWS_AS(parallel_map(5000, 4, fn), std::runtime_error);
}

TEST_CASE("result rows judge themselves") {
  ExperimentResult r;
  ResultRow row;
  row.experiment = "x";
  row.error = 0.5;
  row.tolerance = 0.5;
  r.add(row);
  row.error = 0.6;
  r.add(row);
  CHECK(r.rows[0].pass);
  CHECK_FALSE(r.rows[1].pass);
  CHECK_FALSE(r.all_pass());
  CHECK(r.failed_count() == 1);
}

TEST_CASE("CSV output is stable and 17-digit") {
  ExperimentResult r;
  ResultRow row;
  row.experiment = "demo";
  row.params = "a=1;b=2.5";
  row.statistic = "stat";
  row.exact = 1.0 / 3.0;
  row.estimate = 0.333;
  row.error = 1.0 / 3.0 - 0.333;
  row.tolerance = std::numeric_limits<double>::infinity();
  row.seconds = 9.0;  // hidden without the timings flag
  r.add(row);
  const std::string text = render_csv(r);
  CHECK(text ==
        "experiment,params,statistic,exact,estimate,error,tolerance,pass,seconds\n"
        "demo,a=1;b=2.5,stat,0.33333333333333331,0.33300000000000002,"
        "0.00033333333333329662,inf,true,0\n");
  // parsing the printed value recovers the double exactly
  CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("JSON output mirrors the rows") {
  ExperimentResult r;
  ResultRow row;
  row.experiment = "demo";
  row.statistic = "stat";
  row.exact = 1.0 / 3.0;
  row.estimate = 2.5;
  row.error = 0.5;
  row.tolerance = 1.0;
  r.add(row);
  std::ostringstream out;
  write_json(r, out, false);
  const auto doc = nlohmann::json::parse(out.str());
  REQUIRE(doc.at("rows").size() == 1);
  const auto& jrow = doc.at("rows").at(0);
  CHECK(jrow.at("experiment") == "demo");
  CHECK(jrow.at("pass") == true);
  // numerics are serialized as 17-digit strings; parsing recovers the double
  CHECK(std::stod(jrow.at("exact").get<std::string>()) == 1.0 / 3.0);
}

TEST_CASE("runs are deterministic end to end") {
  ExperimentConfig cfg = default_config(Experiment::GeneratorCheck);
  cfg.k_list = {1, 2};
  cfg.x_list = {1.0};
  cfg.finalize();
  const std::string once = render_csv(run_experiment(cfg));
  const std::string twice = render_csv(run_experiment(cfg));
  CHECK(once == twice);
  CHECK(once.find("generator_extrapolation") != std::string::npos);
}

TEST_CASE("monte carlo experiments are worker-count invariant") {
  ExperimentConfig cfg = default_config(Experiment::ConvergeDist);
  cfg.n_list = {50, 200};
  cfg.replicates = 10000;
  cfg.finalize();
  ExperimentConfig cfg4 = cfg, cfg8 = cfg;
  cfg4.jobs = 4;
  cfg8.jobs = 8;
  const std::string j1 = render_csv(run_experiment(cfg));
  const std::string j4 = render_csv(run_experiment(cfg4));
  const std::string j8 = render_csv(run_experiment(cfg8));
  CHECK(j1 == j4);
  CHECK(j1 == j8);
}

#ifdef MLCOAL_CLI_PATH
TEST_CASE("command line exit codes") {
  const std::string cli = MLCOAL_CLI_PATH;
  auto run = [&cli](const std::string& args) {
    const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };
  CHECK(run("generator-check") == 0);
  CHECK(run("ck-check --config /tmp/mlcoal_missing_file.cfg") == 2);
  // a config whose experiment disagrees with the subcommand
  const auto mismatch = write_temp("mismatch.cfg", "experiment = fdd\n");
  CHECK(run("ck-check --config " + mismatch) == 2);
  // impossible tolerance forces a failing row and exit 1
  const auto strict = write_temp("strict.cfg",
                                 "experiment = generator-check\ntolerance = 1e-30\n");
  CHECK(run("generator-check --config " + strict) == 1);
}
#endif
