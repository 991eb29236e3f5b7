// SPDX-License-Identifier: Apache-2.0
#include "mlcoal/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <type_traits>

namespace mlcoal {

namespace {

const std::map<std::string, Experiment>& name_table() {
  static const std::map<std::string, Experiment> table = {
      {"converge-moments", Experiment::ConvergeMoments},
      {"converge-dist", Experiment::ConvergeDist},
      {"fdd", Experiment::Fdd},
      {"ck-check", Experiment::CkCheck},
      {"semigroup-compare", Experiment::SemigroupCompare},
      {"subordinator-check", Experiment::SubordinatorCheck},
      {"generator-check", Experiment::GeneratorCheck},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse real value '" + v + "'");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse integer value '" + v + "'");
  }
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::vector<double> parse_real_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& p : split_list(v)) out.push_back(parse_real(key, p));
  if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("config key '" + key + "': expected true/false, got '" + v + "'");
}

void require_integers(const std::string& key, const std::vector<double>& xs, double lo,
                      double hi) {
  for (double x : xs) {
    if (x != std::floor(x) || x < lo || x > hi) {
      std::ostringstream msg;
      msg << "config key '" << key << "': entries must be integers in [" << lo << ", " << hi
          << "]";
      throw ConfigError(msg.str());
    }
  }
}

std::string fmt_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out << ", ";
    if constexpr (std::is_same_v<T, double>)
      out << fmt_real(xs[i]);
    else
      out << xs[i];
  }
  return out.str();
}

}  // namespace

const char* experiment_name(Experiment e) {
  for (const auto& [name, val] : name_table())
    if (val == e) return name.c_str();
  throw std::logic_error("experiment_name: unknown experiment");
}

const char* experiment_summary(Experiment e) {
  switch (e) {
    case Experiment::ConvergeMoments:
      return "Exact scaled chain moments against the limit-law moments over n";
    case Experiment::ConvergeDist:
      return "Two-sample KS between simulated scaled chain draws and limit-law draws";
    case Experiment::Fdd:
      return "Joint moments at several times: exact, shifted-product, and Monte Carlo routes";
    case Experiment::CkCheck:
      return "Chapman-Kolmogorov defects of the kernel moments and the chain matrices";
    case Experiment::SemigroupCompare:
      return "Sup-norm gap between the chain semigroup and the limit semigroup on monomials";
    case Experiment::SubordinatorCheck:
      return "Laplace exponent dual routes and the exponential-functional sampler law";
    case Experiment::GeneratorCheck:
      return "Difference quotients of the semigroup against the generator coefficients";
  }
  throw std::logic_error("experiment_summary: unknown experiment");
}

Experiment experiment_from_name(const std::string& name) {
  const auto it = name_table().find(name);
  if (it == name_table().end()) throw ConfigError("unknown experiment '" + name + "'");
  return it->second;
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::ConvergeMoments:
      c.n_list = {100, 1000, 10000, 100000};
      c.t_list = {0.5, 1.0};
      c.m_list = {1, 2, 3};
      c.replicates = 1;
      c.tolerance = 0.02;
      break;
    case Experiment::ConvergeDist:
      c.n_list = {100, 1000, 10000, 100000};
      c.t_list = {1.0};
      c.replicates = 10000;
      c.tolerance = 0.0;
      break;
    case Experiment::Fdd:
      c.n_list = {100, 1000, 10000};
      c.t_list = {0.5, 1.5};
      c.m_list = {1, 1};
      c.replicates = 50000;
      c.tolerance = 0.03;
      break;
    case Experiment::CkCheck:
      c.n_list = {10, 20, 30};
      c.s_list = {0.3, 1.0};
      c.t_list = {0.5, 2.0};
      c.x_list = {0.5, 1.0, 4.0};
      c.m_list = {10};
      c.replicates = 1;
      c.tolerance = 1e-10;
      break;
    case Experiment::SemigroupCompare:
      c.n_list = {100, 1000, 10000, 100000};
      c.s_list = {0.5};
      c.t_list = {0.5};
      c.m_list = {2};
      c.replicates = 1;
      c.tolerance = 0.05;
      break;
    case Experiment::SubordinatorCheck:
      c.alpha_list = {0.2, 0.5, 0.9};
      c.x_list = {0.5, 1.0, 3.0};
      c.replicates = 100000;
      c.tolerance = 0.02;
      break;
    case Experiment::GeneratorCheck:
      c.k_list = {1, 2, 3, 4, 5};
      c.x_list = {0.5, 1.0, 2.0};
      c.t_list = {1e-4, 1e-3, 1e-2};
      c.replicates = 1;
      c.tolerance = 1e-3;
      break;
  }
  return c;
}

void ExperimentConfig::finalize() {
  const ExperimentConfig defaults = default_config(experiment);
  if (n_list.empty()) n_list = defaults.n_list;
  if (t_list.empty()) t_list = defaults.t_list;
  if (s_list.empty()) s_list = defaults.s_list;
  if (m_list.empty()) m_list = defaults.m_list;
  if (x_list.empty()) x_list = defaults.x_list;
  if (k_list.empty()) k_list = defaults.k_list;
  if (alpha_list.empty()) alpha_list = defaults.alpha_list;
  if (replicates == 0) replicates = defaults.replicates;
  if (tolerance == 0.0) tolerance = defaults.tolerance;

  auto sort_unique = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  sort_unique(n_list);
  sort_unique(s_list);
  sort_unique(x_list);
  sort_unique(k_list);
  sort_unique(alpha_list);
  // t_list and m_list stay as given for fdd (they are paired per coordinate).
  if (experiment != Experiment::Fdd) {
    sort_unique(t_list);
    sort_unique(m_list);
  }

  if (replicates < 1) throw ConfigError("config key 'replicates': must be >= 1");
  if (jobs < 1) throw ConfigError("config key 'jobs': must be >= 1");
  if (precision_bits < 64 || precision_bits > 1024)
    throw ConfigError("config key 'precision_bits': must lie in [64, 1024]");
  if (!(significance > 0.0 && significance < 1.0))
    throw ConfigError("config key 'significance': must lie in (0, 1)");
  if (!(window > 0.0)) throw ConfigError("config key 'window': must be > 0");
  if (!(step > 0.0)) throw ConfigError("config key 'step': must be > 0");
  if (!(truncation > 0.0)) throw ConfigError("config key 'truncation': must be > 0");
  if (!(chain_tolerance > 0.0)) throw ConfigError("config key 'chain_tolerance': must be > 0");
  if (!(quad_tolerance > 0.0)) throw ConfigError("config key 'quad_tolerance': must be > 0");
  for (long long n : n_list)
    if (n < 1) throw ConfigError("config key 'n_list': entries must be >= 1");
  for (double t : t_list)
    if (!(t >= 0.0)) throw ConfigError("config key 't_list': entries must be >= 0");
  for (double s : s_list)
    if (!(s >= 0.0)) throw ConfigError("config key 's_list': entries must be >= 0");

  switch (experiment) {
    case Experiment::ConvergeMoments:
      require_integers("m_list", m_list, 0, 20);
      if (!(tolerance > 0.0)) throw ConfigError("config key 'tolerance': must be > 0");
      break;
    case Experiment::ConvergeDist:
      if (replicates < 10000)
        throw ConfigError("config key 'replicates': converge-dist needs >= 10000");
      break;
    case Experiment::Fdd: {
      if (t_list.size() != m_list.size())
        throw ConfigError("config keys 't_list'/'m_list': fdd pairs one exponent per time");
      if (t_list.size() > 4) throw ConfigError("config key 't_list': fdd supports at most 4 times");
      for (std::size_t i = 1; i < t_list.size(); ++i)
        if (!(t_list[i] > t_list[i - 1]))
          throw ConfigError("config key 't_list': fdd times must be strictly increasing");
      require_integers("m_list", m_list, 0, 6);
      double total = 0.0;
      for (double m : m_list) total += m;
      if (total > 6.0)
        throw ConfigError("config key 'm_list': fdd exponents must sum to at most 6");
      if (!(tolerance > 0.0)) throw ConfigError("config key 'tolerance': must be > 0");
      break;
    }
    case Experiment::CkCheck:
      require_integers("m_list", m_list, 0, 30);
      for (long long n : n_list)
        if (n > 100) throw ConfigError("config key 'n_list': ck-check supports n <= 100");
      if (!(tolerance > 0.0)) throw ConfigError("config key 'tolerance': must be > 0");
      break;
    case Experiment::SemigroupCompare:
      require_integers("m_list", m_list, 0, 8);
      if (!(tolerance > 0.0)) throw ConfigError("config key 'tolerance': must be > 0");
      break;
    case Experiment::SubordinatorCheck:
      for (double a : alpha_list)
        if (!(a > 0.0 && a < 1.0))
          throw ConfigError("config key 'alpha_list': entries must lie in (0, 1)");
      for (double x : x_list)
        if (!(x >= 0.0)) throw ConfigError("config key 'x_list': entries must be >= 0");
      if (step > 1e-2) throw ConfigError("config key 'step': subordinator-check needs <= 1e-2");
      if (truncation > 1e-4)
        throw ConfigError("config key 'truncation': subordinator-check needs <= 1e-4");
      if (replicates < 1000)
        throw ConfigError("config key 'replicates': subordinator-check needs >= 1000");
      if (!(tolerance > 0.0)) throw ConfigError("config key 'tolerance': must be > 0");
      break;
    case Experiment::GeneratorCheck:
      for (int k : k_list)
        if (k < 1 || k > 8) throw ConfigError("config key 'k_list': entries must lie in [1, 8]");
      for (double x : x_list)
        if (!(x > 0.0)) throw ConfigError("config key 'x_list': entries must be > 0");
      if (t_list.size() < 2)
        throw ConfigError("config key 't_list': generator-check needs at least two quotient times");
      for (double t : t_list)
        if (!(t > 0.0)) throw ConfigError("config key 't_list': entries must be > 0");
      if (!(tolerance > 0.0)) throw ConfigError("config key 'tolerance': must be > 0");
      break;
  }
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  bool have_experiment = false;
  std::map<std::string, bool> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    if (seen[key]) throw ConfigError("duplicate config key '" + key + "'");
    seen[key] = true;

    if (key == "experiment") {
      cfg.experiment = experiment_from_name(value);
      have_experiment = true;
    } else if (key == "n_list") {
      for (const auto& p : split_list(value)) cfg.n_list.push_back(parse_int(key, p));
      if (cfg.n_list.empty()) throw ConfigError("config key 'n_list': empty list");
    } else if (key == "t_list") {
      cfg.t_list = parse_real_list(key, value);
    } else if (key == "s_list") {
      cfg.s_list = parse_real_list(key, value);
    } else if (key == "m_list") {
      cfg.m_list = parse_real_list(key, value);
    } else if (key == "x_list") {
      cfg.x_list = parse_real_list(key, value);
    } else if (key == "k_list") {
      for (const auto& p : split_list(value))
        cfg.k_list.push_back(static_cast<int>(parse_int(key, p)));
      if (cfg.k_list.empty()) throw ConfigError("config key 'k_list': empty list");
    } else if (key == "alpha_list") {
      cfg.alpha_list = parse_real_list(key, value);
    } else if (key == "replicates") {
      cfg.replicates = parse_int(key, value);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "precision_bits") {
      cfg.precision_bits = static_cast<int>(parse_int(key, value));
    } else if (key == "tolerance") {
      cfg.tolerance = parse_real(key, value);
    } else if (key == "chain_tolerance") {
      cfg.chain_tolerance = parse_real(key, value);
    } else if (key == "quad_tolerance") {
      cfg.quad_tolerance = parse_real(key, value);
    } else if (key == "significance") {
      cfg.significance = parse_real(key, value);
    } else if (key == "window") {
      cfg.window = parse_real(key, value);
    } else if (key == "step") {
      cfg.step = parse_real(key, value);
    } else if (key == "truncation") {
      cfg.truncation = parse_real(key, value);
    } else if (key == "jobs") {
      cfg.jobs = static_cast<int>(parse_int(key, value));
    } else if (key == "timings") {
      cfg.timings = parse_bool(key, value);
    } else if (key == "format") {
      if (value == "csv")
        cfg.format = OutputFormat::Csv;
      else if (value == "json")
        cfg.format = OutputFormat::Json;
      else
        throw ConfigError("config key 'format': expected csv or json, got '" + value + "'");
    } else if (key == "out") {
      cfg.out = value;
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (!have_experiment) throw ConfigError("missing required config key 'experiment'");
  cfg.finalize();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

void save_config(const ExperimentConfig& cfg, std::ostream& out) {
  out << "experiment = " << experiment_name(cfg.experiment) << "\n";
  out << "n_list = " << join(cfg.n_list) << "\n";
  out << "t_list = " << join(cfg.t_list) << "\n";
  if (!cfg.s_list.empty()) out << "s_list = " << join(cfg.s_list) << "\n";
  if (!cfg.m_list.empty()) out << "m_list = " << join(cfg.m_list) << "\n";
  if (!cfg.x_list.empty()) out << "x_list = " << join(cfg.x_list) << "\n";
  if (!cfg.k_list.empty()) out << "k_list = " << join(cfg.k_list) << "\n";
  if (!cfg.alpha_list.empty()) out << "alpha_list = " << join(cfg.alpha_list) << "\n";
  out << "replicates = " << cfg.replicates << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "precision_bits = " << cfg.precision_bits << "\n";
  out << "tolerance = " << fmt_real(cfg.tolerance) << "\n";
  out << "chain_tolerance = " << fmt_real(cfg.chain_tolerance) << "\n";
  out << "quad_tolerance = " << fmt_real(cfg.quad_tolerance) << "\n";
  out << "significance = " << fmt_real(cfg.significance) << "\n";
  out << "window = " << fmt_real(cfg.window) << "\n";
  out << "step = " << fmt_real(cfg.step) << "\n";
  out << "truncation = " << fmt_real(cfg.truncation) << "\n";
  out << "jobs = " << cfg.jobs << "\n";
  out << "timings = " << (cfg.timings ? "true" : "false") << "\n";
  out << "format = " << (cfg.format == OutputFormat::Csv ? "csv" : "json") << "\n";
  if (!cfg.out.empty()) out << "out = " << cfg.out << "\n";
}

void save_config(const ExperimentConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open config file '" + path + "' for writing");
  save_config(cfg, out);
}

}  // namespace mlcoal
