// SPDX-License-Identifier: Apache-2.0
#include "mlcoal/harness/result.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace mlcoal {

bool ExperimentResult::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.pass; });
}

std::size_t ExperimentResult::failed_count() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const ResultRow& r) { return !r.pass; }));
}

void ExperimentResult::add(ResultRow row) {
  row.pass = row.error <= row.tolerance;
  rows.push_back(std::move(row));
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_csv(const ExperimentResult& result, std::ostream& out, bool with_timings) {
  out << "experiment,params,statistic,exact,estimate,error,tolerance,pass,seconds\n";
  for (const ResultRow& r : result.rows) {
    out << r.experiment << ',' << r.params << ',' << r.statistic << ',' << format_real(r.exact)
        << ',' << format_real(r.estimate) << ',' << format_real(r.error) << ','
        << format_real(r.tolerance) << ',' << (r.pass ? "true" : "false") << ','
        << format_real(with_timings ? r.seconds : 0.0) << '\n';
  }
}

void write_json(const ExperimentResult& result, std::ostream& out, bool with_timings) {
  nlohmann::ordered_json doc;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const ResultRow& r : result.rows) {
    nlohmann::ordered_json row;
    row["experiment"] = r.experiment;
    row["params"] = r.params;
    row["statistic"] = r.statistic;
    row["exact"] = format_real(r.exact);
    row["estimate"] = format_real(r.estimate);
    row["error"] = format_real(r.error);
    row["tolerance"] = format_real(r.tolerance);
    row["pass"] = r.pass;
    row["seconds"] = format_real(with_timings ? r.seconds : 0.0);
    doc["rows"].push_back(std::move(row));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace mlcoal
