// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mlcoal {

// One audited comparison. `pass` is always recomputable from the same row:
// pass == (error <= tolerance). Informational rows carry tolerance = inf.
struct ResultRow {
  std::string experiment;
  std::string params;     // "key=value;key=value", keys alphabetical
  std::string statistic;
  double exact = 0.0;
  double estimate = 0.0;
  double error = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  double seconds = 0.0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;

  bool all_pass() const;
  std::size_t failed_count() const;

  // Sets row.pass from error <= tolerance and appends.
  void add(ResultRow row);
};

// %.17g with C-locale decimal point.
std::string format_real(double x);

// Schema: experiment,params,statistic,exact,estimate,error,tolerance,pass,seconds
// UTF-8, '\n' line ends, 17 significant digits. `seconds` is written as 0
// unless with_timings is set, keeping equal-seed outputs byte-identical.
void write_csv(const ExperimentResult& result, std::ostream& out, bool with_timings);

// Same rows as a JSON document {"rows": [...]}.
void write_json(const ExperimentResult& result, std::ostream& out, bool with_timings);

}  // namespace mlcoal
