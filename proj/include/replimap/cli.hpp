#pragma once

#include <iosfwd>
#include <string>

namespace replimap {

// One batch invocation. Defaults mirror the module defaults and are echoed
// in the "# config:" comment line of CSV output.
struct RunConfig {
  std::string command;
  double a = 8.0;
  double b = 0.5;
  double x0 = 0.5;
  double y = 0.0;
  long n = 8;
  long grid = 0;  // 0 -> 2048 * n
  long transient = 10000;
  int max_period = 64;
  int depth = 12;
  int steps = 100;
  int samples = 8;
  double a_lo = 0.0, a_hi = 0.0;
  std::string word;
  std::string family = "replicator";
  std::string format = "csv";  // csv | json
  std::string out;             // empty -> stdout
};

// Parse "p/q" exactly (single correctly-rounded division) or a plain decimal.
double parse_real_or_ratio(const std::string& text);

// Dispatch to the library; writes the document to `doc` and diagnostics to
// `diag`. Exit status: 0 ok, 1 precondition/domain error, 2 convergence
// failure. Never throws on any config.
int run(const RunConfig& cfg, std::ostream& doc, std::ostream& diag);

// run() plus destination resolution (cfg.out or stdout).
int run_to_destination(const RunConfig& cfg);

}  // namespace replimap
