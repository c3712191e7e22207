#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "replimap/cli.hpp"
#include "replimap/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"replicator-map dynamics toolkit: orbits, horseshoe certificates, mean-b maps"};
  app.get_formatter()->column_width(26);

  replimap::RunConfig cfg;
  std::string a_str = "8";
  std::string b_str = "1/2";

  app.add_option("command", cfg.command,
                 "one of: iterate | fixed-points | critical-points | orbits | period2 | "
                 "attractors | bifurcation | lyapunov | certify | cylinders | itinerary | "
                 "code | mean-check | cohomology")
      ->required();
  app.add_option("--a", a_str, "steepness parameter a (decimal or exact ratio p/q)");
  app.add_option("--b", b_str, "mean parameter b (decimal or exact ratio p/q)");
  app.add_option("--x0", cfg.x0, "initial point in (0,1)");
  app.add_option("--y", cfg.y, "point in the log-odds coordinate (code command)");
  app.add_option("--n", cfg.n, "iteration count / orbit period / word length");
  app.add_option("--grid", cfg.grid, "scan grid size (0: 2048 per period unit)");
  app.add_option("--transient", cfg.transient, "iterations discarded before detection");
  app.add_option("--max-period", cfg.max_period, "largest period the detector reports");
  app.add_option("--depth", cfg.depth, "cylinder depth");
  app.add_option("--steps", cfg.steps, "parameter steps in a bifurcation scan");
  app.add_option("--samples", cfg.samples, "attractor points kept per scan row");
  app.add_option("--a-lo", cfg.a_lo, "scan range start (must be > 4)");
  app.add_option("--a-hi", cfg.a_hi, "scan range end");
  app.add_option("--word", cfg.word, "itinerary word over {0,1}");
  app.add_option("--family", cfg.family, "replicator | ricker | arctan | probit");
  app.add_option("--format", cfg.format, "csv | json");
  app.add_option("--out", cfg.out, "output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.a = replimap::parse_real_or_ratio(a_str);
    cfg.b = replimap::parse_real_or_ratio(b_str);
  } catch (const replimap::error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return replimap::run_to_destination(cfg);
}
