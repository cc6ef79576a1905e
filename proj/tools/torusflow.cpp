// Command-line driver: simulation runs, invariant checks and convergence
// studies for mean curvature flow with a perpendicular contact condition
// inside a torus of revolution.

#include <iostream>

#include <CLI11.hpp>

#include "torusflow/operators.hpp"
#include "torusflow/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"torusflow: graphical mean curvature flow inside a rotational torus"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int levels = 3;

  CLI::App* run = app.add_subcommand("run", "integrate the flow and write diagnostics");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output directory (default: output.dir)");

  CLI::App* check = app.add_subcommand("check", "run the invariant battery");
  check->add_option("--config", config_path, "config file")->required();

  CLI::App* mms = app.add_subcommand("mms", "manufactured-solution convergence study");
  mms->add_option("--config", config_path, "config file")->required();
  mms->add_option("--levels", levels, "number of refinement levels (>= 3)");

  CLI11_PARSE(app, argc, argv);

  try {
    torusflow::num_threads();  // latch TORUSFLOW_THREADS
    const torusflow::RunConfig cfg = torusflow::load_config(config_path);
    if (run->parsed())
      return torusflow::cmd_run(cfg, out_dir, std::cout, std::cerr);
    if (check->parsed()) return torusflow::cmd_check(cfg, std::cout);
    return torusflow::cmd_mms(cfg, levels, out_dir, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
