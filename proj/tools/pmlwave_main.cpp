#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "pmlwave/run.hpp"

namespace {

std::string output_dir() {
  const char* dir = std::getenv("PMLWAVE_OUTDIR");
  return dir && *dir ? dir : ".";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D acoustic wave solver with Cartesian unsplit PMLs"};
  app.require_subcommand(1);

  long seed = 0;  // reserved; the solver paths are deterministic
  app.add_option("--seed", seed, "reserved, currently ignored");

  std::string run_path, sweep_path, eig_path, corner_path;
  CLI::App* cmd_run = app.add_subcommand("run", "run one simulation");
  cmd_run->add_option("config", run_path, "config file")->required();
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "empirical stability boundary sweep");
  cmd_sweep->add_option("config", sweep_path, "config file")->required();
  CLI::App* cmd_eig = app.add_subcommand("eig", "largest eigenvalues and time-step bounds");
  cmd_eig->add_option("config", eig_path, "config file")->required();
  CLI::App* cmd_corner = app.add_subcommand("corner-decay", "damped corner-system decay record");
  cmd_corner->add_option("config", corner_path, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pml::kExitUsage;
  }

  try {
    const std::string out = output_dir();
    if (cmd_run->parsed()) {
      return pml::run_experiment(pml::parse_run_config(pml::read_text_file(run_path)), out,
                                 std::cout);
    }
    if (cmd_sweep->parsed()) {
      return pml::sweep_experiment(pml::parse_sweep_config(pml::read_text_file(sweep_path)), out,
                                   std::cout);
    }
    if (cmd_eig->parsed()) {
      return pml::eig_experiment(pml::parse_eig_config(pml::read_text_file(eig_path)), out,
                                 std::cout);
    }
    return pml::corner_experiment(pml::parse_corner_config(pml::read_text_file(corner_path)), out,
                                  std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pml::kExitUsage;
  }
}
