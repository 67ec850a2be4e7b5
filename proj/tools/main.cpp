#include <CLI11.hpp>

#include <iostream>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/csv.hpp"

using namespace nlsscat::cli;

int main(int argc, char** argv) {
  CLI::App app{"nlsscat: split-step NLS runs, scattering classification and ground states"};
  app.footer(
      "Exit codes:\n"
      "  0  ok\n"
      "  2  configuration error (parse, validation, stability guard dt*k_max^2 <= pi)\n"
      "  3  numerical divergence (simulate, or ground-state iteration failure)\n"
      "  4  domain-validity failure (mass reached the box edge)\n"
      "  5  I/O failure");
  app.require_subcommand(1);

  std::string config_path;
  ExecOptions opt;
  app.add_option("--config", config_path, "sectioned key = value run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", opt.out_dir, "output directory (created if missing)");
  app.add_option("--workers", opt.workers, "concurrent runs for sweep")->check(CLI::Range(1, 256));
  app.add_flag("--verbose", opt.verbose, "progress on stderr");

  auto* simulate = app.add_subcommand("simulate", "evolve and write the trajectory CSV");
  auto* groundstate = app.add_subcommand("groundstate", "Petviashvili ground state, Pohozaev and C_GN report");
  auto* classify = app.add_subcommand("classify", "evolve, classify the run, write report and summary");
  auto* sweep = app.add_subcommand("sweep", "classify over the [sweep] parameter lattice");
  for (auto* sub : {simulate, groundstate, classify, sweep}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    const RunConfig cfg = load_config(config_path);
    if (*simulate) return run_simulate(cfg, opt, std::cerr);
    if (*groundstate) return run_groundstate(cfg, opt, std::cerr);
    if (*classify) return run_classify(cfg, opt, std::cerr);
    return run_sweep(cfg, opt, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDivergence;
  }
}
