// Experiment runner for the riot-activity / social-tension laboratory.
//
// Subcommands:
//   run <config.json>       execute the configured experiment
//   validate <config.json>  parse + validate only, no execution
//   version                 print the tool version
//
// Exit codes: 0 ok, 2 config/usage error, 3 numerical failure, 4 I/O error.
// RIOTWAVE_THREADS caps the worker pool (default: hardware parallelism).

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "riotwave/dispatch.hpp"
#include "riotwave/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"riotwave: rioting-activity / social-tension PDE laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  bool verbose = false;

  CLI::App* cmd_run = app.add_subcommand("run", "execute an experiment config");
  cmd_run->add_option("config", config_path, "path to the experiment config (JSON)")
      ->required();
  cmd_run->add_option("--out-dir", out_dir, "output directory (default: out)");
  cmd_run->add_flag("--verbose", verbose, "print progress details");

  CLI::App* cmd_validate = app.add_subcommand("validate", "validate a config, no run");
  std::string validate_path;
  cmd_validate->add_option("config", validate_path, "path to the experiment config")
      ->required();

  CLI::App* cmd_version = app.add_subcommand("version", "print version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;  // usage problems are config errors
  }

  try {
    if (cmd_version->parsed()) {
      std::cout << "riotwave " << RIOTWAVE_VERSION << "\n";
      return 0;
    }
    if (cmd_validate->parsed()) {
      riotwave::parse_config(validate_path);
      std::cout << "ok\n";
      return 0;
    }
    const riotwave::ExperimentConfig cfg = riotwave::parse_config(config_path);
    if (verbose) {
      std::cerr << "experiment: " << riotwave::to_string(cfg.experiment)
                << "\nconfig hash: " << riotwave::config_hash(cfg) << "\n";
    }
    const riotwave::RunManifest manifest = riotwave::dispatch(cfg, out_dir);
    if (verbose) {
      for (const auto& e : manifest.outputs) {
        std::cerr << "wrote " << e.path << " (" << e.bytes << " bytes)\n";
      }
      for (const auto& w : manifest.warnings) std::cerr << "warning: " << w << "\n";
    }
    std::cout << out_dir << "/manifest.json\n";
    return 0;
  } catch (const riotwave::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const riotwave::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const riotwave::io_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
