#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace lkc::cli;

  CLI::App app{"lkc: ground states of the discrete Kirchhoff-Choquard equation on Z^3 boxes"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string output;
  app.add_option("--config", config_path, "INI config file (defaults apply when omitted)")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "master seed, overrides [run] seed");
  app.add_option("--threads", threads, "worker threads, overrides [run] threads")->check(CLI::PositiveNumber);
  app.add_option("--output", output, "output root, overrides [output] directory");

  app.add_subcommand("green", "build or load the kernel table, write its octant as CSV");
  app.add_subcommand("solve", "compute a ground state");
  app.add_subcommand("verify", "solve, then run the property-check suite");
  app.add_subcommand("sweep", "solve over the [sweep] parameter values");
  app.fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  RunConfig config;
  try {
    config = config_path.empty() ? default_config() : load_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "lkc: " << e.what() << '\n';
    return exit_usage;
  }
  if (seed) config.seed = *seed;
  if (threads) config.threads = *threads;
  if (!output.empty()) config.output.directory = output;
  config.sync();

  return run_command(app.get_subcommands().front()->get_name(), config, std::cout, std::cerr);
}
