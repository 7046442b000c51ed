#include <iostream>

#include <CLI11.hpp>

#include "experiment.hpp"
#include "rootlab/kernels.hpp"

int main(int argc, char** argv) {
  using namespace rootlab;
  CLI::App app{"rootlab: zeros of derivatives of polynomial families"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  CLI::App* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", config_path, "config file (key = value lines)")->required();
  run->add_option("-o,--out", out_dir, "output directory (overrides the config's out key)");

  app.add_subcommand("backend", "print the kernel backend in use");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::exit_config;
  }

  if (app.got_subcommand("backend")) {
    std::cout << kernels::to_string(kernels::active_backend()) << '\n';
    return 0;
  }

  cli::Config cfg;
  try {
    cfg = cli::load_config(config_path);
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << config_path << ": " << e.what() << '\n';
    return cli::exit_config;
  }
  if (!out_dir.empty()) cfg.out = out_dir;
  return cli::run(cfg, std::cout);
}
