#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "szego/cli.hpp"
#include "szego/errors.hpp"
#include "szego/parallel.hpp"

namespace {

int fail(int code, const std::string& kind, const std::string& message) {
  nlohmann::json j{{"error", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubic Szego equation on the real line: explicit-formula solver, disk oracle and audits"};
  app.require_subcommand(1, 1);
  std::string config_path, out_dir;
  const char* commands[][2] = {
      {"solve", "evaluate the flow on the configured grid"},
      {"integrate", "run the pseudospectral disk integrator"},
      {"compare", "discrepancy between the explicit formula and the disk integrator"},
      {"invariants", "conserved quantities from both backends"},
      {"audit", "contraction and Cayley-transform audit"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "run configuration (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, "ConfigInvalid", e.what());
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    szego::configure_threads_from_env();
    const szego::cli::RunConfig cfg = szego::cli::load_run_config(config_path);
    const szego::cli::RunManifest m = szego::cli::run_command(command, cfg, out_dir);
    for (const auto& c : m.checks())
      if (!c.pass())
        std::fprintf(stderr, "warning: check %s = %.3e exceeds %.1e\n", c.name.c_str(), c.value,
                     c.tolerance);
    return 0;
  } catch (const szego::ConfigInvalid& e) {
    return fail(2, e.kind(), e.what());
  } catch (const szego::Error& e) {
    return fail(1, e.kind(), e.what());
  } catch (const std::exception& e) {
    return fail(1, "RuntimeError", e.what());
  }
}
