// Command line front end: one JSON config in, JSON or CSV reports out.
// Exit codes: 0 success (all checks passed), 1 a certification failed,
// 2 configuration or usage problem, 3 numerical non-convergence.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "orlicz/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for generalized N-function families"};
  app.require_subcommand(1);
  app.fallthrough(); // global flags may follow the subcommand

  std::string config_path, out_path;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::size_t resolution = 0;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--seed", seed, "override the config seed");
  app.add_option("--tol", tol, "override the config tolerance");
  app.add_option("--resolution", resolution, "override the grid resolution");

  auto* sc_check = app.add_subcommand("check", "run condition certifications");
  auto* sc_conj = app.add_subcommand("conjugate", "tabulate A, its slope, and conjugates");
  auto* sc_mod = app.add_subcommand("modulus", "tabulate the continuity modulus");
  auto* sc_norm = app.add_subcommand("norm", "Luxemburg norms of u and its gradient");
  auto* sc_verify = app.add_subcommand("verify", "empirical oscillation-ratio report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    orlicz::run_config cfg = orlicz::load_config(config_path);
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--tol")) {
      if (!(tol > 0.0)) throw orlicz::domain_error("tol must be positive");
      cfg.tol = tol;
    }
    if (app.count("--resolution")) cfg.resolution = resolution;

    std::ostringstream buffer;
    int code = 0;
    if (sc_check->parsed())
      code = orlicz::cmd_check(cfg, buffer);
    else if (sc_conj->parsed())
      orlicz::cmd_conjugate(cfg, buffer);
    else if (sc_mod->parsed())
      orlicz::cmd_modulus(cfg, buffer);
    else if (sc_norm->parsed())
      orlicz::cmd_norm(cfg, buffer);
    else if (sc_verify->parsed())
      orlicz::cmd_verify(cfg, buffer);

    if (out_path.empty()) {
      std::cout << buffer.str();
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw orlicz::domain_error("cannot write output file: " + out_path);
      f << buffer.str();
    }
    return code;
  } catch (const orlicz::convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
