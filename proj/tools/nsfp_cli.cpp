// nsfp: command-line front end.
//
//   nsfp init-config --config run.ini [--force]
//   nsfp run --config run.ini [--threads N] [--seed S]
//   nsfp verify-inequalities --config run.ini [--threads N] [--seed S]
//   nsfp diagnose CHECKPOINT [--json]
//
// Exit codes: 0 ok, 2 config error, 3 numerical abort, 4 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "nsfp/commands.hpp"
#include "nsfp/parallel.hpp"

namespace {

int report(int code, const std::string& msg) {
  std::cerr << "nsfp: " << msg << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mollified Navier-Stokes / Fokker-Planck simulator and inequality lab"};
  app.require_subcommand(1);

  std::string config_path;
  std::string checkpoint;
  bool force = false;
  bool as_json = false;
  int threads = 0;
  std::optional<std::uint64_t> seed;

  auto* init = app.add_subcommand("init-config", "write a commented default configuration");
  init->add_option("--config,path", config_path, "output path")->required();
  init->add_flag("--force", force, "overwrite an existing file");

  auto* run = app.add_subcommand("run", "run a simulation and write diagnostics");
  auto* verify = app.add_subcommand("verify-inequalities", "sweep the interpolation inequalities");
  for (auto* sub : {run, verify}) {
    sub->add_option("--config", config_path, "configuration file")->required();
    sub->add_option("--threads", threads, "worker threads (default: hardware)");
    sub->add_option("--seed", seed, "override the configured seed");
  }

  auto* diag = app.add_subcommand("diagnose", "recompute the diagnostics record of a checkpoint");
  diag->add_option("checkpoint", checkpoint, "checkpoint file")->required();
  diag->add_flag("--json", as_json, "print JSON instead of CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : nsfp::exit_config;
  }

  nsfp::set_threads(threads);
  try {
    if (*init) {
      nsfp::cmd_init_config(config_path, force);
      std::cout << "wrote " << config_path << '\n';
      return nsfp::exit_ok;
    }
    if (*diag) {
      const auto r = nsfp::cmd_diagnose(checkpoint);
      if (as_json) std::cout << nsfp::record_json(r).dump(1) << '\n';
      else std::cout << nsfp::csv_header() << '\n' << nsfp::csv_row(r) << '\n';
      return nsfp::exit_ok;
    }
    const nsfp::RunConfig cfg = nsfp::load_config(config_path);
    if (*verify) {
      const auto rep = nsfp::cmd_verify_inequalities(cfg, {seed});
      for (std::size_t i = 0; i < rep.summary.r_values.size(); ++i)
        std::printf("r = %g: sup Ladyzhenskaya ratio %.6g, sup torus ratio %.6g\n", rep.summary.r_values[i],
                    rep.summary.sup_ladyzhenskaya[i], rep.summary.sup_interpolation[i]);
      return nsfp::exit_ok;
    }
    const auto sum = nsfp::cmd_run(cfg, {seed});
    const auto& res = sum.result;
    if (res.aborted) return report(nsfp::exit_numerical, "run aborted: " + res.error);
    std::printf("t = %g after %d steps, %zu records, mass drift %.3g\n", res.final_state.t, res.steps,
                res.records.size(), sum.mass_drift);
    if (cfg.solver == nsfp::SolverMode::picard)
      std::printf("picard: max %d iterations, max contraction ratio %.3g\n", res.max_picard_iterations,
                  res.max_picard_ratio);
    return nsfp::exit_ok;
  } catch (const nsfp::ConfigError& e) {
    return report(nsfp::exit_config, std::string("config error: ") + e.what());
  } catch (const nsfp::IoError& e) {
    return report(nsfp::exit_io, std::string("I/O error: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return report(nsfp::exit_config, std::string("invalid input: ") + e.what());
  } catch (const nsfp::StepError& e) {
    return report(nsfp::exit_numerical, std::string("numerical error: ") + e.what());
  } catch (const std::exception& e) {
    return report(nsfp::exit_io, e.what());
  }
}
