#ifndef NSFP_COMMANDS_HPP
#define NSFP_COMMANDS_HPP

// The command-line operations as library calls. Errors surface as
// ConfigError / IoError / std::invalid_argument; an aborted run is reported
// in the result, with everything sampled so far already on disk.

#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

#include "nsfp/io.hpp"

namespace nsfp {

enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_numerical = 3, exit_io = 4 };

inline void cmd_init_config(const std::string& path, bool force) {
  if (!force && std::filesystem::exists(path))
    throw IoError("'" + path + "' exists; pass --force to overwrite");
  write_text_file(path, emit_config(RunConfig{}));
}

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides [initial] seed
};

struct RunSummary {
  RunResult result;
  std::vector<std::string> checkpoints;
  double mass_drift = 0.0;  // |M(T) - M(0)| / M(0)
};

inline std::string checkpoint_path(const std::string& prefix, std::size_t index) {
  std::ostringstream os;
  os << prefix << '_' << std::setw(6) << std::setfill('0') << index << ".nsfp";
  return os.str();
}

inline RunSummary cmd_run(RunConfig cfg, const RunOptions& opt = {}) {
  if (opt.seed) cfg.initial.seed = *opt.seed;
  cfg.validate();
  const Model model(cfg.grid, cfg.circle, cfg.params);
  State init = standard_initial_data(cfg.grid, cfg.circle, cfg.initial);
  const double mass0 = init.f.total_mass();
  const MonitorConfig mc = cfg.monitor();

  RunSummary out;
  CsvWriter csv(cfg.output.diagnostics_csv);
  std::size_t index = 0;
  std::optional<Checkpoint> last;
  auto on_sample = [&](const State& s, const DiagnosticsRecord& r, const MonitorState& before) {
    csv.write(r);
    if (!cfg.output.checkpoint_prefix.empty()) {
      Checkpoint c{s, cfg.params, mc, before};
      if (cfg.output.checkpoint_every > 0 && index % std::size_t(cfg.output.checkpoint_every) == 0) {
        const std::string path = checkpoint_path(cfg.output.checkpoint_prefix, index);
        write_checkpoint(path, c);
        out.checkpoints.push_back(path);
      }
      last = std::move(c);
    }
    ++index;
  };
  const std::optional<PicardConfig> picard =
      cfg.solver == SolverMode::picard ? std::optional<PicardConfig>(cfg.picard) : std::nullopt;
  out.result = run_simulation(model, std::move(init), cfg.stepper, mc, picard, on_sample);
  if (last) {
    const std::string path = cfg.output.checkpoint_prefix + "_final.nsfp";
    write_checkpoint(path, *last);
    out.checkpoints.push_back(path);
  }
  if (!cfg.output.diagnostics_json.empty())
    write_text_file(cfg.output.diagnostics_json, records_json(out.result.records));
  out.mass_drift = std::abs(out.result.final_state.f.total_mass() - mass0) / mass0;
  return out;
}

inline lab::LabReport cmd_verify_inequalities(RunConfig cfg, const RunOptions& opt = {}) {
  if (opt.seed) cfg.lab.seed = *opt.seed;
  cfg.validate();
  const lab::LabReport rep = lab::sweep(lab_family(cfg.lab), GridSpec2D{cfg.lab.nx, cfg.grid.dealias_fraction},
                                        cfg.lab.r_values);
  if (!cfg.output.lab_csv.empty()) write_text_file(cfg.output.lab_csv, lab_csv(rep));
  if (!cfg.output.lab_json.empty()) write_text_file(cfg.output.lab_json, lab_json(rep));
  return rep;
}

inline DiagnosticsRecord cmd_diagnose(const std::string& checkpoint) { return diagnose(read_checkpoint(checkpoint)); }

}  // namespace nsfp

#endif  // NSFP_COMMANDS_HPP
