#ifndef NSFP_SIMULATION_HPP
#define NSFP_SIMULATION_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsfp/diagnostics.hpp"
#include "nsfp/integrator.hpp"

namespace nsfp {

/// Checks the standard-data conditions: div u0 = 0, f0 > 0, int f0 dtheta = 1.
inline void check_standard_data(const State& s, double tol = 1e-10) {
  const InvariantReport inv = invariant_report(s);
  const double scale = std::max(1.0, std::max(s.u.u1.max_abs(), s.u.u2.max_abs()));
  if (inv.div_u_max > tol * scale) {
    std::ostringstream os;
    os << "initial velocity is not divergence free (max |div u| = " << inv.div_u_max << ")";
    throw std::invalid_argument(os.str());
  }
  if (!(inv.min_f > 0.0)) throw std::invalid_argument("initial distribution must be strictly positive");
  if (inv.rho_dev > tol) {
    std::ostringstream os;
    os << "initial distribution must have unit orientation mass at every point (max |rho - 1| = "
       << inv.rho_dev << ")";
    throw std::invalid_argument(os.str());
  }
}

struct RunResult {
  State final_state;
  std::vector<DiagnosticsRecord> records;
  MonitorState history;
  int steps = 0;
  int max_picard_iterations = 0;
  double max_picard_ratio = 0.0;
  bool aborted = false;
  std::string error;
};

/// Called for every emitted record with the state it was computed from and
/// the monitor history as it stood before the sample.
using SampleCallback =
    std::function<void(const State&, const DiagnosticsRecord&, const MonitorState& before)>;

/// Advances `init` to cfg.t_end, sampling diagnostics at step 0, every
/// cfg.diag_every steps and at the final time. A step failure stops the run
/// with `aborted` set; everything sampled so far is kept.
inline RunResult run_simulation(const Model& model, State init, const StepperConfig& cfg,
                                const MonitorConfig& mcfg,
                                const std::optional<PicardConfig>& picard = std::nullopt,
                                const SampleCallback& on_sample = {}) {
  cfg.validate();
  check_standard_data(init);
  DiagnosticsEngine engine(model, mcfg);
  RunResult res;

  auto sample = [&](const State& s) {
    const MonitorState before = engine.history();
    DiagnosticsRecord r = engine.sample(s);
    res.records.push_back(r);
    if (on_sample) on_sample(s, r, before);
  };

  State s = std::move(init);
  sample(s);
  const double t0 = s.t;
  const double eps = 1e-12 * cfg.dt;
  int step = 0;
  bool sampled_last = true;
  try {
    while (s.t < cfg.t_end - eps) {
      double dt = cfg.dt;
      const double limit = cfl_dt(model, s, StepperConfig{cfg.dt, cfg.scheme, cfg.cfl_safety});
      if (cfg.adaptive) {
        dt = limit;
      } else if (limit < cfg.dt) {
        std::ostringstream os;
        os << "fixed dt = " << cfg.dt << " violates the CFL limit " << limit << " at t = " << s.t;
        throw StepError(os.str());
      }
      // Fixed steps land on t0 + n dt exactly; the last one may be shorter.
      const double target = cfg.adaptive ? s.t + dt : t0 + (step + 1) * cfg.dt;
      dt = std::min(target, cfg.t_end) - s.t;
      if (picard) {
        PicardResult pr = picard_step(model, s, dt, *picard);
        res.max_picard_iterations = std::max(res.max_picard_iterations, pr.iterations);
        for (double r : pr.ratios) res.max_picard_ratio = std::max(res.max_picard_ratio, r);
        s = std::move(pr.state);
      } else {
        s = imex_step(model, s, dt, cfg.scheme);
      }
      if (!cfg.adaptive) s.t = std::min(t0 + (step + 1) * cfg.dt, cfg.t_end);
      ++step;
      sampled_last = false;
      if (step % cfg.diag_every == 0) {
        sample(s);
        sampled_last = true;
      }
    }
    if (!sampled_last) sample(s);
  } catch (const StepError& e) {
    res.aborted = true;
    res.error = e.what();
  }
  res.steps = step;
  res.final_state = std::move(s);
  res.history = engine.history();
  return res;
}

}  // namespace nsfp

#endif  // NSFP_SIMULATION_HPP
