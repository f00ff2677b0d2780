#ifndef NSFP_INTEGRATOR_HPP
#define NSFP_INTEGRATOR_HPP

// Time stepping for the coupled state. The stiff linear parts nu Lap u and
// kappa d_thth f are integrated exactly through the integrating factors
// e^{-nu |k|^2 dt} and e^{-kappa n^2 dt}; everything else is explicit.

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsfp/model.hpp"

namespace nsfp {

enum class Scheme { imex_euler, if_rk2 };

inline const char* to_string(Scheme s) { return s == Scheme::imex_euler ? "imex_euler" : "if_rk2"; }

inline Scheme scheme_from_string(const std::string& s) {
  if (s == "imex_euler") return Scheme::imex_euler;
  if (s == "if_rk2") return Scheme::if_rk2;
  throw std::invalid_argument("unknown scheme '" + s + "' (expected imex_euler or if_rk2)");
}

/// Order of accuracy in time.
inline int scheme_order(Scheme s) { return s == Scheme::imex_euler ? 1 : 2; }

struct StepperConfig {
  double dt = 1e-3;
  Scheme scheme = Scheme::if_rk2;
  double cfl_safety = 0.5;
  double t_end = 1.0;
  int diag_every = 10;
  bool adaptive = false;

  void validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw std::invalid_argument("cfl_safety must lie in (0, 1]");
    if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be >= 0");
    if (diag_every < 1) throw std::invalid_argument("diag_every must be >= 1");
  }

  bool operator==(const StepperConfig&) const = default;
};

struct PicardConfig {
  double tol = 1e-10;
  int max_iter = 50;

  void validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("picard tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("picard max_iter must be >= 1");
  }

  bool operator==(const PicardConfig&) const = default;
};

/// A step that produced non-finite values or failed to converge.
class StepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PicardNotConverged : public StepError {
 public:
  PicardNotConverged(const std::string& what, std::vector<double> ratios)
      : StepError(what), ratios_(std::move(ratios)) {}
  const std::vector<double>& ratios() const { return ratios_; }

 private:
  std::vector<double> ratios_;
};

struct Increment {
  VelocityField du;
  DistributionField df;
};

namespace detail {

inline State axpy(const State& y, double a, const Increment& inc) {
  State out = y;
  out.u.u1 += a * inc.du.u1;
  out.u.u2 += a * inc.du.u2;
  out.f += a * inc.df;
  return out;
}

inline Increment explicit_rhs(const Model& m, const State& s) {
  return {m.ns_explicit(s), m.fp_explicit(s)};
}

inline void check_finite(const State& s) {
  auto bad = [](std::span<const double> v) {
    for (double x : v)
      if (!std::isfinite(x)) return true;
    return false;
  };
  if (bad(s.u.u1.values()) || bad(s.u.u2.values()) || bad(s.f.data())) {
    std::ostringstream os;
    os << "non-finite value in state at t = " << s.t;
    throw StepError(os.str());
  }
}

}  // namespace detail

/// Exact linear propagation: heat semigroup on u, circle heat semigroup on f.
inline State linear_propagate(const Model& m, const State& s, double dt) {
  State out;
  out.t = s.t;
  out.u = {heat_propagate(s.u.u1, m.params().nu, dt), heat_propagate(s.u.u2, m.params().nu, dt)};
  const double a = m.params().kappa * dt;
  out.f = theta_multiplier(s.f, [a](int n, bool) { return cplx(std::exp(-a * double(n) * n)); });
  return out;
}

/// One integrating-factor step of size dt.
inline State imex_step(const Model& m, const State& s, double dt, Scheme scheme) {
  const Increment n0 = detail::explicit_rhs(m, s);
  State next;
  if (scheme == Scheme::imex_euler) {
    next = linear_propagate(m, detail::axpy(s, dt, n0), dt);
  } else {
    State stage = linear_propagate(m, detail::axpy(s, dt, n0), dt);
    stage.u = leray_project(stage.u);
    stage.t = s.t + dt;
    const Increment n1 = detail::explicit_rhs(m, stage);
    next = detail::axpy(linear_propagate(m, detail::axpy(s, 0.5 * dt, n0), dt), 0.5 * dt, n1);
  }
  next.u = leray_project(next.u);
  next.t = s.t + dt;
  detail::check_finite(next);
  return next;
}

inline State imex_step(const Model& m, const State& s, const StepperConfig& cfg) {
  return imex_step(m, s, cfg.dt, cfg.scheme);
}

/// Largest stable step: cfl_safety * min(h / max|J u|, dtheta / max|J W|), capped at cfg.dt.
inline double cfl_dt(const Model& m, const State& s, const StepperConfig& cfg) {
  const VelocityField ju = m.mollifier()(s.u);
  const StressField jg = m.mollifier()(velocity_gradient(s.u));
  double umax = 0.0;
  for (std::size_t p = 0; p < ju.u1.size(); ++p)
    umax = std::max(umax, std::hypot(ju.u1[p], ju.u2[p]));
  double wmax = 0.0;
  for (std::size_t p = 0; p < ju.u1.size(); ++p) {
    const double g[2][2] = {{jg(0, 0)[p], jg(0, 1)[p]}, {jg(1, 0)[p], jg(1, 1)[p]}};
    for (double w : compute_W(g, m.coeffs())) wmax = std::max(wmax, std::abs(w));
  }
  double limit = std::numeric_limits<double>::infinity();
  if (umax > 0.0) limit = std::min(limit, m.grid().spacing() / umax);
  if (wmax > 0.0) limit = std::min(limit, m.circle().weight() / wmax);
  return std::min(cfg.dt, cfg.cfl_safety * limit);
}

struct PicardResult {
  State state;
  int iterations = 0;
  std::vector<double> differences;  // ||(u, f)^{(n+1)} - (u, f)^{(n)}||_2 per pass
  std::vector<double> ratios;       // successive difference ratios
};

/// One backward-Euler step solved by the linearized fixed-point iteration:
/// the transport velocity, W and U are frozen at the previous iterate, the
/// diffusion is implicit, and the stress driving u uses the new f iterate.
inline PicardResult picard_step(const Model& m, const State& s, double dt, const PicardConfig& pcfg) {
  pcfg.validate();
  const double nu = m.params().nu, kappa = m.params().kappa;
  State it = s;
  PicardResult res;
  for (int n = 1; n <= pcfg.max_iter; ++n) {
    DistributionField rf = s.f + dt * m.fp_explicit(it);
    rf = theta_multiplier(rf, [a = kappa * dt](int k, bool) { return cplx(1.0 / (1.0 + a * double(k) * k)); });

    const VelocityField force = m.ns_explicit(it.u, m.stress_forcing(rf));
    VelocityField ru{s.u.u1 + dt * force.u1, s.u.u2 + dt * force.u2};
    ru = leray_project(ru);
    for (int i = 0; i < 2; ++i)
      ru[i] = apply_multiplier(ru[i], [a = nu * dt](const Mode& md) { return 1.0 / (1.0 + a * md.norm_sq()); });

    const double du = std::sqrt(std::pow(lq_norm(ru.u1 - it.u.u1, 2.0), 2) +
                                std::pow(lq_norm(ru.u2 - it.u.u2, 2.0), 2) +
                                std::pow((rf - it.f).l2_norm(), 2));
    if (!res.differences.empty())
      res.ratios.push_back(res.differences.back() > 0.0 ? du / res.differences.back() : 0.0);
    res.differences.push_back(du);
    it.u = std::move(ru);
    it.f = std::move(rf);
    it.t = s.t + dt;
    detail::check_finite(it);
    res.iterations = n;
    if (du < pcfg.tol) {
      res.state = std::move(it);
      return res;
    }
  }
  std::ostringstream os;
  os << "picard iteration did not converge in " << pcfg.max_iter << " passes at t = " << s.t
     << " (dt = " << dt << " too large?); last ratios:";
  for (std::size_t i = res.ratios.size() > 5 ? res.ratios.size() - 5 : 0; i < res.ratios.size(); ++i)
    os << ' ' << res.ratios[i];
  throw PicardNotConverged(os.str(), res.ratios);
}

}  // namespace nsfp

#endif  // NSFP_INTEGRATOR_HPP
