#ifndef NSFP_DIAGNOSTICS_HPP
#define NSFP_DIAGNOSTICS_HPP

// Monitored quantities of the a priori estimates: N(x, t), the time
// accumulators Y_pq and Z_pq, vorticity norms, the energy-balance residual,
// the logarithmic gradient ratio and the conservation invariants.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsfp/model.hpp"

namespace nsfp {

/// One time sample of every monitored quantity. Field order is the CSV
/// column order.
struct DiagnosticsRecord {
  double t = 0.0;
  double kinetic_energy = 0.0;
  double free_energy_total = 0.0;
  double dissipation_total = 0.0;
  double balance_residual = 0.0;
  double grad_u_inf = 0.0;
  double omega_lq = 0.0;
  double N_lq = 0.0;
  double Y_pq = 0.0;
  double Z_pq = 0.0;
  double tau_inf = 0.0;
  double sigma_inf = 0.0;
  double log_bound_ratio = 0.0;
  double total_mass = 0.0;
  double rho_dev = 0.0;
  double min_f = 0.0;
  double div_u_max = 0.0;
  bool positivity_flag = false;
  double grad_u_l2sq = 0.0;  // ||grad u||_{L2}^2, feeds the balance residual

  double energy_total() const { return kinetic_energy + free_energy_total; }

  static constexpr std::array<const char*, 19> field_names{
      "t",         "kinetic_energy", "free_energy_total", "dissipation_total", "balance_residual",
      "grad_u_inf", "omega_lq",      "N_lq",              "Y_pq",              "Z_pq",
      "tau_inf",   "sigma_inf",      "log_bound_ratio",   "total_mass",        "rho_dev",
      "min_f",     "div_u_max",      "positivity_flag",   "grad_u_l2sq"};

  /// Values in column order (the flag as 0 / 1).
  std::array<double, 19> values() const {
    return {t,         kinetic_energy, free_energy_total, dissipation_total, balance_residual,
            grad_u_inf, omega_lq,      N_lq,              Y_pq,              Z_pq,
            tau_inf,   sigma_inf,      log_bound_ratio,   total_mass,        rho_dev,
            min_f,     div_u_max,      positivity_flag ? 1.0 : 0.0, grad_u_l2sq};
  }

  static DiagnosticsRecord from_values(std::span<const double> v) {
    if (v.size() != field_names.size()) throw std::invalid_argument("record has wrong field count");
    DiagnosticsRecord r;
    double* slots[] = {&r.t,          &r.kinetic_energy, &r.free_energy_total, &r.dissipation_total,
                       &r.balance_residual, &r.grad_u_inf, &r.omega_lq, &r.N_lq, &r.Y_pq, &r.Z_pq,
                       &r.tau_inf,    &r.sigma_inf, &r.log_bound_ratio, &r.total_mass, &r.rho_dev,
                       &r.min_f,      &r.div_u_max};
    for (std::size_t i = 0; i < 17; ++i) *slots[i] = v[i];
    r.positivity_flag = v[17] != 0.0;
    r.grad_u_l2sq = v[18];
    return r;
  }

  bool all_finite() const {
    for (double x : values())
      if (!std::isfinite(x)) return false;
    return true;
  }
};

struct MonitorConfig {
  double p = 5.0;
  double q = 4.0;
  double alpha = 2.0;
  int window = 3;

  void validate() const {
    if (!(q >= 4.0)) throw std::invalid_argument("monitor q must satisfy q >= 4");
    if (!(p > 2.0 * q / (q - 2.0))) throw std::invalid_argument("monitor p must satisfy p > 2q/(q-2)");
    if (!(alpha > 1.5)) throw std::invalid_argument("monitor alpha must satisfy alpha > 3/2");
    if (window < 2) throw std::invalid_argument("monitor window must be >= 2");
  }

  bool operator==(const MonitorConfig&) const = default;
};

// ---------------------------------------------------------------------------

/// N(x)^2 = int |R grad_x f|^2 dtheta with R = (1 - d_thth)^{-alpha/2}.
inline ScalarField2D capital_N(const DistributionField& f, double alpha) {
  ScalarField2D n(f.grid());
  for (int axis = 1; axis <= 2; ++axis) {
    const DistributionField g = theta_smooth(x_derivative(f, axis), alpha);
    for (std::size_t p = 0; p < f.points(); ++p) {
      double acc = 0.0;
      for (double v : g.slice(p)) acc += v * v;
      n[p] += acc * f.circle().weight();
    }
  }
  for (std::size_t p = 0; p < n.size(); ++p) n[p] = std::sqrt(n[p]);
  return n;
}

/// Running (int_0^t g(s)^p ds)^{1/p} by the trapezoidal rule over the samples.
inline std::vector<double> accumulate_time_lp(std::span<const double> times,
                                              std::span<const double> values, double p) {
  if (times.size() != values.size()) throw std::invalid_argument("accumulate: size mismatch");
  std::vector<double> out(times.size(), 0.0);
  double integral = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    integral += 0.5 * (times[i] - times[i - 1]) * (std::pow(values[i - 1], p) + std::pow(values[i], p));
    out[i] = std::pow(integral, 1.0 / p);
  }
  return out;
}

/// Y_pq from samples of ||grad_x tau||_{L^q}.
inline std::vector<double> accumulate_Y(std::span<const double> times,
                                        std::span<const double> grad_tau_lq, double p) {
  return accumulate_time_lp(times, grad_tau_lq, p);
}

/// Z_pq from samples of ||N||_{L^q}.
inline std::vector<double> accumulate_Z(std::span<const double> times, std::span<const double> n_lq,
                                        double p) {
  return accumulate_time_lp(times, n_lq, p);
}

/// Derivative at the last node of the polynomial interpolating (t_i, y_i).
inline double backward_derivative(std::span<const double> t, std::span<const double> y) {
  const std::size_t n = t.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("backward_derivative: need >= 2 samples");
  const double tn = t[n - 1];
  double d = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    // l_j'(t_n)
    double w = 0.0;
    if (j == n - 1) {
      for (std::size_t m = 0; m + 1 < n; ++m) w += 1.0 / (tn - t[m]);
    } else {
      w = 1.0 / (t[j] - tn);
      for (std::size_t m = 0; m + 1 < n; ++m)
        if (m != j) w *= (tn - t[m]) / (t[j] - t[m]);
    }
    d += w * y[j];
  }
  return d;
}

/// d/dt (kinetic + free energy) + nu ||grad u||^2 + kappa int D dx at the
/// last record, differentiating over the last `window` records.
inline double balance_residual(std::span<const DiagnosticsRecord> records, double nu, double kappa,
                               int window = 3) {
  if (records.size() < 2) throw std::invalid_argument("balance_residual: need >= 2 records");
  const std::size_t n = std::min<std::size_t>(records.size(), std::size_t(std::max(window, 2)));
  std::vector<double> t, e;
  for (std::size_t i = records.size() - n; i < records.size(); ++i) {
    t.push_back(records[i].t);
    e.push_back(records[i].energy_total());
  }
  const auto& last = records.back();
  return backward_derivative(t, e) + nu * last.grad_u_l2sq + kappa * last.dissipation_total;
}

/// ||grad u||_inf / log(2 + Z_pq).
inline double log_bound_ratio(const DiagnosticsRecord& r) { return r.grad_u_inf / std::log(2.0 + r.Z_pq); }

inline double vorticity_lq(const VelocityField& u, double q) { return lq_norm(vorticity(u), q); }

struct InvariantReport {
  double total_mass = 0.0;
  double rho_dev = 0.0;
  double min_f = 0.0;
  double div_u_max = 0.0;
  bool positivity_flag = false;
};

inline InvariantReport invariant_report(const State& s) {
  InvariantReport r;
  r.total_mass = s.f.total_mass();
  const ScalarField2D rho = s.f.rho();
  for (std::size_t p = 0; p < rho.size(); ++p) r.rho_dev = std::max(r.rho_dev, std::abs(rho[p] - 1.0));
  r.min_f = s.f.min();
  r.div_u_max = divergence(s.u).max_abs();
  r.positivity_flag = r.min_f <= 0.0;
  return r;
}

/// Pointwise check of |grad_x sigma(x)| <= C(x) N(x) for the unmollified
/// stress, with C(x) from Cauchy-Schwarz in the R-weighted pairing:
///   C(x)^2 = sum_ij (||R^{-1}(c_ij U_theta - d_theta c_ij)||
///                    + sup|c_ij| ||R^{-1} k_theta|| int |f| dtheta)^2.
struct StressGradientCheck {
  double max_lhs = 0.0;
  double max_excess = 0.0;  // max_x (|grad sigma| - C N); <= 0 when the bound holds
  double max_constant = 0.0;
};

inline StressGradientCheck stress_gradient_check(const Model& m, const DistributionField& f) {
  const CircleGrid& c = f.circle();
  const double alpha = m.params().alpha;
  const StressField sigma = m.stress(f);
  std::vector<ScalarField2D> grads;
  for (const auto& e : sigma.entries) {
    grads.push_back(derivative(e, 1));
    grads.push_back(derivative(e, 2));
  }
  const ScalarField2D lhs = pointwise_norm(grads);
  const ScalarField2D n = capital_N(f, alpha);
  auto inv_r = [&](std::span<const double> v) {
    return circle_multiplier(c, v, [alpha](int k, bool) { return cplx(1.0 / smoothing_symbol(k, alpha)); });
  };
  auto l2 = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s * c.weight());
  };
  std::vector<double> kprime(c.nm);
  for (int b = 0; b < c.nm; ++b) kprime[b] = m.params().kernel.dtheta(0.0, c.theta(b));
  const double kappa_norm = l2(inv_r(kprime));
  const RodCoefficients& rc = m.coeffs();

  StressGradientCheck out;
  for (std::size_t p = 0; p < f.points(); ++p) {
    const auto slice = f.slice(p);
    const Potential pot = potential_U(c, slice, m.params().kernel);
    double rho_abs = 0.0;
    for (double v : slice) rho_abs += std::abs(v);
    rho_abs *= c.weight();
    double c2 = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        std::vector<double> g(c.nm);
        double sup_c = 0.0;
        for (int b = 0; b < c.nm; ++b) {
          g[b] = rc.at(i, j)[b] * pot.dtheta[b] - rc.dtheta_at(i, j)[b];
          sup_c = std::max(sup_c, std::abs(rc.at(i, j)[b]));
        }
        const double cij = l2(inv_r(g)) + sup_c * kappa_norm * rho_abs;
        c2 += cij * cij;
      }
    const double cx = std::sqrt(c2);
    out.max_lhs = std::max(out.max_lhs, lhs[p]);
    out.max_constant = std::max(out.max_constant, cx);
    const double excess = lhs[p] - cx * n[p];
    if (p == 0 || excess > out.max_excess) out.max_excess = excess;
  }
  return out;
}

// ---------------------------------------------------------------------------

/// History carried between samples: time integrals for Y and Z and the
/// recent energies for the balance residual.
struct MonitorState {
  int samples = 0;
  double last_t = 0.0;
  double last_grad_tau_lq = 0.0;
  double last_N_lq = 0.0;
  double y_integral = 0.0;  // int ||grad tau||_q^p dt
  double z_integral = 0.0;  // int ||N||_q^p dt
  std::vector<double> energy_t;
  std::vector<double> energy_e;
  double max_log_bound_ratio = 0.0;  // empirical K of the logarithmic bound
  double max_yz_ratio = 0.0;         // empirical C in Y <= C (Z + Z^2)

  bool operator==(const MonitorState&) const = default;
};

/// Computes records from states while advancing the monitor history.
class DiagnosticsEngine {
 public:
  DiagnosticsEngine(const Model& model, MonitorConfig cfg, MonitorState history = {})
      : model_(&model), cfg_(cfg), history_(std::move(history)) {
    cfg_.validate();
  }

  const MonitorState& history() const { return history_; }
  const MonitorConfig& config() const { return cfg_; }

  DiagnosticsRecord sample(const State& s) {
    const Model& m = *model_;
    const ModelParams& prm = m.params();
    DiagnosticsRecord r;
    r.t = s.t;
    r.kinetic_energy = kinetic_energy(s.u);
    const FieldIntegral fe = free_energy(s.f, prm.kernel);
    const FieldIntegral dd = dissipation(s.f, prm.kernel);
    r.free_energy_total = fe.total;
    r.dissipation_total = dd.total;

    const StressField gu = velocity_gradient(s.u);
    r.grad_u_inf = pointwise_norm(gu.entries).max_abs();
    for (const auto& e : gu.entries) r.grad_u_l2sq += inner(e, e);
    r.omega_lq = vorticity_lq(s.u, cfg_.q);
    r.N_lq = lq_norm(capital_N(s.f, cfg_.alpha), cfg_.q);

    const StressField sigma = m.stress(s.f);
    r.sigma_inf = sigma.max_abs();
    const StressField tau = total_stress(m.mollifier()(sigma), s.u);
    r.tau_inf = tau.max_abs();
    std::vector<ScalarField2D> dtau;
    for (const auto& e : tau.entries) {
      dtau.push_back(derivative(e, 1));
      dtau.push_back(derivative(e, 2));
    }
    const double grad_tau_lq = lq_norm(pointwise_norm(dtau), cfg_.q);

    MonitorState& h = history_;
    if (h.samples > 0) {
      const double dt = s.t - h.last_t;
      h.y_integral += 0.5 * dt * (std::pow(h.last_grad_tau_lq, cfg_.p) + std::pow(grad_tau_lq, cfg_.p));
      h.z_integral += 0.5 * dt * (std::pow(h.last_N_lq, cfg_.p) + std::pow(r.N_lq, cfg_.p));
    }
    r.Y_pq = std::pow(h.y_integral, 1.0 / cfg_.p);
    r.Z_pq = std::pow(h.z_integral, 1.0 / cfg_.p);
    r.log_bound_ratio = log_bound_ratio(r);

    const InvariantReport inv = invariant_report(s);
    r.total_mass = inv.total_mass;
    r.rho_dev = inv.rho_dev;
    r.min_f = inv.min_f;
    r.div_u_max = inv.div_u_max;
    r.positivity_flag = inv.positivity_flag || fe.positivity_violated || dd.positivity_violated;

    double rate;
    if (h.energy_t.empty()) {
      rate = m.energy_rate(s);
    } else {
      std::vector<double> t = h.energy_t, e = h.energy_e;
      t.push_back(r.t);
      e.push_back(r.energy_total());
      rate = backward_derivative(t, e);
    }
    r.balance_residual = rate + prm.nu * r.grad_u_l2sq + prm.kappa * r.dissipation_total;

    h.energy_t.push_back(r.t);
    h.energy_e.push_back(r.energy_total());
    while (int(h.energy_t.size()) > cfg_.window - 1) {
      h.energy_t.erase(h.energy_t.begin());
      h.energy_e.erase(h.energy_e.begin());
    }
    h.samples += 1;
    h.last_t = s.t;
    h.last_grad_tau_lq = grad_tau_lq;
    h.last_N_lq = r.N_lq;
    h.max_log_bound_ratio = std::max(h.max_log_bound_ratio, r.log_bound_ratio);
    const double zz = r.Z_pq + r.Z_pq * r.Z_pq;
    if (zz > 0.0) h.max_yz_ratio = std::max(h.max_yz_ratio, r.Y_pq / zz);
    return r;
  }

 private:
  const Model* model_;
  MonitorConfig cfg_;
  MonitorState history_;
};

}  // namespace nsfp

#endif  // NSFP_DIAGNOSTICS_HPP
