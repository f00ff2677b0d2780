#ifndef NSFP_MODEL_HPP
#define NSFP_MODEL_HPP

// The mollified Navier-Stokes / nonlinear Fokker-Planck system on T^2 x S^1:
//
//   u_t + u.grad u - nu Lap u + grad p = div J(sigma),   div u = 0,
//   f_t + J(u).grad_x f + d_theta(J(W) f) = kappa (f_thth + d_theta(f U_theta)),
//
// with W = (du_i/dx_j) c_ji, U = k * f and
// sigma_ij = int (c_ij U_theta - d_theta c_ij) f dtheta.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsfp/circle.hpp"
#include "nsfp/distribution.hpp"
#include "nsfp/mollifier.hpp"
#include "nsfp/parallel.hpp"
#include "nsfp/spectral2d.hpp"

namespace nsfp {

struct ModelParams {
  double nu = 0.1;
  double kappa = 0.1;
  double delta = 0.0;
  InteractionKernel kernel = InteractionKernel::maier_saupe(0.5);
  CoefficientModel coeffs = CoefficientModel::rod();
  double alpha = 2.0;
  double q = 4.0;
  double p = 5.0;

  /// Parameter and exponent constraints (q >= 4, p > 2q/(q-2), alpha > 3/2).
  void validate() const {
    if (!(nu > 0.0)) throw std::invalid_argument("nu must be > 0");
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be > 0");
    if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
    if (delta > two_pi / 2) throw std::invalid_argument("delta must not exceed pi");
    if (!(q >= 4.0)) throw std::invalid_argument("q must satisfy q >= 4, got " + std::to_string(q));
    const double pmin = 2.0 * q / (q - 2.0);
    if (!(p > pmin))
      throw std::invalid_argument("p must satisfy p > 2q/(q-2) = " + std::to_string(pmin) +
                                  ", got " + std::to_string(p));
    if (!(alpha > 1.5)) throw std::invalid_argument("alpha must satisfy alpha > 3/2");
  }

  bool operator==(const ModelParams&) const = default;
};

struct State {
  double t = 0.0;
  VelocityField u;
  DistributionField f;

  const GridSpec2D& grid() const { return f.grid(); }
  const CircleGrid& circle() const { return f.circle(); }
};

/// W(theta) = sum_ij (du_i/dx_j) c_ji(theta) at one spatial point.
inline std::vector<double> compute_W(const double grad_u[2][2], const RodCoefficients& coeffs) {
  std::vector<double> w(coeffs.grid.nm, 0.0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double g = grad_u[i][j];
      if (g == 0.0) continue;
      const auto& c = coeffs.at(j, i);
      for (int b = 0; b < coeffs.grid.nm; ++b) w[b] += g * c[b];
    }
  return w;
}

/// sigma_ij at one spatial point from its circle slice.
inline std::array<double, 4> stress_at(const CircleGrid& circle, std::span<const double> slice,
                                       std::span<const double> dtheta_U,
                                       const RodCoefficients& coeffs) {
  std::array<double, 4> s{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const auto& c = coeffs.at(i, j);
      const auto& dc = coeffs.dtheta_at(i, j);
      double acc = 0.0;
      for (int b = 0; b < circle.nm; ++b) acc += (c[b] * dtheta_U[b] - dc[b]) * slice[b];
      s[2 * i + j] = acc * circle.weight();
    }
  return s;
}

inline StressField compute_stress(const DistributionField& f, const InteractionKernel& kernel,
                                  const RodCoefficients& coeffs) {
  StressField sigma(f.grid());
  parallel_for(f.points(), [&](std::size_t p) {
    const auto slice = f.slice(p);
    const Potential pot = potential_U(f.circle(), slice, kernel);
    const auto s = stress_at(f.circle(), slice, pot.dtheta, coeffs);
    for (int e = 0; e < 4; ++e) sigma.entries[e][p] = s[e];
  });
  return sigma;
}

inline double kinetic_energy(const VelocityField& u) {
  return 0.5 * (inner(u.u1, u.u1) + inner(u.u2, u.u2));
}

inline constexpr double positivity_floor = 1e-14;

/// Per-x integrals with the positivity flag raised if any f <= 0.
struct FieldIntegral {
  ScalarField2D density;
  double total = 0.0;
  bool positivity_violated = false;
};

/// E[f](x) = int (f log f + f U[f] / 2) dtheta, with f clamped at 1e-14 in the log.
inline FieldIntegral free_energy(const DistributionField& f, const InteractionKernel& kernel) {
  FieldIntegral out{ScalarField2D(f.grid())};
  const CircleGrid& c = f.circle();
  parallel_for(f.points(), [&](std::size_t p) {
    const auto slice = f.slice(p);
    const Potential pot = potential_U(c, slice, kernel);
    double acc = 0.0;
    for (int b = 0; b < c.nm; ++b) {
      const double v = std::max(slice[b], positivity_floor);
      acc += v * std::log(v) + 0.5 * slice[b] * pot.value[b];
    }
    out.density[p] = acc * c.weight();
  });
  out.total = out.density.mean() * two_pi * two_pi;
  out.positivity_violated = f.min() <= 0.0;
  return out;
}

/// D[f](x) = int |d_theta(U[f] + log f)|^2 f dtheta, f floored at 1e-14.
inline FieldIntegral dissipation(const DistributionField& f, const InteractionKernel& kernel) {
  FieldIntegral out{ScalarField2D(f.grid())};
  const CircleGrid& c = f.circle();
  const DistributionField df = theta_derivative(f);
  parallel_for(f.points(), [&](std::size_t p) {
    const auto slice = f.slice(p);
    const auto dslice = df.slice(p);
    const Potential pot = potential_U(c, slice, kernel);
    double acc = 0.0;
    for (int b = 0; b < c.nm; ++b) {
      const double v = std::max(slice[b], positivity_floor);
      const double g = pot.dtheta[b] + dslice[b] / v;
      acc += g * g * v;
    }
    out.density[p] = acc * c.weight();
  });
  out.total = out.density.mean() * two_pi * two_pi;
  out.positivity_violated = f.min() <= 0.0;
  return out;
}

/// tau_ij = J(sigma)_ij - u_i u_j.
inline StressField total_stress(const StressField& mollified_sigma, const VelocityField& u) {
  StressField tau = mollified_sigma;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) tau(i, j) -= u[i] * u[j];
  return tau;
}

/// p = -(-Lap)^{-1} d_i d_j tau_ij, zero mean.
inline ScalarField2D pressure_poisson(const StressField& tau) {
  std::array<Spectrum2D, 4> s;
  for (int e = 0; e < 4; ++e) s[e] = tau.entries[e].spectrum();
  Spectrum2D out(tau.grid());
  for (int a = 0; a < out.rows(); ++a)
    for (int b = 0; b < out.cols(); ++b) {
      const Mode m = out.mode(a, b);
      if (m.norm_sq() == 0) continue;
      const double k[2] = {double(m.odd1), double(m.odd2)};
      cplx acc = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) acc += k[i] * k[j] * s[2 * i + j](a, b);
      out(a, b) = acc / double(m.norm_sq());
    }
  return out.to_field();
}

/// The same pressure through Riesz transforms, p = -R_i R_j tau_ij.
inline ScalarField2D pressure_riesz(const StressField& tau) {
  ScalarField2D p(tau.grid());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) p -= riesz(riesz(tau(i, j), j + 1), i + 1);
  return p;
}

/// Precomputed model pieces for one grid: sampled coefficients, kernel
/// tables and the mollifier. Evaluates the right-hand sides.
class Model {
 public:
  Model(GridSpec2D grid, CircleGrid circle, ModelParams params)
      : grid_(grid),
        circle_(circle),
        params_(std::move(params)),
        coeffs_(sample_coefficients(circle, params_.coeffs)),
        mollifier_(grid, params_.delta) {
    grid_.validate();
    circle_.validate();
    params_.validate();
  }

  const GridSpec2D& grid() const { return grid_; }
  const CircleGrid& circle() const { return circle_; }
  const ModelParams& params() const { return params_; }
  const RodCoefficients& coeffs() const { return coeffs_; }
  const Mollifier& mollifier() const { return mollifier_; }

  StressField stress(const DistributionField& f) const {
    return compute_stress(f, params_.kernel, coeffs_);
  }

  /// Explicit (non-stiff) part of the Fokker-Planck right-hand side:
  /// -J(u).grad_x f - d_theta(J(W) f) + kappa d_theta(f U_theta), dealiased in x.
  DistributionField fp_explicit(const State& s) const {
    const DistributionField& f = s.f;
    const VelocityField ju = mollifier_(s.u);
    const StressField jg = mollifier_(velocity_gradient(s.u));
    const DistributionField d1 = x_derivative(f, 1);
    const DistributionField d2 = x_derivative(f, 2);
    DistributionField adv(grid_, circle_);
    DistributionField flux(grid_, circle_);
    const double kappa = params_.kappa;
    parallel_for(f.points(), [&](std::size_t p) {
      const auto slice = f.slice(p);
      const double g[2][2] = {{jg(0, 0)[p], jg(0, 1)[p]}, {jg(1, 0)[p], jg(1, 1)[p]}};
      const std::vector<double> w = compute_W(g, coeffs_);
      const Potential pot = potential_U(circle_, slice, params_.kernel);
      const auto s1 = d1.slice(p);
      const auto s2 = d2.slice(p);
      auto a = adv.slice(p);
      auto fl = flux.slice(p);
      const double v1 = ju.u1[p], v2 = ju.u2[p];
      for (int b = 0; b < circle_.nm; ++b) {
        a[b] = -(v1 * s1[b] + v2 * s2[b]);
        fl[b] = (-w[b] + kappa * pot.dtheta[b]) * slice[b];
      }
    });
    adv += theta_derivative(flux);
    return dealias(adv);
  }

  DistributionField fp_rhs(const State& s) const {
    DistributionField r = fp_explicit(s);
    r += params_.kappa * theta_laplacian(s.f);
    return r;
  }

  /// Mollified, dealiased stress forcing div J(sigma).
  VelocityField stress_forcing(const DistributionField& f) const {
    StressField sigma = stress(f);
    for (auto& e : sigma.entries) e = dealias(e);
    return row_divergence(mollifier_(sigma));
  }

  /// Explicit part of the momentum right-hand side: P(-u.grad u + div J(sigma)).
  VelocityField ns_explicit(const State& s) const {
    return ns_explicit(s.u, stress_forcing(s.f));
  }

  VelocityField ns_explicit(const VelocityField& u, const VelocityField& forcing) const {
    const StressField g = velocity_gradient(u);
    VelocityField force;
    for (int i = 0; i < 2; ++i) {
      ScalarField2D adv = u.u1 * g(i, 0) + u.u2 * g(i, 1);
      force[i] = forcing[i] - dealias(adv);
    }
    return leray_project(force);
  }

  VelocityField ns_rhs(const State& s) const {
    VelocityField r = ns_explicit(s);
    r.u1 += params_.nu * laplacian(s.u.u1);
    r.u2 += params_.nu * laplacian(s.u.u2);
    return r;
  }

  /// Pressure from the state, -(-Lap)^{-1} d_i d_j tau_ij with tau = J(sigma) - u u.
  ScalarField2D pressure(const State& s) const {
    return pressure_poisson(total_stress(mollifier_(stress(s.f)), s.u));
  }

  /// Semi-discrete d/dt [kinetic energy + int E dx] along the right-hand sides.
  double energy_rate(const State& s) const {
    const VelocityField du = ns_rhs(s);
    double rate = inner(s.u.u1, du.u1) + inner(s.u.u2, du.u2);
    const DistributionField df = fp_rhs(s);
    double acc = 0.0;
    for (std::size_t p = 0; p < s.f.points(); ++p) {
      const auto slice = s.f.slice(p);
      const Potential pot = potential_U(circle_, slice, params_.kernel);
      const auto ds = df.slice(p);
      for (int b = 0; b < circle_.nm; ++b) {
        const double v = std::max(slice[b], positivity_floor);
        acc += (std::log(v) + 1.0 + pot.value[b]) * ds[b];
      }
    }
    rate += acc * circle_.weight() * grid_.cell_area();
    return rate;
  }

 private:
  GridSpec2D grid_;
  CircleGrid circle_;
  ModelParams params_;
  RodCoefficients coeffs_;
  Mollifier mollifier_;
};

}  // namespace nsfp

#endif  // NSFP_MODEL_HPP
