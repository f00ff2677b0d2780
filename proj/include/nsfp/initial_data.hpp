#ifndef NSFP_INITIAL_DATA_HPP
#define NSFP_INITIAL_DATA_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "nsfp/model.hpp"

namespace nsfp {

/// Generator parameters for standard initial data:
///   u0 = A * TaylorGreen + random band-limited divergence-free perturbation,
///   f0 = (1 + sum over |k_i| <= 2, n in {1, 2} of random trig products) / (2 pi).
/// The f perturbation never touches the n = 0 circle mode, so int f0 dtheta = 1
/// exactly, and its coefficients sum to at most f_perturbation < 1 in
/// absolute value, so min f0 >= (1 - f_perturbation) / (2 pi) > 0.
struct InitialDataSpec {
  double tg_amplitude = 1.0;
  double u_perturbation = 0.1;
  double f_perturbation = 0.5;
  std::uint64_t seed = 42;

  bool operator==(const InitialDataSpec&) const = default;
};

namespace detail {

struct PlaneWave {
  int k1, k2;
  double cos_amp, sin_amp;
};

// Half-plane of wavevectors with |k_i| <= kmax (k = 0 included when asked).
inline std::vector<std::pair<int, int>> half_plane(int kmax, bool with_zero) {
  std::vector<std::pair<int, int>> ks;
  for (int k1 = 0; k1 <= kmax; ++k1)
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      if (k1 == 0 && k2 < 0) continue;
      if (k1 == 0 && k2 == 0 && !with_zero) continue;
      ks.emplace_back(k1, k2);
    }
  return ks;
}

}  // namespace detail

inline VelocityField taylor_green(const GridSpec2D& g, double amplitude) {
  return {ScalarField2D::from_function(g, [amplitude](double x, double y) { return amplitude * std::sin(x) * std::cos(y); }),
          ScalarField2D::from_function(g, [amplitude](double x, double y) { return -amplitude * std::cos(x) * std::sin(y); })};
}

inline State standard_initial_data(GridSpec2D grid, CircleGrid circle, const InitialDataSpec& spec) {
  if (!(spec.f_perturbation >= 0.0 && spec.f_perturbation < 1.0))
    throw std::invalid_argument("f_perturbation must lie in [0, 1) to keep f0 > 0");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  // Streamfunction perturbation, u = (d2 psi, -d1 psi).
  std::vector<detail::PlaneWave> psi;
  double speed_bound = 0.0;
  for (auto [k1, k2] : detail::half_plane(3, false)) {
    detail::PlaneWave w{k1, k2, uni(rng), uni(rng)};
    speed_bound += (std::abs(w.cos_amp) + std::abs(w.sin_amp)) * std::sqrt(double(k1 * k1 + k2 * k2));
    psi.push_back(w);
  }
  const double us = speed_bound > 0.0 ? spec.u_perturbation / speed_bound : 0.0;

  State s;
  s.t = 0.0;
  s.u = taylor_green(grid, spec.tg_amplitude);
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.nx; ++j) {
      const double x = grid.coordinate(i), y = grid.coordinate(j);
      double v1 = 0.0, v2 = 0.0;
      for (const auto& w : psi) {
        const double ph = w.k1 * x + w.k2 * y;
        // d/dx_m [a cos + b sin] = k_m (-a sin + b cos)
        const double d = -w.cos_amp * std::sin(ph) + w.sin_amp * std::cos(ph);
        v1 += w.k2 * d;
        v2 -= w.k1 * d;
      }
      s.u.u1(i, j) += us * v1;
      s.u.u2(i, j) += us * v2;
    }

  struct OrientationTerm {
    detail::PlaneWave wave;
    int n;
    double cos_theta, sin_theta;
  };
  std::vector<OrientationTerm> terms;
  double total = 0.0;
  for (int n = 1; n <= 2; ++n)
    for (auto [k1, k2] : detail::half_plane(2, true)) {
      OrientationTerm t{{k1, k2, uni(rng), (k1 == 0 && k2 == 0) ? 0.0 : uni(rng)}, n, uni(rng), uni(rng)};
      total += (std::abs(t.wave.cos_amp) + std::abs(t.wave.sin_amp)) *
               (std::abs(t.cos_theta) + std::abs(t.sin_theta));
      terms.push_back(t);
    }
  const double fs = total > 0.0 ? spec.f_perturbation / total : 0.0;

  s.f = DistributionField(grid, circle);
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.nx; ++j) {
      const double x = grid.coordinate(i), y = grid.coordinate(j);
      for (int b = 0; b < circle.nm; ++b) {
        const double th = circle.theta(b);
        double v = 1.0;
        for (const auto& t : terms) {
          const double ph = t.wave.k1 * x + t.wave.k2 * y;
          const double spatial = t.wave.cos_amp * std::cos(ph) + t.wave.sin_amp * std::sin(ph);
          v += fs * spatial * (t.cos_theta * std::cos(t.n * th) + t.sin_theta * std::sin(t.n * th));
        }
        s.f(i, j, b) = v / two_pi;
      }
    }
  return s;
}

}  // namespace nsfp

#endif  // NSFP_INITIAL_DATA_HPP
