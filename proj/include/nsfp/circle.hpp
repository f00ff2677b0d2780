#ifndef NSFP_CIRCLE_HPP
#define NSFP_CIRCLE_HPP

// Configuration space M = S^1 with the flat metric (g = 1, dm = dtheta).
// Gradient, divergence and Laplace-Beltrami reduce to d/dtheta and
// d^2/dtheta^2; quadrature is the trapezoidal rule on CircleGrid.

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "nsfp/fft.hpp"
#include "nsfp/grid.hpp"

namespace nsfp {

using cplx = std::complex<double>;

/// Applies `symbol(n) -> cplx` to a single circle slice (n the signed mode).
template <class Symbol>
std::vector<double> circle_multiplier(const CircleGrid& grid, std::span<const double> slice,
                                      Symbol&& symbol) {
  if (int(slice.size()) != grid.nm) throw std::invalid_argument("circle slice has wrong length");
  const auto& plan = fft::circle_batch(grid.nm, 1);
  std::vector<cplx> spec(grid.half());
  plan.forward(slice, spec);
  for (int n = 0; n < grid.half(); ++n) spec[n] *= symbol(circle_mode(grid, n), n == grid.nm / 2);
  std::vector<double> out(grid.nm);
  plan.inverse(spec, out);
  return out;
}

inline std::vector<double> grad_theta(const CircleGrid& grid, std::span<const double> slice) {
  return circle_multiplier(grid, slice, [](int n, bool nyquist) {
    return nyquist ? cplx(0.0) : cplx(0.0, n);
  });
}

inline std::vector<double> laplace_theta(const CircleGrid& grid, std::span<const double> slice) {
  return circle_multiplier(grid, slice, [](int n, bool) { return cplx(-double(n) * n); });
}

/// Symbol of R = (-Delta_g + I)^{-alpha/2} at circle mode n.
inline double smoothing_symbol(int n, double alpha) {
  return std::pow(1.0 + double(n) * n, -0.5 * alpha);
}

inline std::vector<double> smooth_R(const CircleGrid& grid, std::span<const double> slice,
                                    double alpha) {
  return circle_multiplier(grid, slice, [alpha](int n, bool) { return cplx(smoothing_symbol(n, alpha)); });
}

/// Trapezoidal integral over the circle.
inline double circle_integral(const CircleGrid& grid, std::span<const double> slice) {
  double sum = 0.0;
  for (double v : slice) sum += v;
  return sum * grid.weight();
}

/// a_0 + sum_{n>=1} (a_n cos n theta + b_n sin n theta).
struct TrigSeries {
  std::vector<double> cos_coeffs;  // a_0, a_1, ...
  std::vector<double> sin_coeffs;  // b_0 (ignored), b_1, ...

  double value(double theta) const {
    double v = 0.0;
    for (std::size_t n = 0; n < cos_coeffs.size(); ++n) v += cos_coeffs[n] * std::cos(double(n) * theta);
    for (std::size_t n = 1; n < sin_coeffs.size(); ++n) v += sin_coeffs[n] * std::sin(double(n) * theta);
    return v;
  }

  double derivative(double theta) const {
    double v = 0.0;
    for (std::size_t n = 1; n < cos_coeffs.size(); ++n)
      v -= double(n) * cos_coeffs[n] * std::sin(double(n) * theta);
    for (std::size_t n = 1; n < sin_coeffs.size(); ++n)
      v += double(n) * sin_coeffs[n] * std::cos(double(n) * theta);
    return v;
  }

  std::size_t degree() const {
    return std::max(cos_coeffs.size(), sin_coeffs.size()) > 0
               ? std::max(cos_coeffs.size(), sin_coeffs.size()) - 1
               : 0;
  }

  bool operator==(const TrigSeries&) const = default;
};

/// Symmetric convolution kernel k(theta, theta') = sum_n k_n cos(n (theta - theta')).
///
/// The default is Maier-Saupe, k = -b cos(2 (theta - theta')).
struct InteractionKernel {
  std::vector<double> cos_coeffs;

  static InteractionKernel maier_saupe(double b) {
    if (b < 0.0) throw std::invalid_argument("interaction strength b must be >= 0");
    return InteractionKernel{{0.0, 0.0, -b}};
  }

  double operator()(double theta, double theta_prime) const {
    double v = 0.0;
    for (std::size_t n = 0; n < cos_coeffs.size(); ++n)
      v += cos_coeffs[n] * std::cos(double(n) * (theta - theta_prime));
    return v;
  }

  /// d/dtheta k(theta, theta').
  double dtheta(double theta, double theta_prime) const {
    double v = 0.0;
    for (std::size_t n = 1; n < cos_coeffs.size(); ++n)
      v -= double(n) * cos_coeffs[n] * std::sin(double(n) * (theta - theta_prime));
    return v;
  }

  /// Lipschitz constant sum_n n |k_n| (equals sup |dk/dtheta| for one mode).
  double lipschitz() const {
    double l = 0.0;
    for (std::size_t n = 1; n < cos_coeffs.size(); ++n) l += double(n) * std::abs(cos_coeffs[n]);
    return l;
  }

  /// sup_theta |dk/dtheta| bound used by the stress estimate.
  double derivative_bound() const { return lipschitz(); }

  bool is_zero() const {
    for (double c : cos_coeffs)
      if (c != 0.0) return false;
    return true;
  }

  bool operator==(const InteractionKernel&) const = default;
};

/// U[f] and dU/dtheta on the grid nodes, by trapezoidal quadrature of the
/// convolution. Exact for the cosine-series kernel (the quadrature is a
/// finite sum of moments C_n, S_n).
struct Potential {
  std::vector<double> value;
  std::vector<double> dtheta;
};

inline Potential potential_U(const CircleGrid& grid, std::span<const double> slice,
                             const InteractionKernel& kernel) {
  Potential pot{std::vector<double>(grid.nm, 0.0), std::vector<double>(grid.nm, 0.0)};
  const double w = grid.weight();
  for (std::size_t n = 0; n < kernel.cos_coeffs.size(); ++n) {
    const double kn = kernel.cos_coeffs[n];
    if (kn == 0.0) continue;
    double cm = 0.0, sm = 0.0;
    for (int b = 0; b < grid.nm; ++b) {
      const double th = double(n) * grid.theta(b);
      cm += std::cos(th) * slice[b];
      sm += std::sin(th) * slice[b];
    }
    cm *= w;
    sm *= w;
    for (int b = 0; b < grid.nm; ++b) {
      const double th = double(n) * grid.theta(b);
      pot.value[b] += kn * (std::cos(th) * cm + std::sin(th) * sm);
      pot.dtheta[b] += kn * double(n) * (-std::sin(th) * cm + std::cos(th) * sm);
    }
  }
  return pot;
}

/// The four coefficient fields c_{ji}(theta) as trigonometric series,
/// entry (j, i) at index 2 j + i (0-based).
struct CoefficientModel {
  std::array<TrigSeries, 4> entries;

  /// Rigid rods: c_{ji} = m_j m_perp_i with m = (cos, sin), m_perp = (-sin, cos).
  static CoefficientModel rod() {
    CoefficientModel c;
    c.entries[0] = {{0.0}, {0.0, 0.0, -0.5}};   // -cos sin
    c.entries[1] = {{0.5, 0.0, 0.5}, {}};       // cos^2
    c.entries[2] = {{-0.5, 0.0, 0.5}, {}};      // -sin^2
    c.entries[3] = {{0.0}, {0.0, 0.0, 0.5}};    // sin cos
    return c;
  }

  static CoefficientModel zero() { return CoefficientModel{}; }

  bool operator==(const CoefficientModel&) const = default;
};

/// c_{ji} and their exact theta-derivatives sampled on the circle nodes.
struct RodCoefficients {
  CircleGrid grid;
  std::array<std::vector<double>, 4> c;
  std::array<std::vector<double>, 4> dtheta_c;

  const std::vector<double>& at(int j, int i) const { return c[2 * j + i]; }
  const std::vector<double>& dtheta_at(int j, int i) const { return dtheta_c[2 * j + i]; }

  double sup_c() const {
    double m = 0.0;
    for (const auto& e : c)
      for (double v : e) m = std::max(m, std::abs(v));
    return m;
  }
  double sup_dtheta_c() const {
    double m = 0.0;
    for (const auto& e : dtheta_c)
      for (double v : e) m = std::max(m, std::abs(v));
    return m;
  }
};

inline RodCoefficients sample_coefficients(const CircleGrid& grid, const CoefficientModel& model) {
  RodCoefficients rc;
  rc.grid = grid;
  for (int e = 0; e < 4; ++e) {
    rc.c[e].resize(grid.nm);
    rc.dtheta_c[e].resize(grid.nm);
    for (int b = 0; b < grid.nm; ++b) {
      rc.c[e][b] = model.entries[e].value(grid.theta(b));
      rc.dtheta_c[e][b] = model.entries[e].derivative(grid.theta(b));
    }
  }
  return rc;
}

inline RodCoefficients rod_coefficients(const CircleGrid& grid) {
  return sample_coefficients(grid, CoefficientModel::rod());
}

}  // namespace nsfp

#endif  // NSFP_CIRCLE_HPP
