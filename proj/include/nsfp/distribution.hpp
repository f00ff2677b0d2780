#ifndef NSFP_DISTRIBUTION_HPP
#define NSFP_DISTRIBUTION_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "nsfp/circle.hpp"
#include "nsfp/fft.hpp"
#include "nsfp/spectral2d.hpp"

namespace nsfp {

/// f(x1, x2, theta) on the spatial grid times the circle grid, stored
/// row-major over (x1, x2, theta).
class DistributionField {
 public:
  DistributionField() = default;
  DistributionField(GridSpec2D grid, CircleGrid circle, double value = 0.0)
      : grid_(grid), circle_(circle), data_(grid.points() * std::size_t(circle.nm), value) {
    grid_.validate();
    circle_.validate();
  }

  template <class F>
  static DistributionField from_function(GridSpec2D grid, CircleGrid circle, F&& fn) {
    DistributionField out(grid, circle);
    for (int i = 0; i < grid.nx; ++i)
      for (int j = 0; j < grid.nx; ++j)
        for (int b = 0; b < circle.nm; ++b)
          out(i, j, b) = fn(grid.coordinate(i), grid.coordinate(j), circle.theta(b));
    return out;
  }

  const GridSpec2D& grid() const { return grid_; }
  const CircleGrid& circle() const { return circle_; }
  int nx() const { return grid_.nx; }
  int nm() const { return circle_.nm; }
  std::size_t points() const { return grid_.points(); }
  std::size_t size() const { return data_.size(); }

  double& operator()(int i, int j, int b) {
    return data_[(std::size_t(i) * grid_.nx + j) * circle_.nm + b];
  }
  double operator()(int i, int j, int b) const {
    return data_[(std::size_t(i) * grid_.nx + j) * circle_.nm + b];
  }
  double& operator[](std::size_t idx) { return data_[idx]; }
  double operator[](std::size_t idx) const { return data_[idx]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  /// Circle slice at flattened spatial index p = i * nx + j.
  std::span<double> slice(std::size_t p) { return {data_.data() + p * circle_.nm, std::size_t(circle_.nm)}; }
  std::span<const double> slice(std::size_t p) const {
    return {data_.data() + p * circle_.nm, std::size_t(circle_.nm)};
  }

  DistributionField& operator+=(const DistributionField& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  DistributionField& operator-=(const DistributionField& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  DistributionField& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }
  friend DistributionField operator+(DistributionField a, const DistributionField& b) { return a += b; }
  friend DistributionField operator-(DistributionField a, const DistributionField& b) { return a -= b; }
  friend DistributionField operator*(double s, DistributionField a) { return a *= s; }

  /// rho_M(x) = int f dtheta.
  ScalarField2D rho() const {
    ScalarField2D r(grid_);
    for (std::size_t p = 0; p < points(); ++p) r[p] = circle_integral(circle_, slice(p));
    return r;
  }

  /// int int f dtheta dx.
  double total_mass() const {
    double sum = 0.0;
    for (double v : data_) sum += v;
    return sum * circle_.weight() * grid_.cell_area();
  }

  double min() const { return *std::min_element(data_.begin(), data_.end()); }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Discrete L2 norm over x and theta.
  double l2_norm() const {
    double sum = 0.0;
    for (double v : data_) sum += v * v;
    return std::sqrt(sum * circle_.weight() * grid_.cell_area());
  }

 private:
  GridSpec2D grid_;
  CircleGrid circle_;
  std::vector<double> data_;
};

/// Applies the spatial multiplier `symbol(Mode) -> cplx` to every theta plane.
template <class Symbol>
DistributionField x_multiplier(const DistributionField& f, Symbol&& symbol) {
  const GridSpec2D& g = f.grid();
  const int nm = f.nm();
  const auto& plan = fft::plane_batch(g.nx, nm);
  std::vector<cplx> spec(g.modes() * std::size_t(nm));
  plan.forward(f.data(), spec);
  for (int a = 0; a < g.nx; ++a) {
    for (int b = 0; b < g.half(); ++b) {
      const cplx s = symbol(mode_at(g, a, b));
      cplx* row = spec.data() + (std::size_t(a) * g.half() + b) * nm;
      for (int m = 0; m < nm; ++m) row[m] *= s;
    }
  }
  DistributionField out(g, f.circle());
  plan.inverse(spec, out.data());
  return out;
}

/// Applies the circle multiplier `symbol(n, nyquist) -> cplx` at every x.
template <class Symbol>
DistributionField theta_multiplier(const DistributionField& f, Symbol&& symbol) {
  const CircleGrid& c = f.circle();
  const int count = static_cast<int>(f.points());
  const auto& plan = fft::circle_batch(c.nm, count);
  std::vector<cplx> spec(std::size_t(c.half()) * count);
  plan.forward(f.data(), spec);
  std::vector<cplx> sym(c.half());
  for (int n = 0; n < c.half(); ++n) sym[n] = symbol(circle_mode(c, n), n == c.nm / 2);
  for (int p = 0; p < count; ++p)
    for (int n = 0; n < c.half(); ++n) spec[std::size_t(p) * c.half() + n] *= sym[n];
  DistributionField out(f.grid(), c);
  plan.inverse(spec, out.data());
  return out;
}

inline DistributionField x_derivative(const DistributionField& f, int axis) {
  return x_multiplier(f, [axis](const Mode& m) { return cplx(0.0, axis == 1 ? m.odd1 : m.odd2); });
}

inline DistributionField theta_derivative(const DistributionField& f) {
  return theta_multiplier(f, [](int n, bool nyq) { return nyq ? cplx(0.0) : cplx(0.0, n); });
}

inline DistributionField theta_laplacian(const DistributionField& f) {
  return theta_multiplier(f, [](int n, bool) { return cplx(-double(n) * n); });
}

inline DistributionField theta_smooth(const DistributionField& f, double alpha) {
  return theta_multiplier(f, [alpha](int n, bool) { return cplx(smoothing_symbol(n, alpha)); });
}

inline DistributionField dealias(const DistributionField& f) {
  const GridSpec2D g = f.grid();
  return x_multiplier(f, [&g](const Mode& m) { return dealias_keep(g, m) ? 1.0 : 0.0; });
}

}  // namespace nsfp

#endif  // NSFP_DISTRIBUTION_HPP
