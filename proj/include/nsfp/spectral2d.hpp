#ifndef NSFP_SPECTRAL2D_HPP
#define NSFP_SPECTRAL2D_HPP

// Fourier toolbox on the periodic square [0, 2pi)^2.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "nsfp/fft.hpp"
#include "nsfp/grid.hpp"

namespace nsfp {

using cplx = std::complex<double>;

class ScalarField2D;

/// Half spectrum of a real field: slot (a, b) with a in [0, nx), b in [0, nx/2].
class Spectrum2D {
 public:
  Spectrum2D() = default;
  explicit Spectrum2D(GridSpec2D grid) : grid_(grid), coeffs_(grid.modes()) {}

  const GridSpec2D& grid() const { return grid_; }
  int rows() const { return grid_.nx; }
  int cols() const { return grid_.half(); }

  cplx& operator()(int a, int b) { return coeffs_[std::size_t(a) * cols() + b]; }
  const cplx& operator()(int a, int b) const { return coeffs_[std::size_t(a) * cols() + b]; }
  std::span<cplx> coeffs() { return coeffs_; }
  std::span<const cplx> coeffs() const { return coeffs_; }

  Mode mode(int a, int b) const { return mode_at(grid_, a, b); }

  /// Number of times slot (a, b) appears in the full spectrum.
  double multiplicity(int b) const { return (b == 0 || b == grid_.nx / 2) ? 1.0 : 2.0; }

  /// Applies `symbol(Mode) -> cplx` to every mode in place.
  template <class Symbol>
  Spectrum2D& apply(Symbol&& symbol) {
    for (int a = 0; a < rows(); ++a)
      for (int b = 0; b < cols(); ++b) (*this)(a, b) *= symbol(mode(a, b));
    return *this;
  }

  ScalarField2D to_field() const;

 private:
  GridSpec2D grid_;
  std::vector<cplx> coeffs_;
};

/// Real scalar on the nx-by-nx physical grid, row-major in (x1, x2).
class ScalarField2D {
 public:
  ScalarField2D() = default;
  explicit ScalarField2D(GridSpec2D grid, double value = 0.0)
      : grid_(grid), values_(grid.points(), value) {
    grid_.validate();
  }

  template <class F>
  static ScalarField2D from_function(GridSpec2D grid, F&& fn) {
    ScalarField2D out(grid);
    for (int i = 0; i < grid.nx; ++i)
      for (int j = 0; j < grid.nx; ++j) out(i, j) = fn(grid.coordinate(i), grid.coordinate(j));
    return out;
  }

  const GridSpec2D& grid() const { return grid_; }
  int nx() const { return grid_.nx; }
  std::size_t size() const { return values_.size(); }

  double& operator()(int i, int j) { return values_[std::size_t(i) * grid_.nx + j]; }
  double operator()(int i, int j) const { return values_[std::size_t(i) * grid_.nx + j]; }
  double& operator[](std::size_t idx) { return values_[idx]; }
  double operator[](std::size_t idx) const { return values_[idx]; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  Spectrum2D spectrum() const {
    Spectrum2D s(grid_);
    fft::plane(grid_.nx).forward(values_, s.coeffs());
    return s;
  }

  double mean() const {
    double sum = 0.0;
    for (double v : values_) sum += v;
    return sum / double(values_.size());
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  ScalarField2D& operator+=(const ScalarField2D& o) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  ScalarField2D& operator-=(const ScalarField2D& o) {
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  ScalarField2D& operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
  }
  friend ScalarField2D operator+(ScalarField2D a, const ScalarField2D& b) { return a += b; }
  friend ScalarField2D operator-(ScalarField2D a, const ScalarField2D& b) { return a -= b; }
  friend ScalarField2D operator*(double s, ScalarField2D a) { return a *= s; }

  /// Pointwise product.
  friend ScalarField2D operator*(const ScalarField2D& a, const ScalarField2D& b) {
    ScalarField2D out(a.grid_);
    for (std::size_t i = 0; i < a.values_.size(); ++i) out.values_[i] = a.values_[i] * b.values_[i];
    return out;
  }

 private:
  GridSpec2D grid_;
  std::vector<double> values_;
};

inline ScalarField2D Spectrum2D::to_field() const {
  ScalarField2D out(grid_);
  fft::plane(grid_.nx).inverse(coeffs_, out.values());
  return out;
}

/// Applies a Fourier multiplier `symbol(Mode) -> cplx` to a real field.
template <class Symbol>
ScalarField2D apply_multiplier(const ScalarField2D& f, Symbol&& symbol) {
  return f.spectrum().apply(symbol).to_field();
}

/// Velocity pair (u1, u2).
struct VelocityField {
  ScalarField2D u1;
  ScalarField2D u2;

  const ScalarField2D& operator[](int i) const { return i == 0 ? u1 : u2; }
  ScalarField2D& operator[](int i) { return i == 0 ? u1 : u2; }
  const GridSpec2D& grid() const { return u1.grid(); }
};

/// 2x2 matrix of fields, entry (i, j) with 0-based indices.
struct StressField {
  std::array<ScalarField2D, 4> entries;

  StressField() = default;
  explicit StressField(GridSpec2D grid)
      : entries{ScalarField2D(grid), ScalarField2D(grid), ScalarField2D(grid), ScalarField2D(grid)} {}

  ScalarField2D& operator()(int i, int j) { return entries[2 * i + j]; }
  const ScalarField2D& operator()(int i, int j) const { return entries[2 * i + j]; }
  const GridSpec2D& grid() const { return entries[0].grid(); }

  /// max over entries of the sup norm.
  double max_abs() const {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.max_abs());
    return m;
  }
};

// ---------------------------------------------------------------------------
// Multipliers

/// Spectral derivative along `axis` (1 or 2).
inline ScalarField2D derivative(const ScalarField2D& f, int axis) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("derivative: axis must be 1 or 2");
  return apply_multiplier(f, [axis](const Mode& m) {
    return cplx(0.0, axis == 1 ? m.odd1 : m.odd2);
  });
}

/// Riesz transform R_i = d_i (-Delta)^{-1/2}, symbol i k_i / |k|, zero at k = 0.
inline cplx riesz_symbol(const Mode& m, int i) {
  if (m.norm_sq() == 0) return 0.0;
  return cplx(0.0, (i == 1 ? m.odd1 : m.odd2) / m.norm());
}

inline ScalarField2D riesz(const ScalarField2D& f, int i) {
  if (i != 1 && i != 2) throw std::invalid_argument("riesz: index must be 1 or 2");
  return apply_multiplier(f, [i](const Mode& m) { return riesz_symbol(m, i); });
}

/// (-Delta)^{-1} with the mean mode mapped to zero.
inline ScalarField2D inverse_neg_laplacian(const ScalarField2D& f) {
  return apply_multiplier(f, [](const Mode& m) {
    return m.norm_sq() == 0 ? 0.0 : 1.0 / m.norm_sq();
  });
}

inline ScalarField2D laplacian(const ScalarField2D& f) {
  return apply_multiplier(f, [](const Mode& m) { return -double(m.norm_sq()); });
}

/// Heat semigroup e^{nu t Delta}.
inline ScalarField2D heat_propagate(const ScalarField2D& f, double nu, double t) {
  if (t < 0.0) throw std::invalid_argument("heat_propagate: negative time");
  if (nu < 0.0) throw std::invalid_argument("heat_propagate: negative diffusivity");
  return apply_multiplier(f, [s = nu * t](const Mode& m) { return std::exp(-s * m.norm_sq()); });
}

/// Leray projection onto mean-zero divergence-free fields.
inline VelocityField leray_project(const ScalarField2D& v1, const ScalarField2D& v2) {
  Spectrum2D a = v1.spectrum();
  Spectrum2D b = v2.spectrum();
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) {
      const Mode m = a.mode(r, c);
      if (m.k1 == 0 && m.k2 == 0) {
        a(r, c) = b(r, c) = 0.0;
        continue;
      }
      const int kk = m.odd_norm_sq();
      if (kk == 0) continue;  // pure Nyquist modes carry no gradient
      const cplx dot = (double(m.odd1) * a(r, c) + double(m.odd2) * b(r, c)) / double(kk);
      a(r, c) -= double(m.odd1) * dot;
      b(r, c) -= double(m.odd2) * dot;
    }
  }
  return {a.to_field(), b.to_field()};
}

inline VelocityField leray_project(const VelocityField& v) { return leray_project(v.u1, v.u2); }

/// Zeroes every mode with |k_i| above the dealiasing cutoff.
inline bool dealias_keep(const GridSpec2D& g, const Mode& m) {
  const double cut = g.dealias_cutoff();
  return std::abs(m.k1) <= cut && std::abs(m.k2) <= cut;
}

inline Spectrum2D& dealias(Spectrum2D& s) {
  const GridSpec2D g = s.grid();
  return s.apply([&g](const Mode& m) { return dealias_keep(g, m) ? 1.0 : 0.0; });
}

inline ScalarField2D dealias(const ScalarField2D& f) {
  Spectrum2D s = f.spectrum();
  return dealias(s).to_field();
}

inline ScalarField2D divergence(const VelocityField& v) {
  return derivative(v.u1, 1) + derivative(v.u2, 2);
}

/// Vorticity omega = d1 u2 - d2 u1.
inline ScalarField2D vorticity(const VelocityField& v) {
  return derivative(v.u2, 1) - derivative(v.u1, 2);
}

/// Gradient tensor g(i, j) = d u_i / d x_j.
inline StressField velocity_gradient(const VelocityField& v) {
  StressField g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = derivative(v[i], j + 1);
  return g;
}

/// Row divergence (div tau)_i = d_j tau_ij.
inline VelocityField row_divergence(const StressField& t) {
  return {derivative(t(0, 0), 1) + derivative(t(0, 1), 2),
          derivative(t(1, 0), 1) + derivative(t(1, 1), 2)};
}

/// (H tau)_ij = R_j (delta_il + R_i R_l) R_k tau_lk.
inline StressField apply_H(const StressField& tau) {
  const GridSpec2D g = tau.grid();
  std::array<Spectrum2D, 4> in;
  for (int e = 0; e < 4; ++e) in[e] = tau.entries[e].spectrum();
  std::array<Spectrum2D, 4> out{Spectrum2D(g), Spectrum2D(g), Spectrum2D(g), Spectrum2D(g)};
  for (int a = 0; a < g.nx; ++a) {
    for (int b = 0; b < g.half(); ++b) {
      const Mode m = mode_at(g, a, b);
      const cplx r[2] = {riesz_symbol(m, 1), riesz_symbol(m, 2)};
      // w_l = R_k tau_lk
      cplx w[2];
      for (int l = 0; l < 2; ++l) w[l] = r[0] * in[2 * l](a, b) + r[1] * in[2 * l + 1](a, b);
      for (int i = 0; i < 2; ++i) {
        const cplx v = w[i] + r[i] * (r[0] * w[0] + r[1] * w[1]);
        for (int j = 0; j < 2; ++j) out[2 * i + j](a, b) = r[j] * v;
      }
    }
  }
  StressField res;
  for (int e = 0; e < 4; ++e) res.entries[e] = out[e].to_field();
  return res;
}

// ---------------------------------------------------------------------------
// Norms and inner products (equispaced quadrature, cell weight (2pi/nx)^2)

/// (int |f|^q dx)^{1/q}; q = infinity gives max |f|.
inline double lq_norm(std::span<const double> values, double cell_area, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("lq_norm: q must be >= 1");
  if (std::isinf(q)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += std::pow(std::abs(v) / scale, q);
  return scale * std::pow(sum * cell_area, 1.0 / q);
}

inline double lq_norm(const ScalarField2D& f, double q) {
  return lq_norm(f.values(), f.grid().cell_area(), q);
}

/// Grid inner product int f g dx.
inline double inner(const ScalarField2D& f, const ScalarField2D& g) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * g[i];
  return sum * f.grid().cell_area();
}

/// (2 pi)^2 sum_k |fhat_k|^2 over the full spectrum.
inline double parseval_l2_sq(const Spectrum2D& s) {
  double sum = 0.0;
  for (int a = 0; a < s.rows(); ++a)
    for (int b = 0; b < s.cols(); ++b) sum += s.multiplicity(b) * std::norm(s(a, b));
  return two_pi * two_pi * sum;
}

/// Pointwise Frobenius norm of a family of fields.
template <class Range>
ScalarField2D pointwise_norm(const Range& fields) {
  ScalarField2D out(std::begin(fields)->grid());
  for (const ScalarField2D& f : fields)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += f[i] * f[i];
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(out[i]);
  return out;
}

}  // namespace nsfp

#endif  // NSFP_SPECTRAL2D_HPP
