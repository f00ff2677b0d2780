#ifndef NSFP_GRID_HPP
#define NSFP_GRID_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nsfp {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Uniform periodic grid on [0, 2pi)^2 with nx points per axis.
///
/// Integer wavenumbers per axis run over {-nx/2, ..., nx/2 - 1}. The
/// dealiasing mask keeps modes with |k_i| <= dealias_fraction * nx / 2.
struct GridSpec2D {
  int nx = 32;
  double dealias_fraction = 2.0 / 3.0;

  void validate() const {
    if (nx < 8 || nx % 2 != 0)
      throw std::invalid_argument("GridSpec2D: nx must be even and >= 8, got " +
                                  std::to_string(nx));
    if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
      throw std::invalid_argument("GridSpec2D: dealias_fraction must lie in (0, 1]");
  }

  std::size_t points() const { return std::size_t(nx) * std::size_t(nx); }
  /// Columns of the half (real-to-complex) spectrum.
  int half() const { return nx / 2 + 1; }
  std::size_t modes() const { return std::size_t(nx) * std::size_t(half()); }
  double spacing() const { return two_pi / nx; }
  double cell_area() const { return spacing() * spacing(); }
  double coordinate(int i) const { return spacing() * i; }

  /// Largest retained |k_i| under the dealiasing mask.
  double dealias_cutoff() const { return dealias_fraction * (nx / 2); }

  bool operator==(const GridSpec2D&) const = default;
};

/// Equispaced nodes theta_b = 2 pi b / nm on the circle.
struct CircleGrid {
  int nm = 32;

  void validate() const {
    if (nm < 8 || nm % 2 != 0)
      throw std::invalid_argument("CircleGrid: nm must be even and >= 8, got " +
                                  std::to_string(nm));
  }

  double theta(int b) const { return two_pi * b / nm; }
  /// Trapezoidal quadrature weight.
  double weight() const { return two_pi / nm; }
  int half() const { return nm / 2 + 1; }

  bool operator==(const CircleGrid&) const = default;
};

/// Wavevector of a half-spectrum slot (a, b).
///
/// `odd1`/`odd2` are the wavenumbers used by odd symbols (derivatives,
/// Riesz transforms); they vanish on the Nyquist line so the result stays
/// real. Even symbols use the full `k1`, `k2`.
struct Mode {
  int k1;
  int k2;
  int odd1;
  int odd2;

  int norm_sq() const { return k1 * k1 + k2 * k2; }
  double norm() const { return std::sqrt(double(norm_sq())); }
  int odd_norm_sq() const { return odd1 * odd1 + odd2 * odd2; }
};

inline Mode mode_at(const GridSpec2D& g, int a, int b) {
  const int n = g.nx;
  const int k1 = a < n / 2 ? a : a - n;
  const int k2 = b < n / 2 ? b : b - n;
  return Mode{k1, k2, k1 == -n / 2 ? 0 : k1, k2 == -n / 2 ? 0 : k2};
}

/// Circle wavenumber of half-spectrum slot n; the Nyquist slot is -nm/2.
inline int circle_mode(const CircleGrid& c, int n) { return n < c.nm / 2 ? n : n - c.nm; }

}  // namespace nsfp

#endif  // NSFP_GRID_HPP
