#ifndef NSFP_MOLLIFIER_HPP
#define NSFP_MOLLIFIER_HPP

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "nsfp/spectral2d.hpp"

namespace nsfp {

/// Standard C0^inf bump exp(1/(r^2 - 1)) on the unit disc, unnormalized.
inline double bump_profile(double r) {
  if (r >= 1.0) return 0.0;
  return std::exp(1.0 / (r * r - 1.0));
}

/// Convolution with phi_delta(x) = delta^{-2} phi(x / delta), phi the
/// unit-mass radial bump.
///
/// On the torus the periodized kernel acts on mode k by the planar
/// transform phihat(delta |k|), which is evaluated once per distinct |k|^2
/// by radial quadrature against J0. delta = 0 is the identity.
class Mollifier {
 public:
  Mollifier(GridSpec2D grid, double delta) : grid_(grid), delta_(delta) {
    if (!(delta >= 0.0)) throw std::invalid_argument("mollify: delta must be >= 0");
    if (delta > std::numbers::pi)
      throw std::invalid_argument("mollify: delta must not exceed pi (kernel support must fit the cell)");
    if (delta_ > 0.0) {
      mass_ = radial_integral([](double) { return 1.0; });
      warm();
    }
  }

  double delta() const { return delta_; }
  bool identity() const { return delta_ == 0.0; }

  /// Fourier transform of the unit-mass bump at frequency |xi|.
  double symbol_at(double xi) const {
    if (delta_ == 0.0 || xi == 0.0) return 1.0;
    return radial_integral([xi](double r) { return std::cyl_bessel_j(0.0, xi * r); }, xi) / mass_;
  }

  double symbol(const Mode& m) const {
    if (delta_ == 0.0) return 1.0;
    const int n2 = m.norm_sq();
    auto it = cache_.find(n2);
    if (it == cache_.end()) it = cache_.emplace(n2, symbol_at(delta_ * std::sqrt(double(n2)))).first;
    return it->second;
  }

  ScalarField2D operator()(const ScalarField2D& f) const {
    if (identity()) return f;
    return apply_multiplier(f, [this](const Mode& m) { return symbol(m); });
  }

  VelocityField operator()(const VelocityField& v) const { return {(*this)(v.u1), (*this)(v.u2)}; }

  StressField operator()(const StressField& s) const {
    StressField out;
    for (int e = 0; e < 4; ++e) out.entries[e] = (*this)(s.entries[e]);
    return out;
  }

  const GridSpec2D& grid() const { return grid_; }

  // Filled at construction so concurrent use only reads the cache.
  void warm() const {
    for (int a = 0; a < grid_.nx; ++a)
      for (int b = 0; b < grid_.half(); ++b) symbol(mode_at(grid_, a, b));
  }

 private:
  // The integrand is smooth with every derivative vanishing at r = 1, so a
  // fixed composite Gauss rule with a few panels per oscillation of J0
  // is accurate to rounding.
  template <class Weight>
  static double radial_integral(Weight&& w, double xi = 0.0) {
    auto integrand = [&w](double r) { return bump_profile(r) * w(r) * r; };
    const int panels = 16 + int(std::ceil(xi / 4.0));
    double sum = 0.0;
    for (int p = 0; p < panels; ++p)
      sum += boost::math::quadrature::gauss<double, 20>::integrate(integrand, double(p) / panels,
                                                                   double(p + 1) / panels);
    return sum;
  }

  GridSpec2D grid_;
  double delta_;
  double mass_ = 1.0;
  mutable std::unordered_map<int, double> cache_;
};

inline ScalarField2D mollify(const ScalarField2D& f, double delta) {
  return Mollifier(f.grid(), delta)(f);
}

}  // namespace nsfp

#endif  // NSFP_MOLLIFIER_HPP
