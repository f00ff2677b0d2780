#ifndef NSFP_BESOV_LAB_HPP
#define NSFP_BESOV_LAB_HPP

// Numerical checks of the interpolation inequalities in two dimensions:
//   ||f||_{2r}^2 <= C ||f||_r ||grad f||_{B^{0,2}_2}          (generalized Ladyzhenskaya)
//   ||u||_{2r}^2 <= C (||u||_2 + ||grad u||_2) ||u||_r         (torus form)
// together with the two Bernstein estimates on single dyadic blocks and the
// low/high frequency split that proves the first inequality.
// Ratios are LHS / RHS without the constant; sup over a family is the
// empirical constant.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsfp/littlewood_paley.hpp"

namespace nsfp::lab {

inline constexpr double dimension = 2.0;

struct TestFunction {
  std::string name;
  std::function<double(double, double)> fn;

  ScalarField2D sample(const GridSpec2D& g) const { return ScalarField2D::from_function(g, fn); }
};

using TestFunctionFamily = std::vector<TestFunction>;

inline TestFunction single_mode(int k1, int k2, bool cosine = false) {
  std::string name = std::string(cosine ? "cos" : "sin") + "(" + std::to_string(k1) + "," + std::to_string(k2) + ")";
  return {name, [=](double x, double y) {
            const double ph = k1 * x + k2 * y;
            return cosine ? std::cos(ph) : std::sin(ph);
          }};
}

/// Smooth periodic bump exp((cos(x - c1) + cos(y - c2) - 2) / w^2) of width ~w.
inline TestFunction bump(double width, double c1 = 1.0, double c2 = 2.0) {
  return {"bump(w=" + std::to_string(width).substr(0, 4) + ")", [=](double x, double y) {
            return std::exp((std::cos(x - c1) + std::cos(y - c2) - 2.0) / (width * width));
          }};
}

/// Mean-zero random trigonometric polynomial with |k_i| <= kmax and
/// coefficients uniform in [-1, 1] damped by 1 / (1 + |k|).
inline TestFunction random_band_limited(int kmax, std::uint64_t seed) {
  struct Wave {
    int k1, k2;
    double a, b;
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<Wave> waves;
  for (int k1 = 0; k1 <= kmax; ++k1)
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      const double damp = 1.0 / (1.0 + std::hypot(double(k1), double(k2)));
      const double a = uni(rng) * damp;
      const double b = uni(rng) * damp;
      waves.push_back({k1, k2, a, b});
    }
  return {"random(K=" + std::to_string(kmax) + ",seed=" + std::to_string(seed) + ")",
          [waves](double x, double y) {
            double v = 0.0;
            for (const auto& w : waves) {
              const double ph = w.k1 * x + w.k2 * y;
              v += w.a * std::cos(ph) + w.b * std::sin(ph);
            }
            return v;
          }};
}

/// The 20-member family: 6 single modes, 6 bumps, 8 seeded random fields.
inline TestFunctionFamily standard_family(std::uint64_t seed = 2024) {
  TestFunctionFamily fam{single_mode(1, 0),       single_mode(0, 2, true), single_mode(2, 2),
                         single_mode(4, 0),       single_mode(3, 4),       single_mode(0, 8, true)};
  for (double w : {0.3, 0.4, 0.5, 0.7, 1.0, 1.5}) fam.push_back(bump(w));
  const int kmax[] = {2, 3, 4, 5, 6, 8, 10, 12};
  for (int i = 0; i < 8; ++i) fam.push_back(random_band_limited(kmax[i], seed + std::uint64_t(i)));
  return fam;
}

/// Single modes only; every norm has a closed form.
inline TestFunctionFamily mode_family() {
  return {single_mode(1, 0), single_mode(0, 2, true), single_mode(2, 2), single_mode(4, 0),
          single_mode(3, 4), single_mode(0, 8, true)};
}

// ---------------------------------------------------------------------------

inline std::vector<ScalarField2D> gradient(const ScalarField2D& f) {
  return {derivative(f, 1), derivative(f, 2)};
}

/// ||grad f||_{B^{0,n}_2} with n = 2.
inline double gradient_besov(const ScalarField2D& f) {
  return besov_norm(gradient(f), 0.0, dimension, 2.0);
}

struct LadyzhenskayaReport {
  double lhs = 0.0;        // ||f||_{2r}^2
  double lr_norm = 0.0;    // ||f||_r
  double grad_besov = 0.0; // ||grad f||_{B^{0,2}_2}
  double ratio = 0.0;
};

inline LadyzhenskayaReport verify_gen_ladyzhenskaya(const ScalarField2D& f, double r) {
  if (!(r >= dimension / 2.0)) throw std::invalid_argument("generalized Ladyzhenskaya needs r >= n/2 = 1");
  LadyzhenskayaReport rep;
  rep.grad_besov = gradient_besov(f);
  rep.lr_norm = lq_norm(f, r);
  const double rhs = rep.lr_norm * rep.grad_besov;
  if (!(rhs > 0.0)) throw std::invalid_argument("generalized Ladyzhenskaya: right-hand side vanishes (constant field)");
  rep.lhs = std::pow(lq_norm(f, 2.0 * r), 2);
  rep.ratio = rep.lhs / rhs;
  return rep;
}

struct BernsteinReport {
  int j = 0;
  double block_l2r_sq = 0.0;  // ||Delta_j f||_{2r}^2
  double grad_block_ln = 0.0; // ||grad Delta_j f||_{L^n}
  double block_lr = 0.0;      // ||Delta_j f||_r
  double block_l2 = 0.0;      // ||Delta_j f||_2
  double high_ratio = 0.0;    // block_l2r_sq / (lambda^{-n/r} grad_block_ln^2)
  double low_ratio = 0.0;     // block_l2r_sq / (lambda^{n/r} block_lr^2)
  double gradient_ratio = 0.0;  // ||grad Delta_j f||_2 / (lambda_j ||Delta_j f||_2)
};

inline BernsteinReport bernstein_check(const ScalarField2D& f, int j, double r) {
  const ScalarField2D block = lp_block(f, j);
  BernsteinReport rep;
  rep.j = j;
  rep.block_l2 = lq_norm(block, 2.0);
  // blocks at rounding level relative to f count as empty
  if (!(rep.block_l2 > 1e-12 * lq_norm(f, 2.0)))
    throw std::invalid_argument("bernstein_check: block " + std::to_string(j) + " is zero");
  const double lambda = shell_scale(j);
  const auto grad = gradient(block);
  rep.grad_block_ln = lq_norm(pointwise_norm(grad), dimension);
  const double grad_l2 = lq_norm(pointwise_norm(grad), 2.0);
  rep.block_lr = lq_norm(block, r);
  rep.block_l2r_sq = std::pow(lq_norm(block, 2.0 * r), 2);
  rep.high_ratio = rep.block_l2r_sq / (std::pow(lambda, -dimension / r) * rep.grad_block_ln * rep.grad_block_ln);
  rep.low_ratio = rep.block_l2r_sq / (std::pow(lambda, dimension / r) * rep.block_lr * rep.block_lr);
  rep.gradient_ratio = grad_l2 / (lambda * rep.block_l2);
  return rep;
}

struct SplitReport {
  int best_shell = 0;              // M*
  double bound = 0.0;              // low(M*) + high(M*)
  double lhs = 0.0;                // ||f||_{2r}^2
  double ratio = 0.0;              // lhs / bound
  std::vector<double> low_bounds;  // lambda_M^{n/r} ||f||_r^2
  std::vector<double> high_bounds; // lambda_M^{-n/r} ||grad f||_B^2
};

/// Minimizes lambda_M^{n/r} ||f||_r^2 + lambda_M^{-n/r} ||grad f||_B^2 over the grid's shells.
inline SplitReport optimal_split(const ScalarField2D& f, double r) {
  const double lr = lq_norm(f, r);
  const double gb = gradient_besov(f);
  if (!(gb > 0.0)) throw std::invalid_argument("optimal_split: constant field");
  SplitReport rep;
  rep.lhs = std::pow(lq_norm(f, 2.0 * r), 2);
  rep.bound = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= max_shell(f.grid()); ++m) {
    const double lam = std::pow(shell_scale(m), dimension / r);
    rep.low_bounds.push_back(lam * lr * lr);
    rep.high_bounds.push_back(gb * gb / lam);
    const double b = rep.low_bounds.back() + rep.high_bounds.back();
    if (b < rep.bound) {
      rep.bound = b;
      rep.best_shell = m;
    }
  }
  rep.ratio = rep.lhs / rep.bound;
  return rep;
}

struct InterpolationReport {
  double lhs = 0.0;
  double l2 = 0.0;
  double grad_l2 = 0.0;
  double lr = 0.0;
  double ratio = 0.0;
};

inline InterpolationReport torus_interp_check(const ScalarField2D& u, double r) {
  InterpolationReport rep;
  rep.l2 = lq_norm(u, 2.0);
  if (!(rep.l2 > 0.0)) throw std::invalid_argument("torus_interp_check: u must be nonzero");
  rep.grad_l2 = lq_norm(pointwise_norm(gradient(u)), 2.0);
  rep.lr = lq_norm(u, r);
  rep.lhs = std::pow(lq_norm(u, 2.0 * r), 2);
  rep.ratio = rep.lhs / ((rep.l2 + rep.grad_l2) * rep.lr);
  return rep;
}

// ---------------------------------------------------------------------------

struct LabRow {
  std::string function;
  double r = 0.0;
  double ladyzhenskaya_ratio = 0.0;
  double interpolation_ratio = 0.0;
  int split_shell = 0;
  double split_ratio = 0.0;
};

struct LabSummary {
  std::vector<double> r_values;
  std::vector<double> sup_ladyzhenskaya;   // per r
  std::vector<double> sup_interpolation;   // per r
  std::vector<double> max_split_ratio;     // per r
  double min_bernstein_gradient_ratio = 0.0;
  double max_bernstein_gradient_ratio = 0.0;
  double max_bernstein_high = 0.0;
  double max_bernstein_low = 0.0;
};

struct LabReport {
  int nx = 0;
  std::vector<LabRow> rows;
  LabSummary summary;
};

/// Runs every check over the family on an nx grid.
inline LabReport sweep(const TestFunctionFamily& family, const GridSpec2D& grid,
                       const std::vector<double>& r_values) {
  if (family.empty()) throw std::invalid_argument("inequality sweep: empty test-function family");
  if (r_values.empty()) throw std::invalid_argument("inequality sweep: no exponents r");
  LabReport rep;
  rep.nx = grid.nx;
  rep.summary.r_values = r_values;
  rep.summary.sup_ladyzhenskaya.assign(r_values.size(), 0.0);
  rep.summary.sup_interpolation.assign(r_values.size(), 0.0);
  rep.summary.max_split_ratio.assign(r_values.size(), 0.0);
  rep.summary.min_bernstein_gradient_ratio = std::numeric_limits<double>::infinity();
  for (const auto& member : family) {
    const ScalarField2D f = member.sample(grid);
    for (std::size_t ir = 0; ir < r_values.size(); ++ir) {
      const double r = r_values[ir];
      LabRow row;
      row.function = member.name;
      row.r = r;
      row.ladyzhenskaya_ratio = verify_gen_ladyzhenskaya(f, r).ratio;
      row.interpolation_ratio = torus_interp_check(f, r).ratio;
      const SplitReport sp = optimal_split(f, r);
      row.split_shell = sp.best_shell;
      row.split_ratio = sp.ratio;
      rep.summary.sup_ladyzhenskaya[ir] = std::max(rep.summary.sup_ladyzhenskaya[ir], row.ladyzhenskaya_ratio);
      rep.summary.sup_interpolation[ir] = std::max(rep.summary.sup_interpolation[ir], row.interpolation_ratio);
      rep.summary.max_split_ratio[ir] = std::max(rep.summary.max_split_ratio[ir], row.split_ratio);
      rep.rows.push_back(row);

      const Spectrum2D s = f.spectrum();
      for (int j = 0; j <= max_shell(grid); ++j) {
        if (parseval_l2_sq(lp_block(s, j)) <= 1e-24 * parseval_l2_sq(s)) continue;
        const BernsteinReport b = bernstein_check(f, j, r);
        rep.summary.min_bernstein_gradient_ratio = std::min(rep.summary.min_bernstein_gradient_ratio, b.gradient_ratio);
        rep.summary.max_bernstein_gradient_ratio = std::max(rep.summary.max_bernstein_gradient_ratio, b.gradient_ratio);
        rep.summary.max_bernstein_high = std::max(rep.summary.max_bernstein_high, b.high_ratio);
        rep.summary.max_bernstein_low = std::max(rep.summary.max_bernstein_low, b.low_ratio);
      }
    }
  }
  return rep;
}

}  // namespace nsfp::lab

#endif  // NSFP_BESOV_LAB_HPP
