#ifndef NSFP_LITTLEWOOD_PALEY_HPP
#define NSFP_LITTLEWOOD_PALEY_HPP

// Sharp dyadic decomposition on the lattice: block j keeps the modes with
// 2^{j-1} < |k| <= 2^j (block 0 is |k| = 1). The mean is never part of a
// block; Besov norms below therefore measure f - mean(f).

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nsfp/spectral2d.hpp"

namespace nsfp {

/// Shell index of a nonzero lattice frequency with |k|^2 = n2, or -1 for k = 0.
inline int shell_index(int n2) {
  if (n2 <= 0) return -1;
  int j = 0;
  long long upper = 1;  // 4^j
  while (n2 > upper) {
    upper *= 4;
    ++j;
  }
  return j;
}

/// Highest shell index occupied by the grid's modes.
inline int max_shell(const GridSpec2D& g) {
  const int h = g.nx / 2;
  return shell_index(2 * h * h);
}

inline double shell_scale(int j) { return std::ldexp(1.0, j); }

inline Spectrum2D lp_block(const Spectrum2D& s, int j) {
  Spectrum2D out = s;
  out.apply([j](const Mode& m) { return shell_index(m.norm_sq()) == j ? 1.0 : 0.0; });
  return out;
}

inline ScalarField2D lp_block(const ScalarField2D& f, int j) {
  if (j < 0) throw std::invalid_argument("lp_block: j must be >= 0");
  return lp_block(f.spectrum(), j).to_field();
}

/// All blocks 0..max_shell of f.
inline std::vector<ScalarField2D> lp_blocks(const ScalarField2D& f) {
  const Spectrum2D s = f.spectrum();
  std::vector<ScalarField2D> out;
  for (int j = 0; j <= max_shell(f.grid()); ++j) out.push_back(lp_block(s, j).to_field());
  return out;
}

/// ( sum_j 2^{jqs} ||Delta_j f||_{L^p}^q )^{1/q} over the grid's shells.
inline double besov_norm_from_blocks(const std::vector<double>& block_norms, double s, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("besov_norm: q must be >= 1");
  if (std::isinf(q)) {
    double m = 0.0;
    for (std::size_t j = 0; j < block_norms.size(); ++j)
      m = std::max(m, std::pow(shell_scale(int(j)), s) * block_norms[j]);
    return m;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < block_norms.size(); ++j)
    sum += std::pow(shell_scale(int(j)), q * s) * std::pow(block_norms[j], q);
  return std::pow(sum, 1.0 / q);
}

inline std::vector<double> block_lp_norms(const ScalarField2D& f, double p) {
  std::vector<double> norms;
  for (const auto& b : lp_blocks(f)) norms.push_back(lq_norm(b, p));
  return norms;
}

inline double besov_norm(const ScalarField2D& f, double s, double p, double q) {
  if (!(p >= 1.0)) throw std::invalid_argument("besov_norm: p must be >= 1");
  return besov_norm_from_blocks(block_lp_norms(f, p), s, q);
}

/// Besov norm of a vector field: block norms of the pointwise Euclidean length.
inline double besov_norm(const std::vector<ScalarField2D>& components, double s, double p, double q) {
  std::vector<std::vector<ScalarField2D>> blocks;
  for (const auto& c : components) blocks.push_back(lp_blocks(c));
  std::vector<double> norms;
  for (std::size_t j = 0; j < blocks.front().size(); ++j) {
    std::vector<ScalarField2D> parts;
    for (const auto& b : blocks) parts.push_back(b[j]);
    norms.push_back(lq_norm(pointwise_norm(parts), p));
  }
  return besov_norm_from_blocks(norms, s, q);
}

}  // namespace nsfp

#endif  // NSFP_LITTLEWOOD_PALEY_HPP
