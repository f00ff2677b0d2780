#include "catch_amalgamated.hpp"

#include <random>

#include "nsfp/circle.hpp"
#include "oracle.hpp"

using namespace nsfp;

namespace {

const CircleGrid c32{32};

std::vector<double> sample(const CircleGrid& c, const std::function<double(double)>& f) {
  std::vector<double> v(c.nm);
  for (int b = 0; b < c.nm; ++b) v[b] = f(c.theta(b));
  return v;
}

double max_err(const std::vector<double>& a, const CircleGrid& c, const std::function<double(double)>& f) {
  double m = 0.0;
  for (int b = 0; b < c.nm; ++b) m = std::max(m, std::abs(a[b] - f(c.theta(b))));
  return m;
}

}  // namespace

TEST_CASE("theta derivative and Laplacian") {
  CHECK(max_err(grad_theta(c32, sample(c32, [](double t) { return std::sin(t); })), c32,
                [](double t) { return std::cos(t); }) < 1e-13);
  CHECK(max_err(grad_theta(c32, sample(c32, [](double t) { return std::cos(2 * t); })), c32,
                [](double t) { return -2 * std::sin(2 * t); }) < 1e-13);
  CHECK(max_err(grad_theta(c32, std::vector<double>(32, 3.0)), c32, [](double) { return 0.0; }) < 1e-14);
  CHECK(max_err(laplace_theta(c32, sample(c32, [](double t) { return std::cos(t); })), c32,
                [](double t) { return -std::cos(t); }) < 1e-13);
  CHECK(max_err(laplace_theta(c32, sample(c32, [](double t) { return std::sin(3 * t); })), c32,
                [](double t) { return -9 * std::sin(3 * t); }) < 1e-12);
}

TEST_CASE("theta derivative and Laplacian commute on band-limited slices") {
  auto f = sample(c32, [](double t) { return std::cos(t) + 0.3 * std::sin(5 * t) - 0.1 * std::cos(11 * t); });
  const auto a = grad_theta(c32, laplace_theta(c32, f));
  const auto b = laplace_theta(c32, grad_theta(c32, f));
  for (int i = 0; i < 32; ++i) CHECK(a[i] == Catch::Approx(b[i]).margin(1e-11));
}

TEST_CASE("smoothing operator R") {
  CHECK(max_err(smooth_R(c32, std::vector<double>(32, 2.5), 2.0), c32, [](double) { return 2.5; }) < 1e-14);
  CHECK(max_err(smooth_R(c32, sample(c32, [](double t) { return std::cos(t); }), 2.0), c32,
                [](double t) { return 0.5 * std::cos(t); }) < 1e-14);
  CHECK(max_err(smooth_R(c32, sample(c32, [](double t) { return std::sin(2 * t); }), 3.0), c32,
                [](double t) { return std::pow(5.0, -1.5) * std::sin(2 * t); }) < 1e-14);
  CHECK(smoothing_symbol(2, 3.0) == Catch::Approx(0.0894427191).epsilon(1e-9));

  // self-adjoint, positive, contractive
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-1, 1);
  std::vector<double> g(32), h(32);
  for (int i = 0; i < 32; ++i) g[i] = uni(rng), h[i] = uni(rng);
  const auto rg = smooth_R(c32, g, 2.5), rh = smooth_R(c32, h, 2.5);
  double gh = 0, hg = 0, gg = 0, rgrg = 0, grg = 0;
  for (int i = 0; i < 32; ++i) {
    gh += rg[i] * h[i];
    hg += g[i] * rh[i];
    gg += g[i] * g[i];
    rgrg += rg[i] * rg[i];
    grg += g[i] * rg[i];
  }
  CHECK(gh == Catch::Approx(hg).margin(1e-13));
  CHECK(grg > 0.0);
  CHECK(rgrg <= gg);
}

TEST_CASE("Maier-Saupe potential against direct quadrature") {
  const double b = 0.7;
  const auto k = InteractionKernel::maier_saupe(b);
  CHECK(k.lipschitz() == Catch::Approx(2 * b));
  CHECK(k(0.3, 1.1) == k(1.1, 0.3));

  auto fcont = [](double t) { return (1 + 0.4 * std::cos(2 * t - 0.3) + 0.2 * std::sin(t) + 0.1 * std::cos(3 * t)) / (2 * oracle::pi); };
  const auto pot = potential_U(c32, sample(c32, fcont), k);
  for (int i = 0; i < 32; i += 5) {
    const double th = c32.theta(i);
    const double ref = oracle::midpoint([&](double s) { return k(th, s) * fcont(s); }, 0, 2 * oracle::pi, 4000);
    const double dref = oracle::midpoint([&](double s) { return k.dtheta(th, s) * fcont(s); }, 0, 2 * oracle::pi, 4000);
    CHECK(pot.value[i] == Catch::Approx(ref).margin(1e-13));
    CHECK(pot.dtheta[i] == Catch::Approx(dref).margin(1e-13));
  }

  // closed forms
  const auto uni = potential_U(c32, std::vector<double>(32, 1 / (2 * oracle::pi)), k);
  for (double v : uni.value) CHECK(std::abs(v) < 1e-15);
  const auto p2 = potential_U(c32, sample(c32, [](double t) { return (1 + std::cos(2 * t)) / (2 * oracle::pi); }), k);
  CHECK(max_err(p2.value, c32, [b](double t) { return -0.5 * b * std::cos(2 * t); }) < 1e-14);
  const auto p0 = potential_U(c32, sample(c32, fcont), InteractionKernel::maier_saupe(0.0));
  for (double v : p0.value) CHECK(v == 0.0);
  CHECK_THROWS_AS(InteractionKernel::maier_saupe(-1.0), std::invalid_argument);
}

TEST_CASE("potential is self-adjoint and band-limited") {
  const auto k = InteractionKernel::maier_saupe(0.5);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(0, 1);
  std::vector<double> f(32), h(32);
  for (int i = 0; i < 32; ++i) f[i] = uni(rng), h[i] = uni(rng);
  const auto uf = potential_U(c32, f, k).value, uh = potential_U(c32, h, k).value;
  double a = 0, b = 0;
  for (int i = 0; i < 32; ++i) a += uf[i] * h[i], b += f[i] * uh[i];
  CHECK(a == Catch::Approx(b).margin(1e-12));
  // modes other than |n| = 2 vanish: remove them by hand and compare
  double c2 = 0, s2 = 0;
  for (int i = 0; i < 32; ++i) c2 += uf[i] * std::cos(2 * c32.theta(i)), s2 += uf[i] * std::sin(2 * c32.theta(i));
  c2 *= 2.0 / 32, s2 *= 2.0 / 32;
  CHECK(max_err(uf, c32, [&](double t) { return c2 * std::cos(2 * t) + s2 * std::sin(2 * t); }) < 1e-14);
}

TEST_CASE("rod coefficients") {
  const auto rc = rod_coefficients(c32);
  for (int b = 0; b < 32; ++b) {
    const double t = c32.theta(b);
    const double m[2] = {std::cos(t), std::sin(t)}, mp[2] = {-std::sin(t), std::cos(t)};
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) CHECK(rc.at(j, i)[b] == Catch::Approx(m[j] * mp[i]).margin(1e-15));
    CHECK(std::abs(rc.at(0, 0)[b] + rc.at(1, 1)[b]) < 1e-15);
    // derivative by a centered difference of the analytic product
    const double h = 1e-5;
    auto c12 = [](double s) { return std::cos(s) * std::cos(s); };
    CHECK(rc.dtheta_at(0, 1)[b] == Catch::Approx((c12(t + h) - c12(t - h)) / (2 * h)).margin(1e-9));
  }
  CHECK(rc.at(0, 1)[0] == 1.0);
  CHECK(rc.at(0, 0)[0] == 0.0);
  CHECK(rc.at(1, 0)[0] == 0.0);
  // theta = pi/4 is node 4 of 32
  CHECK(rc.dtheta_at(0, 1)[4] == Catch::Approx(-1.0).epsilon(1e-14));
  CHECK(rc.sup_c() <= 1.0);
  CHECK(rc.sup_dtheta_c() <= 1.0 + 1e-15);
}
