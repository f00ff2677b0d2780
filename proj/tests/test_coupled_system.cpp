#include "catch_amalgamated.hpp"

#include <random>

#include "nsfp/initial_data.hpp"
#include "nsfp/model.hpp"
#include "oracle.hpp"

using namespace nsfp;
using oracle::pi;

namespace {

const GridSpec2D g16{16};
const CircleGrid c16{16};

ModelParams params(double b, double delta = 0.0) {
  ModelParams p;
  p.kernel = InteractionKernel::maier_saupe(b);
  p.delta = delta;
  return p;
}

DistributionField theta_only(const GridSpec2D& g, const CircleGrid& c, std::function<double(double)> fn) {
  return DistributionField::from_function(g, c, [&](double, double, double t) { return fn(t); });
}

VelocityField taylor_green16() { return taylor_green(g16, 1.0); }

// Random positive f with unit orientation mass at every x.
DistributionField random_unit_mass(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1, 1);
  double a[6];
  for (double& v : a) v = uni(rng);
  return DistributionField::from_function(g16, c16, [&](double x, double y, double t) {
    const double s = 0.15 * (a[0] * std::cos(x) * std::cos(2 * t) + a[1] * std::sin(y) * std::sin(2 * t) +
                             a[2] * std::cos(x + y) * std::cos(t) + a[3] * std::sin(t - x) +
                             a[4] * std::cos(3 * t) * std::sin(2 * y) + a[5] * std::sin(4 * t));
    return (1 + s) / (2 * pi);
  });
}

}  // namespace

TEST_CASE("W for zero, shear and rigid rotation") {
  const auto rc = rod_coefficients(c16);
  const double zero[2][2] = {{0, 0}, {0, 0}};
  for (double w : compute_W(zero, rc)) CHECK(w == 0.0);
  const double gamma = 1.7;
  const double shear[2][2] = {{0, gamma}, {0, 0}};  // du1/dx2
  const auto ws = compute_W(shear, rc);
  for (int b = 0; b < 16; ++b)
    CHECK(ws[b] == Catch::Approx(-gamma * std::pow(std::sin(c16.theta(b)), 2)).margin(1e-15));
  const double om = 0.8;
  const double rot[2][2] = {{0, -om}, {om, 0}};
  for (double w : compute_W(rot, rc)) CHECK(w == Catch::Approx(om).epsilon(1e-15));
}

TEST_CASE("stress closed forms") {
  const auto rc = rod_coefficients(c16);
  const auto k1 = InteractionKernel::maier_saupe(1.0);
  const auto sig = compute_stress(theta_only(g16, c16, [](double t) { return (1 + 0.1 * std::sin(2 * t)) / (2 * pi); }), k1, rc);
  CHECK(sig(0, 1)[0] == Catch::Approx(0.025).margin(1e-12));
  CHECK(sig(1, 0)[0] == Catch::Approx(0.025).margin(1e-12));

  // general eps, b: eps (1/2 - b/4)
  const double eps = 0.3, b = 0.4;
  const auto s2 = compute_stress(theta_only(g16, c16, [&](double t) { return (1 + eps * std::sin(2 * t)) / (2 * pi); }),
                                 InteractionKernel::maier_saupe(b), rc);
  CHECK(s2(0, 1)[7] == Catch::Approx(eps * (0.5 - b / 4)).margin(1e-13));

  const auto su = compute_stress(DistributionField(g16, c16, 1 / (2 * pi)), k1, rc);
  CHECK(su.max_abs() < 1e-15);
}

TEST_CASE("stress with b = 0 is the coefficient-derivative moment") {
  const auto rc = rod_coefficients(c16);
  auto fc = [](double t) { return (1 + 0.3 * std::cos(t) + 0.2 * std::sin(2 * t) - 0.1 * std::cos(2 * t)) / (2 * pi); };
  const auto sig = compute_stress(theta_only(g16, c16, fc), InteractionKernel::maier_saupe(0.0), rc);
  // -int dc_ij f dtheta with dc from the analytic rod model
  auto dc = [](int i, int j, double t) {
    const double m[2] = {std::cos(t), std::sin(t)}, mp[2] = {-std::sin(t), std::cos(t)};
    const double dm[2] = {-std::sin(t), std::cos(t)}, dmp[2] = {-std::cos(t), -std::sin(t)};
    return dm[i] * mp[j] + m[i] * dmp[j];
  };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double ref = -oracle::midpoint([&](double t) { return dc(i, j, t) * fc(t); }, 0, 2 * pi, 4000);
      CHECK(sig(i, j)[3] == Catch::Approx(ref).margin(1e-13));
    }
}

TEST_CASE("stress is symmetric and obeys the unit-mass bound") {
  const double b = 0.5;
  const auto rc = rod_coefficients(c16);
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto f = random_unit_mass(seed);
    const auto sig = compute_stress(f, InteractionKernel::maier_saupe(b), rc);
    CHECK(oracle::max_diff(sig(0, 1), sig(1, 0)) < 1e-14);
    CHECK(sig.max_abs() <= 1 + 2 * b + 1e-12);
  }
}

TEST_CASE("Fokker-Planck right-hand side") {
  const Model m(g16, c16, params(0.5));
  State s{0.0, {ScalarField2D(g16), ScalarField2D(g16)}, DistributionField(g16, c16, 1 / (2 * pi))};
  CHECK(m.fp_rhs(s).max_abs() < 1e-15);

  // pure circle heat decay
  const Model m0(g16, c16, params(0.0));
  const double eps = 0.2;
  s.f = theta_only(g16, c16, [&](double t) { return (1 + eps * std::cos(t)) / (2 * pi); });
  const auto r = m0.fp_rhs(s);
  for (int b = 0; b < 16; ++b)
    CHECK(r(3, 5, b) == Catch::Approx(-0.1 * eps * std::cos(c16.theta(b)) / (2 * pi)).margin(1e-15));

  // conservative for a generic state, with and without mollification
  for (double delta : {0.0, 0.3}) {
    const Model md(g16, c16, params(0.5, delta));
    State g{0.0, taylor_green16(), random_unit_mass(5)};
    g.u.u1 += ScalarField2D::from_function(g16, [](double, double y) { return 0.3 * std::sin(2 * y); });
    double total = 0.0;
    for (double v : md.fp_rhs(g).data()) total += v;
    CHECK(std::abs(total * c16.weight() * g16.cell_area()) < 1e-12);
  }
}

TEST_CASE("momentum right-hand side") {
  const Model m(g16, c16, params(0.5));
  State s{0.0, {ScalarField2D(g16), ScalarField2D(g16)}, DistributionField(g16, c16, 1 / (2 * pi))};
  const auto r0 = m.ns_rhs(s);
  CHECK(std::max(r0.u1.max_abs(), r0.u2.max_abs()) < 1e-15);

  // Taylor-Green: the nonlinear term is a gradient, so rhs = nu Lap u = -2 nu u
  s.u = taylor_green16();
  const auto r = m.ns_rhs(s);
  CHECK(oracle::max_diff(r.u1, -0.2 * s.u.u1) < 1e-13);
  CHECK(oracle::max_diff(r.u2, -0.2 * s.u.u2) < 1e-13);

  // gradients added to the force are annihilated; the output is solenoidal
  s.f = random_unit_mass(8);
  const auto force = m.stress_forcing(s.f);
  const auto phi = ScalarField2D::from_function(g16, [](double x, double y) { return std::sin(2 * x - y) + std::cos(3 * y); });
  const VelocityField pushed{force.u1 + derivative(phi, 1), force.u2 + derivative(phi, 2)};
  const auto a = m.ns_explicit(s.u, force), b = m.ns_explicit(s.u, pushed);
  CHECK(oracle::max_diff(a.u1, b.u1) < 1e-12);
  CHECK(oracle::max_diff(a.u2, b.u2) < 1e-12);
  CHECK(divergence(m.ns_rhs(s)).max_abs() < 1e-12);
}

TEST_CASE("pressure formulas") {
  StressField tau(g16);
  CHECK(pressure_poisson(tau).max_abs() == 0.0);
  tau(0, 0) = ScalarField2D::from_function(g16, [](double x, double y) { return std::sin(x + y); });
  // Lap p = d_i d_j tau_ij = -2 sin(x + y) gives p = sin(x + y) / 2
  CHECK(oracle::rel_error(pressure_poisson(tau), [](double x, double y) { return 0.5 * std::sin(x + y); }) < 1e-13);

  // both formulas on a random band-limited tensor; div tau - grad p is solenoidal
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> uni(-1, 1);
  for (auto& e : tau.entries) {
    const double a = uni(rng), b = uni(rng), c = uni(rng);
    e = ScalarField2D::from_function(g16, [=](double x, double y) { return a * std::cos(x - 2 * y) + b * std::sin(3 * x) + c * std::cos(y + x); });
  }
  const auto p1 = pressure_poisson(tau), p2 = pressure_riesz(tau);
  CHECK(oracle::max_diff(p1, p2) < 1e-12);
  CHECK(std::abs(p1.mean()) < 1e-15);
  const auto dt = row_divergence(tau);
  const VelocityField rest{dt.u1 - derivative(p1, 1), dt.u2 - derivative(p1, 2)};
  CHECK(divergence(rest).max_abs() < 1e-12);
}

TEST_CASE("free energy") {
  const auto k = InteractionKernel::maier_saupe(0.9);
  const auto fe = free_energy(DistributionField(g16, c16, 1 / (2 * pi)), k);
  CHECK(fe.density[0] == Catch::Approx(-std::log(2 * pi)).epsilon(1e-14));
  CHECK(fe.total == Catch::Approx(-std::log(2 * pi) * 4 * pi * pi).epsilon(1e-14));
  CHECK_FALSE(fe.positivity_violated);
  // perturbations raise the entropy part when b = 0
  const auto k0 = InteractionKernel::maier_saupe(0.0);
  const auto fp = free_energy(theta_only(g16, c16, [](double t) { return (1 + 0.3 * std::cos(2 * t)) / (2 * pi); }), k0);
  CHECK(fp.density[0] > -std::log(2 * pi));
  // a negative value raises the flag instead of producing NaN
  DistributionField neg(g16, c16, 1 / (2 * pi));
  neg(0, 0, 0) = -1e-3;
  const auto fn = free_energy(neg, k0);
  CHECK(fn.positivity_violated);
  CHECK(std::isfinite(fn.total));
}

TEST_CASE("dissipation") {
  const auto k0 = InteractionKernel::maier_saupe(0.0);
  CHECK(dissipation(DistributionField(g16, c16, 1 / (2 * pi)), k0).total == 0.0);

  // equilibrium f = exp(-U0 cos 2t)/Z with b = U0 I0(U0)/I1(U0)
  const CircleGrid c64{64};
  const double u0 = 0.6;
  const double b = u0 * std::cyl_bessel_i(0.0, u0) / std::cyl_bessel_i(1.0, u0);
  const double z = 2 * pi * std::cyl_bessel_i(0.0, u0);
  const auto feq = theta_only(g16, c64, [&](double t) { return std::exp(-u0 * std::cos(2 * t)) / z; });
  CHECK(dissipation(feq, InteractionKernel::maier_saupe(b)).density.max_abs() < 1e-12);

  // b = 0, f = (1 + eps cos t)/(2 pi): int (eps sin t)^2 / (1 + eps cos t) dt / (2 pi)
  const double eps = 0.1;
  const auto d = dissipation(theta_only(g16, c64, [&](double t) { return (1 + eps * std::cos(t)) / (2 * pi); }), k0);
  const double ref = oracle::midpoint([&](double t) {
    const double s = eps * std::sin(t);
    return s * s / (1 + eps * std::cos(t)) / (2 * pi);
  }, 0, 2 * pi, 4000);
  CHECK(d.density[0] == Catch::Approx(ref).epsilon(1e-12));
  CHECK(d.density[0] > 0.0);
}

TEST_CASE("kinetic energy") {
  CHECK(kinetic_energy({ScalarField2D(g16), ScalarField2D(g16)}) == 0.0);
  const VelocityField shear{ScalarField2D::from_function(g16, [](double, double y) { return std::sin(y); }), ScalarField2D(g16)};
  CHECK(kinetic_energy(shear) == Catch::Approx(pi * pi).epsilon(1e-14));
  CHECK(kinetic_energy(taylor_green16()) == Catch::Approx(pi * pi).epsilon(1e-14));
}

TEST_CASE("semi-discrete energy identity") {
  // d/dt (KE + int E) = -nu ||grad u||^2 - kappa int D at delta = 0
  CircleGrid c32{32};
  GridSpec2D g32{32};
  const Model m(g32, c32, params(0.5));
  const State s = standard_initial_data(g32, c32, InitialDataSpec{});
  double gu = 0.0;
  for (const auto& e : velocity_gradient(s.u).entries) gu += inner(e, e);
  const double diss = 0.1 * gu + 0.1 * dissipation(s.f, m.params().kernel).total;
  CHECK(std::abs(m.energy_rate(s) + diss) < 1e-6 * diss);
}

TEST_CASE("parameter validation") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());
  p.q = 2;
  CHECK_THROWS_WITH(p.validate(), Catch::Matchers::ContainsSubstring("q >= 4"));
  p.q = 4;
  p.p = 3;
  CHECK_THROWS_WITH(p.validate(), Catch::Matchers::ContainsSubstring("2q/(q-2)"));
  p.p = 5;
  p.alpha = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.alpha = 2;
  p.nu = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
