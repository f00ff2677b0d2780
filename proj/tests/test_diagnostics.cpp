#include "catch_amalgamated.hpp"

#include <random>

#include "nsfp/diagnostics.hpp"
#include "nsfp/integrator.hpp"
#include "nsfp/initial_data.hpp"
#include "oracle.hpp"

using namespace nsfp;
using oracle::pi;

namespace {

const GridSpec2D g16{16};
const CircleGrid c16{16};

// ||sin x1||_{L^q(T^2)}
double sin_lq(double q) {
  const double one_d = 2 * std::sqrt(pi) * std::exp(std::lgamma((q + 1) / 2) - std::lgamma(q / 2 + 1));
  return std::pow(2 * pi * one_d, 1 / q);
}

DistributionField cos_x_cos_theta(double eps) {
  return DistributionField::from_function(g16, c16, [eps](double x, double, double t) {
    return (1 + eps * std::cos(x) * std::cos(t)) / (2 * pi);
  });
}

}  // namespace

TEST_CASE("N closed form") {
  const double eps = 0.3;
  for (double alpha : {2.0, 3.0}) {
    const auto n = capital_N(cos_x_cos_theta(eps), alpha);
    CHECK(oracle::rel_error(n, [&](double x, double) {
            return std::pow(2.0, -alpha / 2) * eps * std::abs(std::sin(x)) / (2 * std::sqrt(pi));
          }) < 1e-8);
  }
  CHECK(capital_N(DistributionField(g16, c16, 1 / (2 * pi)), 2.0).max_abs() == 0.0);
  CHECK(sin_lq(2) == Catch::Approx(std::sqrt(2.0) * pi));
}

TEST_CASE("vorticity norm") {
  CHECK(vorticity_lq({ScalarField2D(g16), ScalarField2D(g16)}, 4) == 0.0);
  CHECK(vorticity_lq(taylor_green(g16, 1.0), 2) == Catch::Approx(2 * pi).epsilon(1e-13));
}

TEST_CASE("backward derivative is exact on polynomials") {
  const std::vector<double> t{0.1, 0.25, 0.3, 0.42};
  std::vector<double> y;
  for (double s : t) y.push_back(2 - s + 3 * s * s - s * s * s);
  const double tn = t.back();
  CHECK(backward_derivative(t, y) == Catch::Approx(-1 + 6 * tn - 3 * tn * tn).epsilon(1e-12));
  CHECK(backward_derivative(std::span(t).first(2), std::span(y).first(2)) ==
        Catch::Approx((y[1] - y[0]) / (t[1] - t[0])).margin(1e-13));
  CHECK_THROWS_AS(backward_derivative(std::span(t).first(1), std::span(y).first(1)), std::invalid_argument);
}

TEST_CASE("balance residual on synthetic records") {
  // E(t) = e^{-t}, nu |grad u|^2 + kappa D = e^{-t}: residual vanishes as dt -> 0 at second order
  auto residual_at = [](double dt) {
    std::vector<DiagnosticsRecord> rs;
    for (int i = 0; i < 3; ++i) {
      DiagnosticsRecord r;
      r.t = i * dt;
      r.kinetic_energy = std::exp(-r.t);
      r.grad_u_l2sq = std::exp(-r.t) / 0.1;
      rs.push_back(r);
    }
    return balance_residual(rs, 0.1, 0.1, 3);
  };
  const double r1 = residual_at(0.02), r2 = residual_at(0.01);
  CHECK(std::log2(std::abs(r1 / r2)) == Catch::Approx(2.0).margin(0.05));
}

TEST_CASE("time accumulators") {
  const std::vector<double> t{0, 0.5, 1.0};
  const std::vector<double> v{1, 1, 1};
  const auto y = accumulate_Y(t, v, 5.0);
  CHECK(y[0] == 0.0);
  CHECK(y[2] == Catch::Approx(1.0).epsilon(1e-15));
  CHECK(accumulate_Z(t, v, 5.0)[1] == Catch::Approx(std::pow(0.5, 0.2)).epsilon(1e-15));
}

TEST_CASE("engine Y and Z against dense-time oracles") {
  ModelParams p;
  const Model m(g16, c16, p);
  const MonitorConfig mc{};  // p = 5, q = 4, alpha = 2
  DiagnosticsEngine eng(m, mc);
  const double eps = 0.3, T = 0.25;
  const int n = 1000;
  DiagnosticsRecord last;
  std::vector<double> ys, zs;
  for (int i = 0; i <= n; ++i) {
    const double t = T * i / n;
    State s{t, taylor_green(g16, std::exp(-t)),
            DistributionField::from_function(g16, c16, [&](double x, double, double th) {
              return (1 + eps * std::exp(-t) * std::cos(x) * std::cos(th)) / (2 * pi);
            })};
    last = eng.sample(s);
    ys.push_back(last.Y_pq);
    zs.push_back(last.Z_pq);
  }
  for (std::size_t i = 1; i < ys.size(); ++i) {
    CHECK(ys[i] >= ys[i - 1]);
    CHECK(zs[i] >= zs[i - 1]);
  }
  // Z: ||N||_q = e^{-t} N0 with N0 = 2^{-1} eps ||sin||_q / (2 sqrt(pi))
  const double n0 = 0.5 * eps * sin_lq(4) / (2 * std::sqrt(pi));
  const double z_ref = n0 * std::pow((1 - std::exp(-5 * T)) / 5, 0.2);
  CHECK(last.Z_pq == Catch::Approx(z_ref).epsilon(1e-6));

  // Y: the rod coefficients only see circle modes 0 and 2 and U vanishes, so
  // sigma = 0 for this f and tau = -e^{-2t} u u with u the unit Taylor-Green flow.
  auto grad_tau_sq = [](double x, double y) {
    const double u1 = std::sin(x) * std::cos(y), u2 = -std::cos(x) * std::sin(y);
    const double du1[2] = {std::cos(x) * std::cos(y), -std::sin(x) * std::sin(y)};
    const double du2[2] = {std::sin(x) * std::sin(y), -std::cos(x) * std::cos(y)};
    const double u[2] = {u1, u2};
    const double* du[2] = {du1, du2};
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          const double d = du[i][k] * u[j] + u[i] * du[j][k];
          s += d * d;
        }
    return s;
  };
  const int fine = 400;
  const double h = 2 * pi / fine;
  double acc = 0.0;
  for (int i = 0; i < fine; ++i)
    for (int j = 0; j < fine; ++j) acc += std::pow(grad_tau_sq(i * h, j * h), 2.0);  // |.|^4
  const double g0 = std::pow(acc * h * h, 0.25);
  const double y_ref = g0 * std::pow((1 - std::exp(-10 * T)) / 10, 0.2);
  CHECK(last.Y_pq == Catch::Approx(y_ref).epsilon(1e-6));
  CHECK(std::isfinite(last.log_bound_ratio));
  CHECK(eng.history().max_yz_ratio > 0.0);
}

TEST_CASE("invariants of standard data") {
  const State s = standard_initial_data(GridSpec2D{32}, CircleGrid{32}, InitialDataSpec{});
  const auto inv = invariant_report(s);
  CHECK(inv.rho_dev < 1e-12);
  CHECK(inv.min_f > 0.0);
  CHECK(inv.div_u_max < 1e-12);
  CHECK_FALSE(inv.positivity_flag);
  const auto uni = invariant_report(State{0.0, {ScalarField2D(g16), ScalarField2D(g16)}, DistributionField(g16, c16, 1.0)});
  CHECK(uni.total_mass == Catch::Approx(2 * pi * 4 * pi * pi).epsilon(1e-14));
}

TEST_CASE("stress gradient is bounded by C N pointwise") {
  for (double b : {0.0, 0.5, 2.0})
    for (std::uint64_t seed : {1, 2}) {
      ModelParams p;
      p.kernel = InteractionKernel::maier_saupe(b);
      const Model m(g16, c16, p);
      const State s = standard_initial_data(g16, c16, InitialDataSpec{1.0, 0.1, 0.9, seed});
      const auto chk = stress_gradient_check(m, s.f);
      CHECK(chk.max_lhs > 0.0);
      CHECK(chk.max_excess <= 1e-12);
    }
}

TEST_CASE("record round trip through values") {
  DiagnosticsRecord r;
  r.t = 0.5;
  r.Y_pq = 3.25;
  r.positivity_flag = true;
  r.grad_u_l2sq = 7;
  const auto v = r.values();
  const auto back = DiagnosticsRecord::from_values(v);
  CHECK(back.values() == v);
  CHECK(back.positivity_flag);
  CHECK(DiagnosticsRecord::field_names.size() == v.size());
}

TEST_CASE("engine restarted from a history copy reproduces the next record") {
  const Model m(g16, c16, ModelParams{});
  State s = standard_initial_data(g16, c16, InitialDataSpec{});
  DiagnosticsEngine eng(m, MonitorConfig{});
  for (int i = 0; i < 4; ++i) {
    s = imex_step(m, s, 1e-2, Scheme::if_rk2);
    eng.sample(s);
  }
  s = imex_step(m, s, 1e-2, Scheme::if_rk2);
  DiagnosticsEngine copy(m, MonitorConfig{}, eng.history());
  CHECK(copy.sample(s).values() == eng.sample(s).values());
  CHECK(copy.history() == eng.history());
}
