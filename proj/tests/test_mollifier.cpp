#include "catch_amalgamated.hpp"

#include "nsfp/mollifier.hpp"
#include "oracle.hpp"

using namespace nsfp;

namespace {

const GridSpec2D g32{32};

// int phi_delta(y) g(y) dy by a tensor midpoint rule on [-delta, delta]^2.
double kernel_integral(double delta, const std::function<double(double, double)>& g, int n = 800) {
  const double h = 2 * delta / n;
  double mass = 0.0, acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double y1 = -delta + (i + 0.5) * h, y2 = -delta + (j + 0.5) * h;
      const double w = bump_profile(std::hypot(y1, y2) / delta);
      mass += w;
      acc += w * g(y1, y2);
    }
  return acc / mass;
}

}  // namespace

TEST_CASE("symbol matches a Cartesian quadrature of the kernel") {
  for (double delta : {0.05, 0.2, 0.5, 1.0}) {
    const Mollifier J(g32, delta);
    for (auto [k1, k2] : {std::pair{1, 0}, {3, 4}, {7, -2}, {16, 16}}) {
      const double ref = kernel_integral(delta, [=](double y1, double y2) { return std::cos(k1 * y1 + k2 * y2); });
      CHECK(J.symbol(Mode{k1, k2, k1, k2}) == Catch::Approx(ref).margin(1e-9));
    }
  }
}

TEST_CASE("mollified field equals a direct convolution") {
  auto f = [](double x, double y) { return std::exp(std::sin(x)) * std::cos(y) + std::sin(2 * x + 3 * y); };
  const double delta = 0.4;
  const auto jf = mollify(ScalarField2D::from_function(g32, f), delta);
  for (auto [i, j] : {std::pair{0, 0}, {5, 17}, {31, 9}}) {
    const double x = g32.coordinate(i), y = g32.coordinate(j);
    const double ref = kernel_integral(delta, [&](double y1, double y2) { return f(x - y1, y - y2); });
    CHECK(jf(i, j) == Catch::Approx(ref).margin(1e-9));
  }
}

TEST_CASE("identity at delta = 0 and bounded symbol") {
  const auto f = ScalarField2D::from_function(g32, [](double x, double y) { return std::sin(5 * x) * std::cos(y); });
  CHECK(oracle::max_diff(mollify(f, 0.0), f) == 0.0);
  const Mollifier J(g32, 0.3);
  CHECK(J.symbol(Mode{0, 0, 0, 0}) == 1.0);
  for (int a = 0; a < g32.nx; ++a)
    for (int b = 0; b < g32.half(); ++b) CHECK(std::abs(J.symbol(mode_at(g32, a, b))) <= 1.0);
  // smoothing never raises the maximum of a nonnegative-kernel convolution
  CHECK(mollify(f, 0.3).max_abs() <= f.max_abs() + 1e-12);
}

TEST_CASE("mollifier converges to the identity") {
  const auto f = ScalarField2D::from_function(g32, [](double x, double y) { return std::sin(3 * x - y); });
  double prev = 1e300;
  for (double delta : {0.4, 0.2, 0.1, 0.05}) {
    const double err = oracle::max_diff(mollify(f, delta), f);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-2);
}

TEST_CASE("delta range is enforced") {
  CHECK_THROWS_AS(Mollifier(g32, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(Mollifier(g32, 3.5), std::invalid_argument);
}
