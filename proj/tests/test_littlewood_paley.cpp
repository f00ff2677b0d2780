#include "catch_amalgamated.hpp"

#include "nsfp/littlewood_paley.hpp"
#include "oracle.hpp"

using namespace nsfp;

namespace {
const GridSpec2D g32{32};

ScalarField2D sample_field() {
  return ScalarField2D::from_function(g32, [](double x, double y) {
    return std::exp(std::sin(x) * std::cos(2 * y)) + 0.2 * std::cos(9 * x - 4 * y);
  });
}
}  // namespace

TEST_CASE("shell index boundaries") {
  CHECK(shell_index(0) == -1);
  CHECK(shell_index(1) == 0);
  CHECK(shell_index(2) == 1);
  CHECK(shell_index(4) == 1);
  CHECK(shell_index(5) == 2);
  CHECK(shell_index(16) == 2);
  CHECK(shell_index(17) == 3);
  CHECK(shell_index(1024) == 5);
  CHECK(max_shell(g32) == 5);
  CHECK(max_shell(GridSpec2D{64}) == 6);
}

TEST_CASE("blocks plus mean reconstruct the field") {
  const auto f = sample_field();
  ScalarField2D sum(g32, f.mean());
  for (const auto& b : lp_blocks(f)) sum += b;
  CHECK(oracle::max_diff(sum, f) < 1e-13);
}

TEST_CASE("blocks are orthogonal and B^0_{2,2} is the L2 norm of f - mean") {
  const auto f = sample_field();
  const auto blocks = lp_blocks(f);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j) CHECK(std::abs(inner(blocks[i], blocks[j])) < 1e-12);
  const auto centered = f - ScalarField2D(g32, f.mean());
  CHECK(besov_norm(f, 0.0, 2.0, 2.0) == Catch::Approx(lq_norm(centered, 2.0)).epsilon(1e-13));
}

TEST_CASE("single mode sits in one block") {
  // |k| = 5 lies in shell 3 (16 < 25 <= 64)
  const auto f = ScalarField2D::from_function(g32, [](double x, double y) { return std::sin(3 * x + 4 * y); });
  const auto norms = block_lp_norms(f, 2.0);
  for (std::size_t j = 0; j < norms.size(); ++j) {
    if (j == 3) CHECK(norms[j] == Catch::Approx(std::sqrt(2.0) * oracle::pi).epsilon(1e-13));
    else CHECK(norms[j] < 1e-13);
  }
  // B^s_{p,q} of a single-block function is 2^{3s} ||f||_p for every q
  const double l4 = lq_norm(f, 4.0);
  CHECK(besov_norm(f, 0.5, 4.0, 1.0) == Catch::Approx(std::pow(2.0, 1.5) * l4).epsilon(1e-13));
  CHECK(besov_norm(f, 0.5, 4.0, std::numeric_limits<double>::infinity()) ==
        Catch::Approx(std::pow(2.0, 1.5) * l4).epsilon(1e-13));
}

TEST_CASE("vector Besov norm uses the pointwise length") {
  // (cos x, sin x) has constant length 1 and sits in block 0
  const std::vector<ScalarField2D> v{ScalarField2D::from_function(g32, [](double x, double) { return std::cos(x); }),
                                     ScalarField2D::from_function(g32, [](double x, double) { return std::sin(x); })};
  CHECK(besov_norm(v, 0.0, 4.0, 2.0) == Catch::Approx(std::pow(4 * oracle::pi * oracle::pi, 0.25)).epsilon(1e-13));
}

TEST_CASE("invalid block and exponent arguments") {
  const auto f = sample_field();
  CHECK_THROWS_AS(lp_block(f, -1), std::invalid_argument);
  CHECK_THROWS_AS(besov_norm(f, 0.0, 0.5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(besov_norm(f, 0.0, 2.0, 0.5), std::invalid_argument);
}
