#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qconv/bounds.hpp"
#include "qconv/exponent.hpp"

using namespace qconv;
using Catch::Approx;

namespace {

BipartiteOperator product_state(std::uint64_t seed) {
  const DensityOperator rho_b = random_density(2, seed);
  return BipartiteOperator(
      2, 2,
      HermitianOperator(kron(0.5 * identity(2), rho_b.matrix()),
                        detail::trusted));
}

}  // namespace

TEST_CASE("SParam range and bijection with the Renyi order", "[exponent]") {
  REQUIRE_THROWS_AS(SParam(-0.6), BadParameterError);
  REQUIRE_THROWS_AS(SParam(0.1), BadParameterError);
  REQUIRE(SParam(-0.5).order().lambda() == Approx(2.0));
  REQUIRE(SParam::from_order(RenyiOrder(2.0)).s() == Approx(-0.5));
  REQUIRE_THROWS_AS(SParam(0.0).order(), BadParameterError);
}

TEST_CASE("k_lambda closed form on reference states", "[exponent]") {
  REQUIRE(k_lambda(maximally_entangled(2), RenyiOrder(2.0)) ==
          Approx(std::log(2.0)).margin(1e-12));

  const BipartiteOperator prod = product_state(1);
  for (double l : {1.25, 1.5, 2.0}) {
    REQUIRE(k_lambda(prod, RenyiOrder(l)) ==
            Approx(-std::log(2.0)).margin(1e-10));
  }

  // Infimum property: never above the value at the feasible point Tr_A rho.
  for (int t = 0; t < 5; ++t) {
    const BipartiteOperator rho(2, 3, random_density(6, 10 + t));
    const RenyiOrder order(1.5);
    const PsdOperator feasible(
        kron(identity(2), partial_trace(rho, Subsystem::A).matrix()),
        detail::trusted);
    const double at_marginal =
        renyi_divergence(PsdOperator(rho.op()), feasible, order);
    REQUIRE(k_lambda(rho, order) <= at_marginal + 1e-12);
  }
}

TEST_CASE("k_lambda requires a density operator", "[exponent]") {
  const BipartiteOperator scaled(
      2, 2,
      HermitianOperator(2.0 * maximally_entangled(2).matrix(),
                        detail::trusted));
  REQUIRE_THROWS_AS(k_lambda(scaled, RenyiOrder(2.0)), NotDensityError);
}

TEST_CASE("sibson_state is the normalized minimizer", "[exponent]") {
  const Matrix s1 = sibson_state(maximally_entangled(2), RenyiOrder(2.0)).matrix();
  REQUIRE((s1 - 0.5 * identity(2)).cwiseAbs().maxCoeff() <= 1e-12);

  const DensityOperator rho_b = random_density(3, 2);
  const BipartiteOperator prod(
      2, 3,
      HermitianOperator(kron(0.5 * identity(2), rho_b.matrix()),
                        detail::trusted));
  const Matrix s2 = sibson_state(prod, RenyiOrder(2.0)).matrix();
  REQUIRE((s2 - rho_b.matrix()).cwiseAbs().maxCoeff() <= 1e-10);
  REQUIRE(s2.trace().real() == Approx(1.0).margin(1e-12));
}

TEST_CASE("numeric oracle matches the closed form", "[exponent]") {
  OptimizerOptions opts;
  opts.seed = 3;
  REQUIRE(k_lambda_numeric(maximally_entangled(2), RenyiOrder(2.0), opts) ==
          Approx(std::log(2.0)).margin(1e-6));
  REQUIRE(k_lambda_numeric(product_state(4), RenyiOrder(1.5), opts) ==
          Approx(-std::log(2.0)).margin(1e-6));

  const BipartiteOperator big(2, 5, random_density(10, 5));
  REQUIRE_THROWS_AS(k_lambda_numeric(big, RenyiOrder(2.0), opts),
                    BadDimensionsError);

  OptimizerOptions strangled;
  strangled.seed = 3;
  strangled.starts = 1;
  strangled.max_iters = 1;
  REQUIRE_THROWS_AS(
      k_lambda_numeric(maximally_entangled(2), RenyiOrder(2.0), strangled),
      NotConvergedError);
}

TEST_CASE("g_function values and the E0 relation", "[exponent]") {
  const BipartiteOperator rho(2, 3, random_density(6, 6));
  REQUIRE(g_function(rho, SParam(0.0)) == Approx(0.0).margin(1e-12));

  REQUIRE(g_function(maximally_entangled(2), SParam(-0.5)) ==
          Approx(-0.5 * std::log(2.0)).margin(1e-12));
  REQUIRE(g_function(product_state(7), SParam(-0.5)) ==
          Approx(0.5 * std::log(2.0)).margin(1e-10));

  for (double sv : {-0.5, -0.25, -0.1}) {
    const SParam s(sv);
    REQUIRE(g_function(rho, s) ==
            Approx(sv * k_lambda(rho, s.order())).margin(1e-10));
  }
}

TEST_CASE("g_derivative at the origin equals coherent information",
          "[exponent]") {
  REQUIRE(g_derivative(maximally_entangled(2), SParam(0.0),
                       DerivativeMethod::analytic) ==
          Approx(std::log(2.0)).margin(1e-10));
  REQUIRE(g_derivative(product_state(8), SParam(0.0),
                       DerivativeMethod::analytic) ==
          Approx(-std::log(2.0)).margin(1e-10));

  const BipartiteOperator rho(2, 2, random_density(4, 9));
  const double a =
      g_derivative(rho, SParam(-0.25), DerivativeMethod::analytic);
  const double f =
      g_derivative(rho, SParam(-0.25), DerivativeMethod::finite_difference);
  REQUIRE(std::abs(a - f) <= 1e-4 * std::max(std::abs(a), 1e-3));
}

TEST_CASE("g_derivative at the one-sided boundary", "[exponent]") {
  // For the maximally entangled pair g(s) = s ln 2, so dg/ds = ln 2 at
  // every s, including the boundary where finite differences switch to the
  // one-sided stencil.
  const BipartiteOperator phi = maximally_entangled(2);
  REQUIRE(g_derivative(phi, SParam(-0.5), DerivativeMethod::analytic) ==
          Approx(std::log(2.0)).margin(1e-10));
  REQUIRE(g_derivative(phi, SParam(-0.5),
                       DerivativeMethod::finite_difference) ==
          Approx(std::log(2.0)).margin(1e-4));
}

TEST_CASE("e0_channel reference values", "[exponent]") {
  const QuantumChannel id2(2, 2, {identity(2)});
  const BipartiteOperator phi = maximally_entangled(2);
  for (double sv : {-0.5, -0.25, -0.1}) {
    REQUIRE(e0_channel(id2, phi, SParam(sv)) ==
            Approx(sv * std::log(2.0)).margin(1e-10));
  }
  REQUIRE(e0_channel(id2, phi, SParam(0.0)) == Approx(0.0).margin(1e-12));

  // For the erasure channel at maximally entangled input, the chain is tight:
  // E0(s, channel) equals the analytic erasure formula.
  for (double p : {0.1, 0.25, 0.4}) {
    for (double sv : {-0.5, -0.25}) {
      REQUIRE(e0_channel(erasure_channel(2, p), phi, SParam(sv)) ==
              Approx(erasure_e0(p, 2, sv)).margin(1e-10));
    }
  }

  const BipartiteOperator mismatched(2, 3, random_density(6, 10));
  REQUIRE_THROWS_AS(e0_channel(id2, mismatched, SParam(-0.5)),
                    DimensionMismatchError);
}

TEST_CASE("k_hockey_numeric on easy instances", "[exponent]") {
  OptimizerOptions opts;
  opts.seed = 11;
  opts.starts = 4;

  // sigma = rho_B makes the argument negative semidefinite.
  REQUIRE(k_hockey_numeric(product_state(12), 2.0, opts) <= 1e-8);

  const double v = k_hockey_numeric(maximally_entangled(2), 1.0, opts);
  REQUIRE(v >= 0.0);
  REQUIRE(v <= 0.75);
  REQUIRE(v == Approx(0.5).margin(1e-5));

  REQUIRE_THROWS_AS(
      k_hockey_numeric(maximally_entangled(2), 0.5, opts),
      BadParameterError);
}
