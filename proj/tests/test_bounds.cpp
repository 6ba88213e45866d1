#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qconv/bounds.hpp"

using namespace qconv;
using Catch::Approx;

TEST_CASE("erasure_e0 reference values", "[bounds]") {
  for (double p : {0.0, 0.25, 0.7}) {
    REQUIRE(erasure_e0(p, 2, 0.0) == Approx(0.0).margin(1e-15));
  }
  REQUIRE(erasure_e0(0.0, 2, -0.5) == Approx(-0.5 * std::log(2.0)).margin(1e-14));
  const double expected =
      -std::log(0.75 * std::sqrt(2.0) + 0.25 / std::sqrt(2.0));
  REQUIRE(erasure_e0(0.25, 2, -0.5) == Approx(expected).margin(1e-15));
  REQUIRE(expected == Approx(-0.21302).margin(1e-4));
  REQUIRE_THROWS_AS(erasure_e0(1.5, 2, -0.5), BadProbabilityError);
  REQUIRE_THROWS_AS(erasure_e0(0.25, 2, -0.7), BadParameterError);
}

TEST_CASE("erasure_capacity and its limit characterization", "[bounds]") {
  REQUIRE(erasure_capacity(0.6, 2) == 0.0);
  REQUIRE(erasure_capacity(0.25, 2) == Approx(0.5 * std::log(2.0)).margin(1e-15));
  REQUIRE(erasure_capacity(0.25, 2) == Approx(0.346574).margin(1e-6));
  const double limit = erasure_e0(0.25, 2, -1e-4) / -1e-4;
  REQUIRE(std::abs(limit - erasure_capacity(0.25, 2)) <= 1e-4);
}

TEST_CASE("fidelity_bound_renyi values and scaling", "[bounds]") {
  // Noiseless channel below capacity: the bound is vacuous.
  REQUIRE(fidelity_bound_renyi(BoundQuery(50, 0.5, 0.0, 2), SParam(-0.3)) ==
          1.0);

  const BoundQuery q(100, 0.45, 0.25, 2);
  const double bound = fidelity_bound_renyi(q, SParam(-0.5));
  const double expo = -0.5 * 0.45 - erasure_e0(0.25, 2, -0.5);
  REQUIRE(bound == Approx(std::exp(100.0 * expo)).margin(1e-15));
  REQUIRE(bound == Approx(0.30246786624138117).margin(1e-12));
  REQUIRE(bound == Approx(0.3018).margin(1e-3));

  const double b200 =
      fidelity_bound_renyi(BoundQuery(200, 0.45, 0.25, 2), SParam(-0.5));
  REQUIRE(b200 == Approx(bound * bound).margin(1e-12));
}

TEST_CASE("strong_converse_exponent optimization", "[bounds]") {
  const double cap = erasure_capacity(0.25, 2);
  REQUIRE(strong_converse_exponent(cap, 0.25, 2).exponent ==
          Approx(0.0).margin(1e-6));

  const ConverseExponent ce = strong_converse_exponent(0.45, 0.25, 2);
  REQUIRE(ce.exponent >= 0.0119578);  // value at the endpoint s = -1/2
  REQUIRE(ce.exponent == Approx(0.01603541091253005).margin(1e-7));
  REQUIRE(ce.s_star == Approx(-0.324073500351853).margin(1e-4));

  // Above 1/2 the strong converse holds at every positive rate.
  for (double rate : {0.01, 0.2, 1.0}) {
    REQUIRE(strong_converse_exponent(rate, 0.6, 2).exponent > 0.0);
  }
}

TEST_CASE("fidelity_bound_hockey value and monotonicity", "[bounds]") {
  const BoundQuery q(100, 0.45, 0.25, 2);
  const double bound = fidelity_bound_hockey(q);
  const double cap = erasure_capacity(0.25, 2);
  const double term1 = std::exp(-50.0 * (0.45 - cap));
  const double t = 0.45 / (4.0 * std::log(2.0));
  const double term2 = std::exp(-200.0 * t * t);
  REQUIRE(bound == Approx(term1 + term2).margin(1e-15));
  REQUIRE(bound == Approx(0.010828578256466489).margin(1e-12));
  REQUIRE(bound == Approx(1.083e-2).margin(1e-4));

  REQUIRE(fidelity_bound_hockey(BoundQuery(200, 0.45, 0.25, 2)) < bound);

  REQUIRE_THROWS_AS(fidelity_bound_hockey(BoundQuery(100, 0.34, 0.25, 2)),
                    RateBelowCapacityError);
}

TEST_CASE("hockey_tail_cutoff from the gamma choice", "[bounds]") {
  REQUIRE(hockey_tail_cutoff(50, 0.45, 0.25, 2) == 11);
  REQUIRE(hockey_tail_cutoff(100, 0.45, 0.25, 2) == 22);
  REQUIRE(hockey_tail_cutoff(200, 0.45, 0.25, 2) == 43);
}

TEST_CASE("binomial_tail exactness", "[bounds]") {
  REQUIRE(binomial_tail(10, 10, 0.3) == Approx(1.0).margin(1e-14));
  REQUIRE(binomial_tail(10, 0, 0.3) ==
          Approx(std::pow(0.7, 10)).margin(1e-16));
  REQUIRE(binomial_tail(10, -1, 0.3) == 0.0);
  REQUIRE(binomial_tail(10, 4, 0.0) == 1.0);
  REQUIRE(binomial_tail(10, 4, 1.0) == 0.0);
  REQUIRE(binomial_tail(10, 10, 1.0) == 1.0);

  // Cross-check against a direct Pascal-triangle evaluation.
  const int n = 20;
  const double p = 0.35;
  double choose = 1.0;
  double direct = 0.0;
  for (int k = 0; k <= 13; ++k) {
    if (k > 0) choose = choose * (n - k + 1) / k;
    direct += choose * std::pow(p, k) * std::pow(1.0 - p, n - k);
    REQUIRE(binomial_tail(n, k, p) == Approx(direct).margin(1e-12));
  }
}

TEST_CASE("theorem1_slack equality and constraint handling", "[bounds]") {
  const QuantumChannel id2(2, 2, {identity(2)});
  const BipartiteOperator phi = maximally_entangled(2);
  const double slack =
      theorem1_slack(1.0, 1, std::log(2.0), id2, phi, RenyiOrder(2.0));
  REQUIRE(slack == Approx(0.0).margin(1e-10));

  const double erasure_slack = theorem1_slack(
      0.75, 1, std::log(2.0), erasure_channel(2, 0.25), phi, RenyiOrder(2.0));
  REQUIRE(erasure_slack >= 0.0);
  // LHS and RHS recomputed directly.
  const double lhs = binary_renyi(0.75, 0.5, RenyiOrder(2.0));
  const double rhs = k_lambda(
      apply_to_B(erasure_channel(2, 0.25), phi), RenyiOrder(2.0));
  REQUIRE(erasure_slack == Approx(rhs - lhs).margin(1e-12));
  REQUIRE(rhs == Approx(0.4260843953109004).margin(1e-12));

  REQUIRE_THROWS_AS(
      theorem1_slack(0.4, 1, std::log(2.0), id2, phi, RenyiOrder(2.0)),
      ConstraintViolatedError);
}

TEST_CASE("renyi_lower_bound_check of the weakening step", "[bounds]") {
  for (double l : {1.25, 1.5, 2.0}) {
    REQUIRE(renyi_lower_bound_check(1.0, 3, 0.4, RenyiOrder(l)) ==
            Approx(0.0).margin(1e-12));
  }
  REQUIRE(renyi_lower_bound_check(0.9, 2, 0.5, RenyiOrder(2.0)) >= 0.0);
  const double boundary = std::exp(-2.0 * 0.5);
  REQUIRE(renyi_lower_bound_check(boundary, 2, 0.5, RenyiOrder(2.0)) >=
          -1e-10);
}

TEST_CASE("curve_sweep shapes and flagged rows", "[bounds]") {
  const BoundQuery q(100, 0.45, 0.25, 2);

  SweepSpec over_n;
  for (int n = 10; n <= 100; n += 10) over_n.over_n.push_back(n);
  const BoundCurve cn = curve_sweep(q, over_n, BoundMethod::renyi);
  REQUIRE(cn.rows.size() == 10);
  for (std::size_t i = 1; i < cn.rows.size(); ++i) {
    REQUIRE(cn.rows[i].fidelity_bound < cn.rows[i - 1].fidelity_bound);
  }

  SweepSpec over_rate;
  const double cap = erasure_capacity(0.25, 2);
  for (int i = -3; i <= 3; ++i) {
    over_rate.over_rate.push_back(cap + 0.05 * i);
  }
  const BoundCurve cr = curve_sweep(q, over_rate, BoundMethod::both);
  REQUIRE(cr.rows.size() == 14);
  for (const CurveRow& row : cr.rows) {
    if (row.sweep_var < cap) {
      REQUIRE(row.exponent == 0.0);
      if (row.method == "hockey") {
        REQUIRE(std::isnan(row.fidelity_bound));
        REQUIRE_FALSE(row.note.empty());
      }
    }
    if (row.sweep_var > cap + 1e-9) {
      REQUIRE(row.exponent > 0.0);
    }
  }

  SweepSpec single;
  single.over_n.push_back(100);
  const BoundCurve cs = curve_sweep(q, single, BoundMethod::renyi);
  REQUIRE(cs.rows.size() == 1);
  const ConverseExponent ce = strong_converse_exponent(0.45, 0.25, 2);
  REQUIRE(cs.rows[0].exponent == Approx(ce.exponent).margin(1e-15));
  REQUIRE(cs.rows[0].fidelity_bound ==
          Approx(std::exp(-100.0 * ce.exponent)).margin(1e-15));

  SweepSpec empty;
  REQUIRE_THROWS_AS(curve_sweep(q, empty, BoundMethod::renyi),
                    BadParameterError);
}
