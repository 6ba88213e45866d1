#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qconv/channel.hpp"
#include "qconv/divergence.hpp"
#include "qconv/errors.hpp"
#include "qconv/exponent.hpp"

namespace qconv {

// One converse-bound evaluation point: n channel uses at `rate` nats per use
// over the erasure channel with parameter p and input dimension dA.
struct BoundQuery {
  int n;
  double rate;
  double p;
  int dA;

  BoundQuery(int n_, double rate_, double p_, int d_a)
      : n(n_), rate(rate_), p(p_), dA(d_a) {
    if (n < 1) throw BadParameterError("n must be >= 1");
    if (!(rate >= 0.0)) throw BadParameterError("rate must be >= 0");
    if (!(p >= 0.0 && p <= 1.0)) {
      throw BadProbabilityError("p must lie in [0, 1]");
    }
    if (dA < 2) throw BadDimensionsError("dA must be >= 2");
  }
};

// Analytic Gallager function of the erasure channel at maximally entangled
// inputs: E0(s) = -ln[(1-p) dA^{-s} + p dA^{s}], with E0(0) = 0.
inline double erasure_e0(double p, int dA, double s) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw BadProbabilityError("p must lie in [0, 1]");
  }
  if (dA < 2) throw BadDimensionsError("dA must be >= 2");
  if (!(s >= -0.5 && s <= 0.0)) {
    throw BadParameterError("s must lie in [-1/2, 0]");
  }
  const double d = static_cast<double>(dA);
  return -std::log((1.0 - p) * std::pow(d, -s) + p * std::pow(d, s));
}

// Single-letter quantum capacity (1-2p)^+ ln dA.
inline double erasure_capacity(double p, int dA) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw BadProbabilityError("p must lie in [0, 1]");
  }
  if (dA < 2) throw BadDimensionsError("dA must be >= 2");
  return std::max(0.0, 1.0 - 2.0 * p) * std::log(static_cast<double>(dA));
}

// F <= exp{n [s R - E0(s)]}, capped at 1 (values above 1 are vacuous).
inline double fidelity_bound_renyi(const BoundQuery& q, SParam s) {
  const double expo =
      q.n * (s.s() * q.rate - erasure_e0(q.p, q.dA, s.s()));
  return std::min(1.0, std::exp(expo));
}

struct ConverseExponent {
  double s_star;
  double exponent;
};

namespace detail {

// Golden-section maximization of h on [lo, hi] to the given x tolerance.
template <typename H>
double golden_max(const H& h, double lo, double hi, double xtol) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = h(c), fd = h(d);
  while (b - a > xtol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = h(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = h(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

// max over s in [-1/2, 0) of E0(s) - s R, by dense grid plus golden-section
// refinement. Positive exactly when the fidelity bound decays; for
// rate <= capacity (p <= 1/2) the supremum 0 is approached as s -> 0 and is
// reported as (s_star, exponent) = (0, 0).
inline ConverseExponent strong_converse_exponent(double rate, double p,
                                                 int dA) {
  if (!(rate >= 0.0)) throw BadParameterError("rate must be >= 0");
  const auto h = [&](double s) { return erasure_e0(p, dA, s) - s * rate; };

  const int grid = 1024;
  int best_i = 0;
  double best_h = -kInfinity;
  for (int i = 0; i < grid; ++i) {
    const double s = -0.5 + 0.5 * static_cast<double>(i) / grid;
    const double v = h(s);
    if (v > best_h) {
      best_h = v;
      best_i = i;
    }
  }
  const double lo =
      std::max(-0.5, -0.5 + 0.5 * static_cast<double>(best_i - 1) / grid);
  const double hi =
      std::min(-1e-12, -0.5 + 0.5 * static_cast<double>(best_i + 1) / grid);
  double s_star = detail::golden_max(h, lo, hi, 1e-8);
  double refined = h(s_star);
  if (refined < best_h) {
    s_star = -0.5 + 0.5 * static_cast<double>(best_i) / grid;
    refined = best_h;
  }
  if (refined <= 0.0) return ConverseExponent{0.0, 0.0};
  return ConverseExponent{s_star, refined};
}

// Two-term hockey-stick converse bound of the erasure channel, valid for
// rate above capacity:
// F <= exp{-(n/2)[R - Q]} + exp{-(n/2p)[((2p-1)^+)/2 + R/(4 ln dA)]^2}.
inline double fidelity_bound_hockey(const BoundQuery& q) {
  if (!(q.p > 0.0)) {
    throw BadProbabilityError("hockey-stick bound requires p > 0");
  }
  const double cap = erasure_capacity(q.p, q.dA);
  if (!(q.rate > cap)) {
    throw RateBelowCapacityError("hockey-stick bound requires rate > capacity");
  }
  const double term1 = std::exp(-0.5 * q.n * (q.rate - cap));
  const double t = std::max(0.0, 2.0 * q.p - 1.0) / 2.0 +
                   q.rate / (4.0 * std::log(static_cast<double>(q.dA)));
  const double term2 = std::exp(-(q.n / (2.0 * q.p)) * t * t);
  return std::min(1.0, term1 + term2);
}

// Cutoff index of the binomial sum in the hockey-stick derivation:
// m = n/2 - floor(ln(gamma) / (2 ln dA)) with ln(gamma) = n (R + Q)/2.
// May be negative (empty sum) for large rates.
inline long hockey_tail_cutoff(int n, double rate, double p, int dA) {
  const double ln_gamma = n * (rate + erasure_capacity(p, dA)) / 2.0;
  const double fl =
      std::floor(ln_gamma / (2.0 * std::log(static_cast<double>(dA))));
  return static_cast<long>(n) / 2 - static_cast<long>(fl);
}

// Exact lower binomial tail sum_{k=0}^{m} C(n,k) (1-p)^{n-k} p^k via
// log-space accumulation.
inline double binomial_tail(int n, long m, double p) {
  if (n < 0) throw BadParameterError("n must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw BadProbabilityError("p must lie in [0, 1]");
  }
  if (m < 0) return 0.0;
  if (m > n) throw BadParameterError("m must be <= n");
  if (p == 0.0) return 1.0;
  if (p == 1.0) return (m == n) ? 1.0 : 0.0;
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  double acc = 0.0;
  for (long k = 0; k <= m; ++k) {
    const double lc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                      std::lgamma(n - k + 1.0);
    acc += std::exp(lc + k * lp + (n - k) * lq);
  }
  return std::min(1.0, acc);
}

// Converse slack K_lambda(A>B^n) - D_lambda(F || e^{-nR}); nonnegative for
// every fidelity/state pair realizable by a valid code.
inline double theorem1_slack(double fidelity, int n, double rate,
                             const BipartiteOperator& output_ab_n,
                             RenyiOrder order) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    throw BadParameterError("fidelity must lie in [0, 1]");
  }
  if (n < 1) throw BadParameterError("n must be >= 1");
  if (!(rate >= 0.0)) throw BadParameterError("rate must be >= 0");
  const double beta = std::exp(-static_cast<double>(n) * rate);
  if (fidelity < beta) {
    throw ConstraintViolatedError(
        "F < e^{-nR}: report the exponential bound F <= e^{-nR} directly");
  }
  const double lhs = binary_renyi(fidelity, beta, order);
  const double rhs = k_lambda(output_ab_n, order);
  return rhs - lhs;
}

// Same, computing the output state from a single-use channel applied n times
// to the given input on A (x) A'^n.
inline double theorem1_slack(double fidelity, int n, double rate,
                             const QuantumChannel& ch,
                             const BipartiteOperator& input_aan,
                             RenyiOrder order) {
  const QuantumChannel chn = tensor_power(ch, n);
  return theorem1_slack(fidelity, n, rate, apply_to_B(chn, input_aan), order);
}

// D_lambda(F || e^{-nR}) - [lambda/(lambda-1) ln F + nR]; must be >= 0 up to
// roundoff.
inline double renyi_lower_bound_check(double fidelity, int n, double rate,
                                      RenyiOrder order) {
  if (!(fidelity > 0.0 && fidelity <= 1.0)) {
    throw BadParameterError("fidelity must lie in (0, 1]");
  }
  if (n < 1) throw BadParameterError("n must be >= 1");
  if (!(rate >= 0.0)) throw BadParameterError("rate must be >= 0");
  const double nr = static_cast<double>(n) * rate;
  const double lhs = binary_renyi(fidelity, std::exp(-nr), order);
  const double lambda = order.lambda();
  return lhs - (lambda / (lambda - 1.0) * std::log(fidelity) + nr);
}

// ---------------------------------------------------------------------------
// Curve generation
// ---------------------------------------------------------------------------

enum class BoundMethod { renyi, hockey, both };

inline const char* to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::renyi: return "renyi";
    case BoundMethod::hockey: return "hockey";
    default: return "both";
  }
}

struct CurveRow {
  double sweep_var;
  double s_star;
  double exponent;
  double fidelity_bound;  // NaN on flagged rows
  std::string method;
  std::string note;  // nonempty when the point was flagged
};

struct SweepSpec {
  std::vector<int> over_n;
  std::vector<double> over_rate;
};

struct BoundCurve {
  BoundQuery query;
  std::string sweep_name;
  std::vector<CurveRow> rows;
};

// Evaluate the bounds along a sweep in n or in rate. Per-point failures
// (e.g. hockey bound below capacity) become flagged rows, not aborts.
inline BoundCurve curve_sweep(const BoundQuery& q, SweepSpec sweep,
                              BoundMethod method) {
  const bool over_n = !sweep.over_n.empty();
  const bool over_rate = !sweep.over_rate.empty();
  if (over_n == over_rate) {
    throw BadParameterError("exactly one of over_n/over_rate must be set");
  }
  std::sort(sweep.over_n.begin(), sweep.over_n.end());
  std::sort(sweep.over_rate.begin(), sweep.over_rate.end());

  BoundCurve curve{q, over_n ? "n" : "rate", {}};
  const std::size_t count =
      over_n ? sweep.over_n.size() : sweep.over_rate.size();
  for (std::size_t i = 0; i < count; ++i) {
    const int n = over_n ? sweep.over_n[i] : q.n;
    const double rate = over_n ? q.rate : sweep.over_rate[i];
    const double sweep_var =
        over_n ? static_cast<double>(n) : rate;
    if (n < 1 || !(rate >= 0.0)) {
      curve.rows.push_back(CurveRow{sweep_var, 0.0, 0.0,
                                    std::nan(""), "invalid",
                                    "bad sweep point"});
      continue;
    }
    const ConverseExponent ce = strong_converse_exponent(rate, q.p, q.dA);
    if (method == BoundMethod::renyi || method == BoundMethod::both) {
      const double bound = std::min(1.0, std::exp(-n * ce.exponent));
      curve.rows.push_back(
          CurveRow{sweep_var, ce.s_star, ce.exponent, bound, "renyi", ""});
    }
    if (method == BoundMethod::hockey || method == BoundMethod::both) {
      CurveRow row{sweep_var, ce.s_star, ce.exponent, std::nan(""), "hockey",
                   ""};
      try {
        row.fidelity_bound = fidelity_bound_hockey(BoundQuery(n, rate, q.p, q.dA));
      } catch (const Error& e) {
        row.note = e.what();
      }
      curve.rows.push_back(std::move(row));
    }
  }
  return curve;
}

}  // namespace qconv
