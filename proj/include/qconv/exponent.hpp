#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "qconv/channel.hpp"
#include "qconv/divergence.hpp"
#include "qconv/errors.hpp"
#include "qconv/hermitian.hpp"
#include "qconv/simplex.hpp"

namespace qconv {

// Gallager parameter. The bijection s = 1/lambda - 1 maps lambda in (1, 2]
// onto s in [-1/2, 0); s = 0 is additionally admitted as the closed boundary
// used by g/E0.
class SParam {
 public:
  explicit SParam(double s) : s_(s) {
    if (!(s >= -0.5 && s <= 0.0)) {
      throw BadParameterError("s must lie in [-1/2, 0]");
    }
  }
  double s() const { return s_; }

  RenyiOrder order() const {
    if (s_ >= 0.0) {
      throw BadParameterError("lambda = 1/(s+1) is defined only for s < 0");
    }
    return RenyiOrder(1.0 / (s_ + 1.0));
  }
  static SParam from_order(RenyiOrder order) {
    return SParam(1.0 / order.lambda() - 1.0);
  }

 private:
  double s_;
};

struct OptimizerOptions {
  int starts = 8;
  int max_iters = 5000;
  double value_tol = 1e-9;
  std::uint64_t seed = 0;
};

namespace detail {

inline void require_density(const BipartiteOperator& rho) {
  if (std::abs(rho.trace() - 1.0) > tol::kTrace) {
    throw NotDensityError("bipartite state must have unit trace");
  }
}

// Tr_A rho^lambda as a PSD operator on B.
inline PsdOperator b_side_trace_power(const BipartiteOperator& rho,
                                      double lambda) {
  const PsdOperator joint(rho.op());
  const Matrix powered = matrix_power(joint, lambda).matrix();
  const BipartiteOperator wrapped(
      rho.dimA(), rho.dimB(),
      HermitianOperator(powered, detail::trusted));
  return PsdOperator(partial_trace(wrapped, Subsystem::A).matrix(),
                     detail::trusted);
}

}  // namespace detail

// Closed form via the quantum Sibson identity:
// K_lambda(A>B) = (lambda/(lambda-1)) ln Tr [Tr_A rho^lambda]^{1/lambda}.
// Equals inf over sigma^B of D_lambda(rho^{AB} || 1 (x) sigma^B).
inline double k_lambda(const BipartiteOperator& rho_ab, RenyiOrder order) {
  detail::require_density(rho_ab);
  const double lambda = order.lambda();
  const PsdOperator m = detail::b_side_trace_power(rho_ab, lambda);
  const double tr = trace_power(m, 1.0 / lambda);
  return lambda / (lambda - 1.0) * std::log(tr);
}

// Normalized minimizer sigma* = [Tr_A rho^lambda]^{1/lambda} / Tr[...].
inline DensityOperator sibson_state(const BipartiteOperator& rho_ab,
                                    RenyiOrder order) {
  detail::require_density(rho_ab);
  const PsdOperator m = detail::b_side_trace_power(rho_ab, order.lambda());
  Matrix s = matrix_power(m, 1.0 / order.lambda()).matrix();
  s /= s.trace().real();
  return DensityOperator(std::move(s), detail::trusted);
}

namespace detail {

// Shared multi-start simplex driver over density matrices on B,
// parametrized as sigma = G^dag G / Tr(G^dag G) with G complex dB x dB.
// The objective receives the eigendecomposition of sigma.
template <typename Objective>
double minimize_over_states(int db, const Objective& objective,
                            const OptimizerOptions& opts) {
  if (opts.starts < 1 || opts.max_iters < 1 || opts.value_tol <= 0.0) {
    throw BadParameterError("optimizer options must be positive");
  }
  const int nparams = 2 * db * db;

  auto value_at = [&](const Eigen::VectorXd& x) {
    Matrix g(db, db);
    for (int i = 0; i < db; ++i) {
      for (int j = 0; j < db; ++j) {
        g(i, j) = Complex(x[2 * (i * db + j)], x[2 * (i * db + j) + 1]);
      }
    }
    Matrix sigma = g.adjoint() * g;
    const double tr = sigma.trace().real();
    if (!(tr > 1e-100)) return kInfinity;
    sigma /= tr;
    Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
    return objective(es.eigenvalues(), es.eigenvectors());
  };

  double best = kInfinity;
  bool any_stalled = false;
  for (int start = 0; start < opts.starts; ++start) {
    auto gen = substream(opts.seed, static_cast<std::uint64_t>(start) + 1);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd x(nparams);
    for (int i = 0; i < nparams; ++i) x[i] = normal(gen);

    // Grind in stages with shrinking simplex steps; the stall criterion of
    // the final stage decides convergence for this start.
    bool stalled = false;
    for (double step : {0.25, 0.05, 0.01}) {
      SimplexOptions sopt;
      sopt.max_iterations = opts.max_iters;
      sopt.value_tolerance = opts.value_tol;
      sopt.initial_step = step;
      SimplexResult r = nelder_mead(value_at, x, sopt);
      x = r.point;
      stalled = r.stalled;
    }
    if (stalled) any_stalled = true;
    const double v = value_at(x);
    if (v < best) best = v;
  }
  if (!any_stalled) {
    throw NotConvergedError("no optimizer start met the stall criterion");
  }
  return best;
}

}  // namespace detail

// Independent numerical oracle for K_lambda: direct multi-start simplex
// minimization of D_lambda(rho^{AB} || 1 (x) sigma^B) over sigma^B.
inline double k_lambda_numeric(const BipartiteOperator& rho_ab,
                               RenyiOrder order,
                               const OptimizerOptions& opts = {}) {
  if (rho_ab.dimB() > 4) {
    throw BadDimensionsError("numeric oracle is limited to dimB <= 4");
  }
  detail::require_density(rho_ab);
  const double lambda = order.lambda();
  // Fixed data: Tr_A rho^lambda and the B marginal (for support checks).
  // D_lambda(rho || 1 (x) sigma) = (lambda-1)^{-1} ln Tr[Tr_A(rho^lambda)
  // sigma^{1-lambda}] by partial-trace linearity.
  const Matrix m = detail::b_side_trace_power(rho_ab, lambda).matrix();
  const Matrix rho_b = partial_trace(rho_ab, Subsystem::A).matrix();

  auto objective = [&](const RealVector& w, const Matrix& u) {
    double kernel_leak = 0.0;
    double tr = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const double wi = (w[i] > tol::kEigClip) ? w[i] : 0.0;
      const auto v = u.col(i);
      if (wi == 0.0) {
        kernel_leak += (v.adjoint() * rho_b * v)(0, 0).real();
      } else {
        tr += std::pow(wi, 1.0 - lambda) *
              (v.adjoint() * m * v)(0, 0).real();
      }
    }
    if (kernel_leak > tol::kSupport || !(tr > 0.0)) return kInfinity;
    return std::log(tr) / (lambda - 1.0);
  };
  return detail::minimize_over_states(rho_ab.dimB(), objective, opts);
}

namespace detail {

// g(s) = -ln Tr [Tr_A sigma^{1/(s+1)}]^{s+1}, without range validation so
// finite differences may probe slightly outside [-1/2, 0].
inline double g_unchecked(const BipartiteOperator& sigma_ab, double s) {
  const PsdOperator k1 = b_side_trace_power(sigma_ab, 1.0 / (s + 1.0));
  return -std::log(trace_power(k1, s + 1.0));
}

}  // namespace detail

// Gallager-type generating function of a bipartite state; g(0) = 0 and
// E0(s) = s * K_{1/(s+1)}.
inline double g_function(const BipartiteOperator& sigma_ab, SParam s) {
  detail::require_density(sigma_ab);
  return detail::g_unchecked(sigma_ab, s.s());
}

enum class DerivativeMethod { analytic, finite_difference };

// dg/ds. The analytic route evaluates
//   Tr kappa1^s (kappa2 - kappa1 ln kappa1) / Tr kappa1^{s+1}
// with kappa1 = sum_i l_i^{1/(s+1)} sigma_i and
// kappa2 = sum_i l_i^{1/(s+1)} ln(l_i^{1/(s+1)}) sigma_i built from the
// spectral decomposition of sigma^{AB}. At s = 0 it reduces exactly to the
// coherent information I(A>B).
inline double g_derivative(const BipartiteOperator& sigma_ab, SParam s,
                           DerivativeMethod method) {
  detail::require_density(sigma_ab);
  const double sv = s.s();

  if (method == DerivativeMethod::finite_difference) {
    const double h = 1e-5;
    if (sv - h < -0.5) {
      // One-sided (second order) at the lower boundary.
      const double g0 = detail::g_unchecked(sigma_ab, sv);
      const double g1 = detail::g_unchecked(sigma_ab, sv + h);
      const double g2 = detail::g_unchecked(sigma_ab, sv + 2.0 * h);
      return (-3.0 * g0 + 4.0 * g1 - g2) / (2.0 * h);
    }
    const double gm = detail::g_unchecked(sigma_ab, sv - h);
    const double gp = detail::g_unchecked(sigma_ab, sv + h);
    return (gp - gm) / (2.0 * h);
  }

  const double a = 1.0 / (sv + 1.0);
  const Spectrum spec = eig_hermitian(sigma_ab.op());
  const RealVector w = detail::clip_psd(spec.eigenvalues);
  RealVector f1(w.size()), f2(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) {
      const double wa = std::pow(w[i], a);
      f1[i] = wa;
      f2[i] = wa * std::log(wa);
    } else {
      f1[i] = 0.0;
      f2[i] = 0.0;
    }
  }
  const Matrix joint1 = detail::reassemble(spec, f1);
  const Matrix joint2 = detail::reassemble(spec, f2);
  const auto trace_a = [&](const Matrix& m) {
    return partial_trace(BipartiteOperator(
                             sigma_ab.dimA(), sigma_ab.dimB(),
                             HermitianOperator(m, detail::trusted)),
                         Subsystem::A)
        .matrix();
  };
  const Matrix kappa1 = trace_a(joint1);
  const Matrix kappa2 = trace_a(joint2);

  const Spectrum kspec =
      eig_hermitian(HermitianOperator(kappa1, detail::trusted));
  const RealVector kw = detail::clip_psd(kspec.eigenvalues);
  RealVector ks(kw.size()), klog(kw.size());
  double denom = 0.0;
  for (Eigen::Index i = 0; i < kw.size(); ++i) {
    if (kw[i] > 0.0) {
      ks[i] = std::pow(kw[i], sv);
      klog[i] = kw[i] * std::log(kw[i]);
      denom += std::pow(kw[i], sv + 1.0);
    } else {
      ks[i] = 0.0;
      klog[i] = 0.0;
    }
  }
  const Matrix kappa1_s = detail::reassemble(kspec, ks);
  const Matrix kappa1_log = detail::reassemble(kspec, klog);
  const double numer = (kappa1_s * (kappa2 - kappa1_log)).trace().real();
  return numer / denom;
}

// Gallager function of a channel at input rho^{AA'}:
// E0(s, N)_rho = g(N applied to the A' side, s).
inline double e0_channel(const QuantumChannel& ch,
                         const BipartiteOperator& rho_aaprime, SParam s) {
  return g_function(apply_to_B(ch, rho_aaprime), s);
}

// Hockey-stick analogue K(A>B) = inf over sigma^B of
// D(rho^{AB} || 1 (x) sigma^B); no closed form exists, so this is optimizer
// only.
inline double k_hockey_numeric(const BipartiteOperator& rho_ab, double gamma,
                               const OptimizerOptions& opts = {}) {
  if (rho_ab.dimB() > 4) {
    throw BadDimensionsError("numeric oracle is limited to dimB <= 4");
  }
  if (!(gamma >= 1.0)) throw BadParameterError("gamma must be >= 1");
  detail::require_density(rho_ab);
  const int da = rho_ab.dimA();
  const int db = rho_ab.dimB();
  const Matrix& rho = rho_ab.matrix();

  auto objective = [&](const RealVector& w, const Matrix& u) {
    const Matrix sigma =
        u * w.cwiseMax(0.0).asDiagonal() * u.adjoint();
    const Matrix arg = rho - gamma * kron(identity(da), sigma);
    Eigen::SelfAdjointEigenSolver<Matrix> es(arg, Eigen::EigenvaluesOnly);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      if (es.eigenvalues()[i] > 0.0) acc += es.eigenvalues()[i];
    }
    return acc;
  };
  return detail::minimize_over_states(db, objective, opts);
}

}  // namespace qconv
