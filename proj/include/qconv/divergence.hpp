#pragma once

#include <cmath>
#include <limits>

#include "qconv/errors.hpp"
#include "qconv/hermitian.hpp"

namespace qconv {

// Divergences return +infinity exactly when the first argument's support is
// not contained in the second's.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
using ExtendedReal = double;

// Renyi order confined to (1, 2], the range where monotonicity is available.
class RenyiOrder {
 public:
  explicit RenyiOrder(double lambda) : lambda_(lambda) {
    if (!(lambda > 1.0 && lambda <= 2.0)) {
      throw BadParameterError("Renyi order must lie in (1, 2]");
    }
  }
  double lambda() const { return lambda_; }

 private:
  double lambda_;
};

// D_lambda(rho || sigma) = (lambda-1)^{-1} ln Tr rho^lambda sigma^{1-lambda},
// with sigma^{1-lambda} taken on sigma's support. Arguments may be
// un-normalized.
inline ExtendedReal renyi_divergence(const PsdOperator& rho,
                                     const PsdOperator& sigma,
                                     RenyiOrder order) {
  if (rho.trace() <= tol::kZeroOperator) {
    throw ZeroOperatorError("first argument has trace <= 1e-12");
  }
  if (rho.dim() != sigma.dim()) {
    throw DimensionMismatchError("operands differ in dimension");
  }
  const double lambda = order.lambda();

  const Spectrum ss = eig_hermitian(sigma);
  const RealVector w = detail::clip_psd(ss.eigenvalues);

  double kernel_leak = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) {
      const auto v = ss.eigenvectors.col(i);
      kernel_leak += (v.adjoint() * rho.matrix() * v)(0, 0).real();
    }
  }
  if (kernel_leak > tol::kSupport) return kInfinity;

  RealVector wp(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    wp[i] = (w[i] > 0.0) ? std::pow(w[i], 1.0 - lambda) : 0.0;
  }
  const Matrix sigma_pow = detail::reassemble(ss, wp);
  const Matrix rho_pow = matrix_power(rho, lambda).matrix();
  const double tr = (rho_pow * sigma_pow).trace().real();
  if (!(tr > 0.0)) return kInfinity;
  return std::log(tr) / (lambda - 1.0);
}

// Binary commutative version on diag(alpha, 1-alpha) vs
// diag(beta, 1/beta - beta). The second argument is positive but not
// normalized. Convention 0^lambda * x = 0.
inline double binary_renyi(double alpha, double beta, RenyiOrder order) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw BadParameterError("alpha must lie in [0, 1]");
  }
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw BadParameterError("beta must lie in (0, 1]");
  }
  if (beta == 1.0 && alpha < 1.0) {
    throw SupportViolationError(
        "beta = 1 collapses the second projector; alpha must be 1");
  }
  const double lambda = order.lambda();
  const double q = 1.0 / beta - beta;
  double acc = 0.0;
  if (alpha > 0.0) acc += std::pow(alpha, lambda) * std::pow(beta, 1.0 - lambda);
  if (alpha < 1.0) {
    acc += std::pow(1.0 - alpha, lambda) * std::pow(q, 1.0 - lambda);
  }
  return std::log(acc) / (lambda - 1.0);
}

// Hockey-stick divergence Tr(rho - gamma sigma)^+.
inline double hockey_stick(const PsdOperator& rho, const PsdOperator& sigma,
                           double gamma) {
  if (!(gamma >= 1.0)) throw BadParameterError("gamma must be >= 1");
  if (rho.dim() != sigma.dim()) {
    throw DimensionMismatchError("operands differ in dimension");
  }
  const HermitianOperator diff(rho.matrix() - gamma * sigma.matrix(),
                               detail::trusted);
  return positive_part(diff).trace();
}

// Commutative hockey-stick on the same binary construction; beta = 1 is
// permitted here since no inverse powers appear.
inline double binary_hockey_stick(double alpha, double beta, double gamma) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw BadParameterError("alpha must lie in [0, 1]");
  }
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw BadParameterError("beta must lie in (0, 1]");
  }
  if (!(gamma >= 1.0)) throw BadParameterError("gamma must be >= 1");
  const double q = 1.0 / beta - beta;
  const double t0 = alpha - gamma * beta;
  const double t1 = (1.0 - alpha) - gamma * q;
  return (t0 > 0.0 ? t0 : 0.0) + (t1 > 0.0 ? t1 : 0.0);
}

// -Tr rho ln rho in nats, with 0 ln 0 = 0.
inline double von_neumann_entropy(const DensityOperator& rho) {
  const Spectrum s = eig_hermitian(rho);
  const RealVector w = detail::clip_psd(s.eigenvalues);
  double h = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) h -= w[i] * std::log(w[i]);
  }
  return h;
}

// I(A>B) = H(B) - H(AB).
inline double coherent_information(const BipartiteOperator& rho_ab) {
  const DensityOperator joint(rho_ab.matrix());
  const DensityOperator marginal_b(
      partial_trace(rho_ab, Subsystem::A).matrix());
  return von_neumann_entropy(marginal_b) - von_neumann_entropy(joint);
}

}  // namespace qconv
