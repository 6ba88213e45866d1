#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qconv/errors.hpp"
#include "qconv/hermitian.hpp"

namespace qconv {

// CPTP map in Kraus form: rho -> sum_k K rho K^dag with sum_k K^dag K = I.
class QuantumChannel {
 public:
  QuantumChannel(int dim_in, int dim_out, std::vector<Matrix> kraus)
      : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
    if (dim_in < 1 || dim_out < 1) {
      throw BadDimensionsError("channel dimensions must be >= 1");
    }
    if (kraus_.empty()) throw BadDimensionsError("empty Kraus list");
    for (const Matrix& k : kraus_) {
      if (k.rows() != dim_out || k.cols() != dim_in) {
        throw DimensionMismatchError("Kraus operator has wrong shape");
      }
    }
    Matrix acc = Matrix::Zero(dim_in, dim_in);
    for (const Matrix& k : kraus_) acc += k.adjoint() * k;
    const double dev = (acc - identity(dim_in)).norm();
    if (dev > tol::kTrace) {
      throw NotTracePreservingError("sum K^dag K deviates from identity by " +
                                    std::to_string(dev));
    }
  }

  int dimIn() const { return dim_in_; }
  int dimOut() const { return dim_out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

 private:
  int dim_in_;
  int dim_out_;
  std::vector<Matrix> kraus_;
};

// Validated constructor inferring dimensions from the Kraus list.
inline QuantumChannel make_channel(std::vector<Matrix> kraus) {
  if (kraus.empty()) throw BadDimensionsError("empty Kraus list");
  const int dim_out = static_cast<int>(kraus.front().rows());
  const int dim_in = static_cast<int>(kraus.front().cols());
  return QuantumChannel(dim_in, dim_out, std::move(kraus));
}

// Plain application of the channel to an operator on its input space.
inline HermitianOperator apply(const QuantumChannel& ch,
                               const HermitianOperator& x) {
  if (x.dim() != ch.dimIn()) {
    throw DimensionMismatchError("operator does not match channel input");
  }
  Matrix out = Matrix::Zero(ch.dimOut(), ch.dimOut());
  for (const Matrix& k : ch.kraus()) {
    out += k * x.matrix() * k.adjoint();
  }
  return HermitianOperator(std::move(out), detail::trusted);
}

// (id_A (x) channel) applied to a bipartite operator, block by block; no
// superoperator matrices are materialized.
inline BipartiteOperator apply_to_B(const QuantumChannel& ch,
                                    const BipartiteOperator& rho) {
  if (ch.dimIn() != rho.dimB()) {
    throw DimensionMismatchError("channel input dim " +
                                 std::to_string(ch.dimIn()) +
                                 " != state dimB " +
                                 std::to_string(rho.dimB()));
  }
  const int da = rho.dimA();
  const int din = ch.dimIn();
  const int dout = ch.dimOut();
  if (static_cast<long>(da) * dout > kMaxTotalDimension) {
    throw TooLargeError("output dimension exceeds desk-scale cap");
  }
  Matrix out = Matrix::Zero(Eigen::Index(da) * dout, Eigen::Index(da) * dout);
  for (int a1 = 0; a1 < da; ++a1) {
    for (int a2 = 0; a2 < da; ++a2) {
      const Matrix block = rho.matrix().block(a1 * din, a2 * din, din, din);
      Matrix acc = Matrix::Zero(dout, dout);
      for (const Matrix& k : ch.kraus()) {
        acc += k * block * k.adjoint();
      }
      out.block(a1 * dout, a2 * dout, dout, dout) = acc;
    }
  }
  return BipartiteOperator(da, dout,
                           HermitianOperator(std::move(out), detail::trusted));
}

// Quantum erasure channel: transmit with probability 1-p, otherwise replace
// by the flag state |e>, the last basis vector of the (d+1)-dimensional
// output space.
inline QuantumChannel erasure_channel(int d, double p) {
  if (d < 1) throw BadDimensionsError("input dimension must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw BadProbabilityError("erasure probability must lie in [0, 1]");
  }
  std::vector<Matrix> kraus;
  Matrix transmit = Matrix::Zero(d + 1, d);
  transmit.topRows(d) = std::sqrt(1.0 - p) * identity(d);
  kraus.push_back(std::move(transmit));
  for (int i = 0; i < d; ++i) {
    Matrix erase = Matrix::Zero(d + 1, d);
    erase(d, i) = std::sqrt(p);
    kraus.push_back(std::move(erase));
  }
  return QuantumChannel(d, d + 1, std::move(kraus));
}

// n-fold tensor power; the Kraus set is every n-fold product of the base
// Kraus operators.
inline QuantumChannel tensor_power(const QuantumChannel& ch, int n) {
  if (n < 1) throw BadParameterError("tensor power requires n >= 1");
  double out_total = 1.0, in_total = 1.0, kraus_entries = 1.0;
  for (int i = 0; i < n; ++i) {
    out_total *= ch.dimOut();
    in_total *= ch.dimIn();
    kraus_entries *=
        static_cast<double>(ch.kraus().size()) * ch.dimOut() * ch.dimIn();
    if (out_total > kMaxTotalDimension || in_total > kMaxTotalDimension ||
        kraus_entries > static_cast<double>(1L << 25)) {
      throw TooLargeError("tensor power exceeds desk-scale cap");
    }
  }
  std::vector<Matrix> kraus = {identity(1)};
  for (int i = 0; i < n; ++i) {
    std::vector<Matrix> next;
    next.reserve(kraus.size() * ch.kraus().size());
    for (const Matrix& a : kraus) {
      for (const Matrix& k : ch.kraus()) {
        next.push_back(kron(a, k));
      }
    }
    kraus = std::move(next);
  }
  const int din = static_cast<int>(in_total);
  const int dout = static_cast<int>(out_total);
  return QuantumChannel(din, dout, std::move(kraus));
}

// One weighted block of the erasure output decomposition. Bit i of `mask`
// set means slot i suffered an erasure.
struct ErasureBlock {
  std::uint32_t mask;
  double weight;
  BipartiteOperator state;
};

struct ErasureBlockDecomposition {
  int d;
  double p;
  int n;
  std::vector<ErasureBlock> blocks;
};

namespace detail {

// Replace slot `i` (0-based, of n slots each of dim `dm`) of the B part by
// the given single-slot operator, tracing out whatever was there.
inline Matrix erase_slot(const Matrix& m, int da, int dm, int n, int i,
                         const Matrix& replacement) {
  int left = da;
  for (int j = 0; j < i; ++j) left *= dm;
  int right = 1;
  for (int j = i + 1; j < n; ++j) right *= dm;
  const Matrix reduced = trace_middle_factor(m, left, dm, right);
  return embed_middle_factor(reduced, left, right, replacement);
}

}  // namespace detail

// Expand the n-use erasure output into its 2^n weighted orthogonal blocks.
// `rho_aan` lives on A (x) A'^n with dimB = d^n.
inline ErasureBlockDecomposition erasure_block_decomposition(
    int d, double p, int n, const BipartiteOperator& rho_aan) {
  if (d < 1) throw BadDimensionsError("input dimension must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw BadProbabilityError("erasure probability must lie in [0, 1]");
  }
  if (n < 1 || n > 8) throw TooLargeError("block decomposition requires n in [1, 8]");
  long dbn = 1;
  for (int i = 0; i < n; ++i) dbn *= d;
  if (rho_aan.dimB() != dbn) {
    throw DimensionMismatchError("state dimB must equal d^n");
  }
  long out_dim = rho_aan.dimA();
  for (int i = 0; i < n; ++i) out_dim *= (d + 1);
  if (out_dim > kMaxTotalDimension) {
    throw TooLargeError("block decomposition exceeds desk-scale cap");
  }

  // Embed each A' factor isometrically into its B factor.
  Matrix embed_one = Matrix::Zero(d + 1, d);
  embed_one.topRows(d) = identity(d);
  Matrix embed_b = identity(1);
  for (int i = 0; i < n; ++i) embed_b = kron(embed_b, embed_one);
  const Matrix w = kron(identity(rho_aan.dimA()), embed_b);
  const Matrix sigma = w * rho_aan.matrix() * w.adjoint();

  Matrix flag = Matrix::Zero(d + 1, d + 1);
  flag(d, d) = 1.0;

  ErasureBlockDecomposition out{d, p, n, {}};
  const std::uint32_t count = 1u << n;
  out.blocks.reserve(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    Matrix zeta = sigma;
    int erased = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        zeta = detail::erase_slot(zeta, rho_aan.dimA(), d + 1, n, i, flag);
        ++erased;
      }
    }
    const double weight = std::pow(1.0 - p, n - erased) * std::pow(p, erased);
    out.blocks.push_back(ErasureBlock{
        mask, weight,
        BipartiteOperator(rho_aan.dimA(), static_cast<int>(out_dim / rho_aan.dimA()),
                          HermitianOperator(std::move(zeta), detail::trusted))});
  }
  return out;
}

// Random CPTP map via the Stinespring construction: orthonormalize a complex
// Gaussian matrix into an isometry V : in -> out (x) env and slice
// K_e = (I (x) <e|) V. Deterministic per seed.
inline QuantumChannel random_channel(int dim_in, int dim_out, int dim_env,
                                     std::uint64_t seed) {
  if (dim_in < 1 || dim_out < 1 || dim_env < 1 ||
      dim_out * dim_env < dim_in) {
    throw BadDimensionsError("need dimOut * dimEnv >= dimIn >= 1");
  }
  auto gen = substream(seed, 0);
  const Matrix g =
      gaussian_complex_matrix(dim_out * dim_env, dim_in, gen);
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix v =
      qr.householderQ() * Matrix::Identity(dim_out * dim_env, dim_in);
  std::vector<Matrix> kraus;
  kraus.reserve(dim_env);
  for (int e = 0; e < dim_env; ++e) {
    Matrix k(dim_out, dim_in);
    for (int o = 0; o < dim_out; ++o) {
      k.row(o) = v.row(Eigen::Index(o) * dim_env + e);
    }
    kraus.push_back(std::move(k));
  }
  return QuantumChannel(dim_in, dim_out, std::move(kraus));
}

}  // namespace qconv
