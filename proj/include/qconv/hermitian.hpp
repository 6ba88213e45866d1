#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>

#include "qconv/errors.hpp"
#include "qconv/rng.hpp"

namespace qconv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
// Max absolute deviation allowed between an entry and the conjugate of its
// mirror entry.
inline constexpr double kHermiticity = 1e-12;
// Eigenvalues in [-kEigClip, 0) are treated as exact zeros; anything below
// is genuine negativity.
inline constexpr double kEigClip = 1e-10;
inline constexpr double kTrace = 1e-10;
// Threshold on Tr(rho * kernel projector) deciding support containment.
inline constexpr double kSupport = 1e-9;
inline constexpr double kZeroOperator = 1e-12;
}  // namespace tol

// Dense eigensolves dominate cost; refuse anything past desk scale.
inline constexpr int kMaxTotalDimension = 4096;

namespace detail {
// Tag for constructors that skip invariant validation. Reserved for values
// that are Hermitian/PSD by construction (e.g. U f(D) U^dag), where the
// absolute input tolerances would misfire on large-norm intermediates.
struct trusted_t {};
inline constexpr trusted_t trusted{};
}  // namespace detail

// ---------------------------------------------------------------------------
// Operator types
// ---------------------------------------------------------------------------

// Finite-dimensional complex Hermitian matrix. Validated on construction and
// stored exactly symmetrized, so downstream code may rely on m == m^dag.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
      throw NonHermitianError("operator must be square with dim >= 1");
    }
    const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (dev > tol::kHermiticity) {
      throw NonHermitianError("hermiticity deviation " + std::to_string(dev));
    }
    symmetrize();
  }

  HermitianOperator(Matrix m, detail::trusted_t) : m_(std::move(m)) {
    symmetrize();
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }

 private:
  void symmetrize() {
    Matrix sym = 0.5 * (m_ + m_.adjoint());
    m_ = std::move(sym);
  }

  Matrix m_;
};

// Positive semidefinite operator. Eigenvalues in [-kEigClip, 0) count as
// zero; anything below raises NotPsd.
class PsdOperator : public HermitianOperator {
 public:
  explicit PsdOperator(Matrix m) : HermitianOperator(std::move(m)) {
    validate();
  }
  explicit PsdOperator(const HermitianOperator& h) : HermitianOperator(h) {
    validate();
  }
  PsdOperator(Matrix m, detail::trusted_t)
      : HermitianOperator(std::move(m), detail::trusted) {}

 private:
  void validate() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix(),
                                             Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < -tol::kEigClip) {
      throw NotPsdError("smallest eigenvalue " + std::to_string(lo));
    }
  }
};

// PSD operator of unit trace.
class DensityOperator : public PsdOperator {
 public:
  explicit DensityOperator(Matrix m) : PsdOperator(std::move(m)) {
    validate();
  }
  explicit DensityOperator(const HermitianOperator& h) : PsdOperator(h) {
    validate();
  }
  DensityOperator(Matrix m, detail::trusted_t)
      : PsdOperator(std::move(m), detail::trusted) {}

 private:
  void validate() const {
    if (std::abs(trace() - 1.0) > tol::kTrace) {
      throw NotDensityError("trace deviates from 1 by " +
                            std::to_string(std::abs(trace() - 1.0)));
    }
  }
};

// Operator on a tensor-product space A (x) B. Convention throughout the
// library: A indexes the slow (outer) factor, B the fast (inner) one, so the
// composite index is a*dimB + b. Multi-copy systems A B1...Bn flatten in that
// order.
class BipartiteOperator {
 public:
  BipartiteOperator(int dim_a, int dim_b, HermitianOperator op)
      : dim_a_(dim_a), dim_b_(dim_b), op_(std::move(op)) {
    if (dim_a < 1 || dim_b < 1) {
      throw BadDimensionsError("subsystem dimensions must be >= 1");
    }
    if (op_.dim() != dim_a * dim_b) {
      throw DimensionMismatchError(
          "operator dim " + std::to_string(op_.dim()) + " != " +
          std::to_string(dim_a) + " * " + std::to_string(dim_b));
    }
  }

  int dimA() const { return dim_a_; }
  int dimB() const { return dim_b_; }
  const HermitianOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  double trace() const { return op_.trace(); }

 private:
  int dim_a_;
  int dim_b_;
  HermitianOperator op_;
};

// Eigendecomposition with eigenvalues sorted descending and orthonormal
// eigenvector columns.
struct Spectrum {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

enum class Subsystem { A, B };

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

inline Spectrum eig_hermitian(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  if (es.info() != Eigen::Success) {
    throw Error("eigensolver did not converge");
  }
  Spectrum s;
  s.eigenvalues = es.eigenvalues().reverse();
  s.eigenvectors = es.eigenvectors().rowwise().reverse();
  return s;
}

namespace detail {

// Apply the PSD clipping rule to a raw eigenvalue vector.
inline RealVector clip_psd(const RealVector& w) {
  RealVector out = w;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out[i] < -tol::kEigClip) {
      throw NotPsdError("eigenvalue " + std::to_string(out[i]) +
                        " below clipping tolerance");
    }
    if (out[i] < 0.0) out[i] = 0.0;
  }
  return out;
}

inline Matrix reassemble(const Spectrum& s, const RealVector& w) {
  return s.eigenvectors * w.asDiagonal() * s.eigenvectors.adjoint();
}

}  // namespace detail

// Fractional power on the support: zero eigenvalues (after clipping) map to
// zero for every exponent, which gives the pseudo-inverse for t < 0.
inline PsdOperator matrix_power(const PsdOperator& p, double t) {
  const Spectrum s = eig_hermitian(p);
  const RealVector w = detail::clip_psd(s.eigenvalues);
  RealVector wt(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    wt[i] = (w[i] > 0.0) ? std::pow(w[i], t) : 0.0;
  }
  return PsdOperator(detail::reassemble(s, wt), detail::trusted);
}

// Sum of eigenvalue^t over the support, i.e. Tr matrix_power(p, t) without
// forming the matrix.
inline double trace_power(const PsdOperator& p, double t) {
  const Spectrum s = eig_hermitian(p);
  const RealVector w = detail::clip_psd(s.eigenvalues);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) acc += std::pow(w[i], t);
  }
  return acc;
}

// Positive part of the Jordan decomposition H = H^+ - H^-.
inline PsdOperator positive_part(const HermitianOperator& h) {
  const Spectrum s = eig_hermitian(h);
  RealVector wp(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < wp.size(); ++i) {
    wp[i] = (s.eigenvalues[i] > 0.0) ? s.eigenvalues[i] : 0.0;
  }
  return PsdOperator(detail::reassemble(s, wp), detail::trusted);
}

inline HermitianOperator partial_trace(const BipartiteOperator& x,
                                       Subsystem which) {
  const int da = x.dimA();
  const int db = x.dimB();
  const Matrix& m = x.matrix();
  if (which == Subsystem::A) {
    Matrix out = Matrix::Zero(db, db);
    for (int a = 0; a < da; ++a) {
      out += m.block(a * db, a * db, db, db);
    }
    return HermitianOperator(std::move(out), detail::trusted);
  }
  Matrix out(da, da);
  for (int a1 = 0; a1 < da; ++a1) {
    for (int a2 = 0; a2 < da; ++a2) {
      out(a1, a2) = m.block(a1 * db, a2 * db, db, db).trace();
    }
  }
  return HermitianOperator(std::move(out), detail::trusted);
}

// Kronecker product with the A-outer/B-inner index convention.
inline Matrix kron(const Matrix& x, const Matrix& y) {
  const Eigen::Index xr = x.rows(), xc = x.cols();
  const Eigen::Index yr = y.rows(), yc = y.cols();
  Matrix out(xr * yr, xc * yc);
  for (Eigen::Index i = 0; i < xr; ++i) {
    for (Eigen::Index j = 0; j < xc; ++j) {
      out.block(i * yr, j * yc, yr, yc) = x(i, j) * y;
    }
  }
  return out;
}

inline HermitianOperator tensor_product(const HermitianOperator& x,
                                        const HermitianOperator& y) {
  return HermitianOperator(kron(x.matrix(), y.matrix()), detail::trusted);
}

inline Matrix identity(int d) { return Matrix::Identity(d, d); }

// Trace out the middle factor of an L (x) M (x) R composite operator.
inline Matrix trace_middle_factor(const Matrix& m, int dl, int dm, int dr) {
  if (m.rows() != Eigen::Index(dl) * dm * dr || m.rows() != m.cols()) {
    throw DimensionMismatchError("trace_middle_factor: bad factorization");
  }
  Matrix out = Matrix::Zero(Eigen::Index(dl) * dr, Eigen::Index(dl) * dr);
  for (int l1 = 0; l1 < dl; ++l1) {
    for (int l2 = 0; l2 < dl; ++l2) {
      for (int r1 = 0; r1 < dr; ++r1) {
        for (int r2 = 0; r2 < dr; ++r2) {
          Complex acc(0.0, 0.0);
          for (int k = 0; k < dm; ++k) {
            acc += m((Eigen::Index(l1) * dm + k) * dr + r1,
                     (Eigen::Index(l2) * dm + k) * dr + r2);
          }
          out(Eigen::Index(l1) * dr + r1, Eigen::Index(l2) * dr + r2) = acc;
        }
      }
    }
  }
  return out;
}

// Insert `mid` as a new middle factor: reduced on L (x) R becomes
// reduced (x)_middle mid on L (x) M (x) R.
inline Matrix embed_middle_factor(const Matrix& reduced, int dl, int dr,
                                  const Matrix& mid) {
  const int dm = static_cast<int>(mid.rows());
  if (reduced.rows() != Eigen::Index(dl) * dr || mid.rows() != mid.cols()) {
    throw DimensionMismatchError("embed_middle_factor: bad factorization");
  }
  Matrix out(Eigen::Index(dl) * dm * dr, Eigen::Index(dl) * dm * dr);
  for (int l1 = 0; l1 < dl; ++l1) {
    for (int l2 = 0; l2 < dl; ++l2) {
      for (int k1 = 0; k1 < dm; ++k1) {
        for (int k2 = 0; k2 < dm; ++k2) {
          for (int r1 = 0; r1 < dr; ++r1) {
            for (int r2 = 0; r2 < dr; ++r2) {
              out((Eigen::Index(l1) * dm + k1) * dr + r1,
                  (Eigen::Index(l2) * dm + k2) * dr + r2) =
                  reduced(Eigen::Index(l1) * dr + r1,
                          Eigen::Index(l2) * dr + r2) *
                  mid(k1, k2);
            }
          }
        }
      }
    }
  }
  return out;
}

// Projector onto the maximally entangled state d^{-1/2} sum_i |i>|i>.
inline BipartiteOperator maximally_entangled(int d) {
  if (d < 1) throw BadDimensionsError("dimension must be >= 1");
  Matrix m = Matrix::Zero(Eigen::Index(d) * d, Eigen::Index(d) * d);
  const double w = 1.0 / static_cast<double>(d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      m(Eigen::Index(i) * d + i, Eigen::Index(j) * d + j) = w;
    }
  }
  return BipartiteOperator(d, d,
                           HermitianOperator(std::move(m), detail::trusted));
}

// G G^dag normalized to unit trace, G a d x d standard complex Gaussian
// matrix from the seeded generator. Full rank with probability 1.
inline DensityOperator random_density(int d, std::uint64_t seed) {
  if (d < 1) throw BadDimensionsError("dimension must be >= 1");
  auto gen = substream(seed, 0);
  const Matrix g = gaussian_complex_matrix(d, d, gen);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator(std::move(m), detail::trusted);
}

}  // namespace qconv
