#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace sepgamma {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Factor dimensions of a bipartite space H1 (x) H2.
///
/// Composite indices are first-factor major: (i, k) -> i * d2 + k. Every
/// transform in this library (kron, partial trace/transpose, realignment,
/// vec) follows this convention.
class BipartiteDims {
 public:
  BipartiteDims(Index d1, Index d2);

  Index d1() const noexcept { return d1_; }
  Index d2() const noexcept { return d2_; }
  Index composite() const noexcept { return d1_ * d2_; }

  /// Throws DimensionMismatch unless `m` is composite x composite.
  void require_operator(const ComplexMatrix& m) const;

  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;

 private:
  Index d1_;
  Index d2_;
};

enum class Subsystem { First, Second };

struct HermitianEigen {
  RealVector eigenvalues;      // descending
  ComplexMatrix eigenvectors;  // columns, matching eigenvalues
};

struct SingularValueDecomposition {
  ComplexMatrix u;            // rows x k, orthonormal columns
  RealVector singular_values;  // descending, k = min(rows, cols)
  ComplexMatrix v;            // cols x k, orthonormal columns
};

/// Operator-Schmidt form m = sum_k coefficients[k] * left[k] (x) right[k].
struct OperatorSchmidt {
  std::vector<double> coefficients;
  std::vector<ComplexMatrix> left_factors;
  std::vector<ComplexMatrix> right_factors;
};

inline constexpr double kHermitianTolerance = 1e-8;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Sum of singular values. Rejects non-square input.
double trace_norm(const ComplexMatrix& m);

/// Sum of singular values of a matrix of any shape.
double nuclear_norm(const ComplexMatrix& m);

/// Largest singular value; 0 for an empty matrix.
double operator_norm(const ComplexMatrix& m);

RealVector singular_values(const ComplexMatrix& m);

SingularValueDecomposition svd(const ComplexMatrix& m);

/// Eigendecomposition of a Hermitian matrix (max |m - m^dagger| <= 1e-8).
HermitianEigen hermitian_eig(const ComplexMatrix& m);

/// Largest |m(i,j) - conj(m(j,i))|.
double hermiticity_deviation(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m) noexcept;

/// Row-major vectorization: vec(m)[i * cols + j] = m(i, j).
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols);

/// Trace over the `traced` factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, const BipartiteDims& dims,
                            Subsystem traced);

/// Transpose of the second factor: ((i,k),(j,l)) -> ((i,l),(j,k)).
ComplexMatrix partial_transpose(const ComplexMatrix& m, const BipartiteDims& dims);

/// d1^2 x d2^2 rearrangement with R[i*d1+j, k*d2+l] = m[i*d2+k, j*d2+l], so
/// that R(A (x) B) = vec(A) vec(B)^T.
ComplexMatrix realignment(const ComplexMatrix& m, const BipartiteDims& dims);

/// Operator-Schmidt decomposition from the SVD of the realignment; terms with
/// coefficient <= rank_tol are dropped.
OperatorSchmidt operator_schmidt(const ComplexMatrix& m, const BipartiteDims& dims,
                                 double rank_tol = 1e-12);

}  // namespace sepgamma
