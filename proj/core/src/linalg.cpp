#include "sepgamma/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "sepgamma/errors.hpp"

namespace sepgamma {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorCode::SeedMismatch: return "SeedMismatch";
    case ErrorCode::CostTooHigh: return "CostTooHigh";
  }
  return "Unknown";
}

BipartiteDims::BipartiteDims(Index d1, Index d2) : d1_(d1), d2_(d2) {
  if (d1 < 1 || d2 < 1) {
    throw Error(ErrorCode::DimensionMismatch,
                "factor dimensions must be >= 1, got (" + std::to_string(d1) + ", " +
                    std::to_string(d2) + ")");
  }
}

void BipartiteDims::require_operator(const ComplexMatrix& m) const {
  if (m.rows() != composite() || m.cols() != composite()) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected a " + std::to_string(composite()) + "x" + std::to_string(composite()) +
                    " operator for dims (" + std::to_string(d1_) + ", " + std::to_string(d2_) +
                    "), got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

void require_finite(const ComplexMatrix& m) {
  if (!all_finite(m)) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");
}

template <typename Svd>
SingularValueDecomposition unpack(const Svd& dec) {
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

}  // namespace

RealVector singular_values(const ComplexMatrix& m) {
  require_finite(m);
  if (m.size() == 0) return RealVector(0);
  if (m.rows() == 2 && m.cols() == 2) {
    return Eigen::JacobiSVD<Eigen::Matrix2cd>(Eigen::Matrix2cd(m)).singularValues();
  }
  if (m.rows() == 3 && m.cols() == 3) {
    return Eigen::JacobiSVD<Eigen::Matrix3cd>(Eigen::Matrix3cd(m)).singularValues();
  }
  if (std::min(m.rows(), m.cols()) <= 16) {
    return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues();
  }
  return Eigen::BDCSVD<ComplexMatrix>(m).singularValues();
}

SingularValueDecomposition svd(const ComplexMatrix& m) {
  require_finite(m);
  if (std::min(m.rows(), m.cols()) <= 16) {
    return unpack(Eigen::JacobiSVD<ComplexMatrix>(m, Eigen::ComputeThinU | Eigen::ComputeThinV));
  }
  return unpack(Eigen::BDCSVD<ComplexMatrix>(m, Eigen::ComputeThinU | Eigen::ComputeThinV));
}

namespace {

// s = s1 + s2 + s3 is the largest root of
//   f(x) = (x^2 - a)^2 / 4 - 2 c x - b,
// with a = sum s_i^2, b = sum_{i<j} s_i^2 s_j^2 (sum of squared 2x2 minors)
// and c = |det m|. Newton from sqrt(3a) >= s descends monotonically. Near
// rank one the root becomes double, so those inputs go to the SVD.
std::optional<double> nuclear_norm_3x3(const ComplexMatrix& m) {
  const double a = m.squaredNorm();
  if (a == 0.0) return 0.0;
  double b = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int r2 = r + 1; r2 < 3; ++r2)
      for (int k = 0; k < 3; ++k)
        for (int k2 = k + 1; k2 < 3; ++k2) b += std::norm(m(r, k) * m(r2, k2) - m(r, k2) * m(r2, k));
  const double c = std::abs(m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                            m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                            m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)));
  // e2 = s1 s2 + s1 s3 + s2 s3 >= sqrt(b); small means nearly rank one.
  if (b < 1e-8 * a * a) return std::nullopt;
  double x = std::sqrt(3.0 * a);
  for (int it = 0; it < 60; ++it) {
    const double q = x * x - a;
    const double f = 0.25 * q * q - 2.0 * c * x - b;
    const double df = x * q - 2.0 * c;
    if (!(df > 0.0)) return std::nullopt;
    const double step = f / df;
    x -= step;
    if (std::abs(step) <= 1e-15 * x) return x;
  }
  return std::nullopt;
}

}  // namespace

double nuclear_norm(const ComplexMatrix& m) {
  if (m.rows() == 2 && m.cols() == 2) {
    // (s1 + s2)^2 = |m|_F^2 + 2 |det m|
    const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return std::sqrt(m.squaredNorm() + 2.0 * std::abs(det));
  }
  if (m.rows() == 3 && m.cols() == 3 && all_finite(m)) {
    if (const auto fast = nuclear_norm_3x3(m)) return *fast;
  }
  return singular_values(m).sum();
}

double trace_norm(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NotSquare, "trace_norm requires a square matrix, got " +
                                          std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()));
  }
  return nuclear_norm(m);
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

double hermiticity_deviation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NotSquare, "hermiticity check requires a square matrix");
  }
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianEigen hermitian_eig(const ComplexMatrix& m) {
  require_finite(m);
  const double deviation = hermiticity_deviation(m);
  if (deviation > kHermitianTolerance) {
    throw Error(ErrorCode::NotHermitian,
                "matrix is not Hermitian (max deviation " + std::to_string(deviation) + ")");
  }
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Hermitian eigensolver did not converge");
  }
  // Eigen orders ascending.
  return {solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse()};
}

bool all_finite(const ComplexMatrix& m) noexcept {
  for (Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexVector vec(const ComplexMatrix& m) {
  ComplexVector out(m.size());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out(i * m.cols() + j) = m(i, j);
  }
  return out;
}

ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "unvec: vector length " + std::to_string(v.size()) +
                                                  " does not match " + std::to_string(rows) +
                                                  "x" + std::to_string(cols));
  }
  ComplexMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) out(i, j) = v(i * cols + j);
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const BipartiteDims& dims,
                            Subsystem traced) {
  dims.require_operator(m);
  const Index d1 = dims.d1();
  const Index d2 = dims.d2();
  if (traced == Subsystem::Second) {
    ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
    for (Index i = 0; i < d1; ++i)
      for (Index j = 0; j < d1; ++j)
        for (Index k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (Index k = 0; k < d2; ++k)
    for (Index l = 0; l < d2; ++l)
      for (Index i = 0; i < d1; ++i) out(k, l) += m(i * d2 + k, i * d2 + l);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const BipartiteDims& dims) {
  dims.require_operator(m);
  const Index d1 = dims.d1();
  const Index d2 = dims.d2();
  ComplexMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d1; ++j)
      for (Index k = 0; k < d2; ++k)
        for (Index l = 0; l < d2; ++l) out(i * d2 + l, j * d2 + k) = m(i * d2 + k, j * d2 + l);
  return out;
}

ComplexMatrix realignment(const ComplexMatrix& m, const BipartiteDims& dims) {
  dims.require_operator(m);
  const Index d1 = dims.d1();
  const Index d2 = dims.d2();
  ComplexMatrix out(d1 * d1, d2 * d2);
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d1; ++j)
      for (Index k = 0; k < d2; ++k)
        for (Index l = 0; l < d2; ++l) out(i * d1 + j, k * d2 + l) = m(i * d2 + k, j * d2 + l);
  return out;
}

OperatorSchmidt operator_schmidt(const ComplexMatrix& m, const BipartiteDims& dims,
                                 double rank_tol) {
  const ComplexMatrix r = realignment(m, dims);
  const SingularValueDecomposition dec = svd(r);
  OperatorSchmidt out;
  for (Index k = 0; k < dec.singular_values.size(); ++k) {
    const double s = dec.singular_values(k);
    if (!(s > rank_tol)) break;
    out.coefficients.push_back(s);
    out.left_factors.push_back(unvec(dec.u.col(k), dims.d1(), dims.d1()));
    // R = sum s u v^dagger, so the right factor is the conjugated right vector.
    out.right_factors.push_back(unvec(dec.v.col(k).conjugate(), dims.d2(), dims.d2()));
  }
  return out;
}

}  // namespace sepgamma
