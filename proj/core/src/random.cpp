#include "sepgamma/random.hpp"

#include <cmath>
#include <numbers>

#include "sepgamma/errors.hpp"

namespace sepgamma {

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex complex_normal(Rng& rng) {
  const double re = standard_normal(rng);
  const double im = standard_normal(rng);
  return Complex(re, im) * std::numbers::sqrt2 * 0.5;
}

ComplexMatrix ginibre(Index rows, Index cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  // Fill in row-major order so the draw sequence matches the index convention.
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) g(i, j) = complex_normal(rng);
  return g;
}

ComplexVector random_unit_vector(Index n, Rng& rng) {
  ComplexVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = complex_normal(rng);
  const double norm = v.norm();
  if (!(norm > 0.0)) return random_unit_vector(n, rng);
  return v / norm;
}

ComplexMatrix haar_unitary(Index n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

ComplexMatrix random_partial_isometry(Index rows, Index cols, Rng& rng) {
  const SingularValueDecomposition dec = svd(ginibre(rows, cols, rng));
  return dec.u * dec.v.adjoint();
}

ComplexMatrix random_density_matrix(Index n, Index rank, Rng& rng) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "density dimension must be >= 1");
  if (rank <= 0 || rank > n) rank = n;
  const ComplexMatrix g = ginibre(n, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Exact Hermiticity; the product is Hermitian only up to rounding.
  return 0.5 * (rho + rho.adjoint());
}

std::vector<double> uniform_simplex(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    double u = uniform01(rng);
    while (u <= 0.0) u = uniform01(rng);
    x = -std::log(u);
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace sepgamma
