#include "sepgamma/baselines.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "sepgamma/errors.hpp"

namespace sepgamma {

PptReport ppt_check(const DensityOperator& rho, double tol) {
  const ComplexMatrix pt = partial_transpose(rho.matrix(), rho.dims());
  const double min_eig = hermitian_eig(pt).eigenvalues.minCoeff();
  return {min_eig, min_eig >= -tol};
}

std::vector<double> schmidt_coefficients(const ComplexVector& psi, BipartiteDims dims) {
  if (psi.size() != dims.composite()) {
    throw Error(ErrorCode::DimensionMismatch, "state vector length " + std::to_string(psi.size()) +
                                                  " does not match dims");
  }
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw Error(ErrorCode::NotNormalized, "state vector is not normalized", norm);
  }
  const RealVector s = singular_values(unvec(psi, dims.d1(), dims.d2()));
  return {s.data(), s.data() + s.size()};
}

double pure_gamma(const ComplexVector& psi, BipartiteDims dims) {
  const std::vector<double> c = schmidt_coefficients(psi, dims);
  const double sum = std::accumulate(c.begin(), c.end(), 0.0);
  return sum * sum;
}

}  // namespace sepgamma
