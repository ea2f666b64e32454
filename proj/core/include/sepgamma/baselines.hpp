#pragma once

#include <vector>

#include "sepgamma/linalg.hpp"
#include "sepgamma/states.hpp"

namespace sepgamma {

struct PptReport {
  double min_eigenvalue;
  bool is_ppt;  // min_eigenvalue >= -tol
};

/// Minimum eigenvalue of the partial transpose. Necessary for separability
/// in every dimension; also sufficient on 2 (x) 2 and 2 (x) 3.
PptReport ppt_check(const DensityOperator& rho, double tol = 1e-9);

/// Singular values of psi reshaped to d1 x d2 (descending). psi must be a
/// unit vector within 1e-10.
std::vector<double> schmidt_coefficients(const ComplexVector& psi, BipartiteDims dims);

/// (sum_k c_k)^2 over the Schmidt coefficients: the cross norm of |psi><psi|.
double pure_gamma(const ComplexVector& psi, BipartiteDims dims);

}  // namespace sepgamma
