#pragma once

#include "sepgamma/crossnorm.hpp"

namespace sepgamma::detail {

/// Throws DimensionMismatch or SeedMismatch unless `seed` reconstructs `rho`
/// to within 1e-8 in trace norm.
void require_matching_seed(const DensityOperator& rho, const ElementaryDecomposition& seed);

}  // namespace sepgamma::detail
