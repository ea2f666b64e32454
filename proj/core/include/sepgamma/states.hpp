#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sepgamma/linalg.hpp"

namespace sepgamma {

inline constexpr double kStateTolerance = 1e-8;

/// A validated state on H1 (x) H2: Hermitian, positive semidefinite and
/// unit-trace, each within kStateTolerance.
class DensityOperator {
 public:
  /// Throws Error with DimensionMismatch, NonFinite, NotHermitian,
  /// NotPositive (value = minimum eigenvalue) or TraceNotOne (value = trace).
  static DensityOperator from_matrix(ComplexMatrix m, BipartiteDims dims);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const BipartiteDims& dims() const noexcept { return dims_; }

 private:
  DensityOperator(ComplexMatrix m, BipartiteDims dims)
      : matrix_(std::move(m)), dims_(dims) {}

  ComplexMatrix matrix_;
  BipartiteDims dims_;
};

struct ProductTerm {
  double weight;
  ComplexMatrix rho1;  // d1 x d1
  ComplexMatrix rho2;  // d2 x d2
};

/// sum_i weight_i rho1_i (x) rho2_i with positive weights summing to one and
/// unit-trace positive factors.
struct SeparableDecomposition {
  BipartiteDims dims;
  std::vector<ProductTerm> terms;
};

/// Throws Error(InvalidDecomposition) describing the first violated invariant.
void validate(const SeparableDecomposition& dec);

/// Sum of weight_i rho1_i (x) rho2_i without any validation.
ComplexMatrix mixture_matrix(const SeparableDecomposition& dec);

/// A state together with the separable decomposition it was built from.
struct WitnessedState {
  DensityOperator state;
  std::optional<SeparableDecomposition> provenance;
};

WitnessedState separable_mixture(const SeparableDecomposition& dec);

/// |psi><psi|; psi must be a unit vector (1e-10) of length d1 * d2.
DensityOperator pure_density(const ComplexVector& psi, BipartiteDims dims);

/// p |Psi-><Psi-| + (1 - p) I/4 on 2 (x) 2, p in [0, 1].
DensityOperator werner(double p);

/// Projector onto (1/sqrt d) sum_k |kk>, d >= 2.
DensityOperator max_entangled(Index d);

/// |Phi+><Phi+| on 2 (x) 2.
DensityOperator bell_state();

enum class RandomKind { Pure, MixedHs, Separable };

struct RandomSpec {
  std::uint64_t seed = 0;
  RandomKind kind = RandomKind::MixedHs;
  /// MixedHs: Ginibre rank, 0 for full rank.
  Index rank = 0;
  /// Separable: number of product terms.
  Index terms = 4;
  /// Separable: Ginibre rank of each factor density, 0 for full rank.
  Index factor_rank = 0;
};

/// Deterministic in spec.seed. For RandomKind::Separable the provenance
/// decomposition is attached.
WitnessedState random_state(const RandomSpec& spec, BipartiteDims dims);

}  // namespace sepgamma
