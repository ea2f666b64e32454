#pragma once

// Bounds on the greatest cross norm
//
//   |t|_gamma = inf { sum_i |u_i|_1 |v_i|_1 : t = sum_i u_i (x) v_i }
//
// of a bipartite density operator, and the separability certificate built on
// them: a state is separable exactly when |rho|_gamma = 1.
//
// Lower bounds are sound by construction (realignment nuclear norm, product
// witness pairing, and the trace-norm floor 1). Upper bounds come from
// explicit decompositions, so every reported upper value is attained by the
// attached witness.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sepgamma/linalg.hpp"
#include "sepgamma/states.hpp"

namespace sepgamma {

struct ElementaryTerm {
  ComplexMatrix u;  // d1 x d1
  ComplexMatrix v;  // d2 x d2
};

/// Finite sum of elementary tensors sum_i u_i (x) v_i. Never empty.
class ElementaryDecomposition {
 public:
  /// Throws Error(InvalidDecomposition) on an empty term list or a factor
  /// whose shape does not match `dims`.
  ElementaryDecomposition(BipartiteDims dims, std::vector<ElementaryTerm> terms);

  const BipartiteDims& dims() const noexcept { return dims_; }
  const std::vector<ElementaryTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

 private:
  BipartiteDims dims_;
  std::vector<ElementaryTerm> terms_;
};

/// u_i = weight_i rho1_i, v_i = rho2_i.
ElementaryDecomposition to_elementary(const SeparableDecomposition& dec);

/// u_k = coefficient_k left_k, v_k = right_k. Throws if `schmidt` is empty.
ElementaryDecomposition to_elementary(const OperatorSchmidt& schmidt, BipartiteDims dims);

/// Every u_i multiplied by `factor`.
ElementaryDecomposition scaled(const ElementaryDecomposition& dec, Complex factor);

/// Term lists of `a` followed by `b`; dims must agree.
ElementaryDecomposition concat(const ElementaryDecomposition& a, const ElementaryDecomposition& b);

/// u'_i = sum_j G_ij u_j, v'_i = sum_j (G^-T)_ij v_j. Leaves the reconstruction
/// unchanged for any invertible square G of size dec.size().
ElementaryDecomposition mix(const ElementaryDecomposition& dec, const ComplexMatrix& g);

/// sum_i |u_i|_1 |v_i|_1.
double decomposition_cost(const ElementaryDecomposition& dec);

/// sum_i u_i (x) v_i.
ComplexMatrix reconstruct(const ElementaryDecomposition& dec);

/// Closed-form optimal decomposition of |psi><psi|: r^2 rank-one terms whose
/// cost equals (sum_k c_k)^2 for Schmidt coefficients c_k of psi.
ElementaryDecomposition pure_state_decomposition(const ComplexVector& psi, BipartiteDims dims);

struct SearchConfig {
  int restarts = 16;
  int max_iters = 2000;
  double step_init = 0.1;
  double step_shrink = 0.5;
  std::uint64_t seed = 0;
  int rank_padding = 0;

  double entangled_tol = 1e-6;
  double sep_tol = 1e-3;
  double sep_reconstruction_tol = 1e-4;
  double convergence_tol = 1e-10;

  /// Worker threads for independent restarts. Does not affect results.
  unsigned threads = 1;
};

/// Throws Error(InvalidParameter) for non-positive budgets or tolerances,
/// step_shrink outside (0, 1) or negative rank_padding.
void validate(const SearchConfig& config);

enum class LowerMethod { TraceFloor, Realignment, Witness };

std::string_view to_string(LowerMethod method) noexcept;

struct RealignmentBound {
  double value;                 // max(1, raw)
  double raw;                   // nuclear norm of the realignment
  std::vector<double> spectrum;  // singular values, descending
};

RealignmentBound lower_bound_realignment(const DensityOperator& rho);

/// Product pairing vec(A)^T rho vec(B) for d1 x d2 matrices A and B, i.e.
/// sum rho[(i,k),(j,l)] A(i,k) B(j,l). For operator-norm contractions its
/// modulus is at most sum_i |u_i|_1 |v_i|_1 for every decomposition of rho.
Complex witness_pairing(const ComplexMatrix& rho, const BipartiteDims& dims,
                        const ComplexMatrix& a, const ComplexMatrix& b);

struct WitnessBound {
  double value;     // max(1, achieved)
  double achieved;  // |witness_pairing(rho, a, b)|
  ComplexMatrix a;
  ComplexMatrix b;
  int iterations = 0;                   // half-steps of the winning restart
  std::vector<double> objective_history;  // winning restart, one entry per half-step
};

/// See-saw maximization of |vec(A)^T rho vec(B)| over contractions A, B.
WitnessBound lower_bound_witness(const DensityOperator& rho, const SearchConfig& config);

struct UpperBound {
  double cost;
  double initial_cost;
  ElementaryDecomposition witness;
  int iterations = 0;  // sweeps used by the selected restart
  int restart = 0;     // index of the selected restart
};

/// Stochastic hill-climbing over invertible mixings of a starting
/// decomposition (operator-Schmidt, or `seed` when given). Throws
/// Error(SeedMismatch) if `seed` does not reconstruct rho within 1e-8.
UpperBound upper_bound_search(const DensityOperator& rho, const SearchConfig& config,
                              const std::optional<ElementaryDecomposition>& seed = std::nullopt);

struct GammaBounds {
  double lower = 1.0;
  LowerMethod lower_method = LowerMethod::TraceFloor;
  std::optional<double> upper;
  std::optional<ElementaryDecomposition> upper_witness;
  int witness_iterations = 0;
  int search_iterations = 0;
};

/// Both lower bounds plus the decomposition search.
GammaBounds gamma_bounds(const DensityOperator& rho, const SearchConfig& config,
                         const std::optional<ElementaryDecomposition>& seed = std::nullopt);

struct PositivizeResult {
  SeparableDecomposition decomposition;
  double reconstruction_error;  // |target - mixture|_1
};

/// Turns a decomposition of cost <= 1 + sep_tol into an explicitly separable
/// one. Throws Error(CostTooHigh) otherwise, and Error(InvalidDecomposition)
/// if no term survives.
PositivizeResult positivize(const ElementaryDecomposition& dec, const DensityOperator& target,
                            double sep_tol = SearchConfig{}.sep_tol);

enum class Verdict { Separable, Entangled, Undecided };

std::string_view to_string(Verdict verdict) noexcept;

struct WitnessEvidence {
  ComplexMatrix a;
  ComplexMatrix b;
  double value;
};

struct Certificate {
  Verdict verdict = Verdict::Undecided;
  GammaBounds bounds;
  std::optional<SeparableDecomposition> separable;  // Separable only
  std::optional<WitnessEvidence> witness;           // Entangled only
  std::optional<double> reconstruction_error;       // Separable only
};

/// Entangled when a lower bound exceeds 1 + entangled_tol; Separable when the
/// search reaches cost <= 1 + sep_tol and positivize reproduces rho within
/// sep_reconstruction_tol; Undecided otherwise.
Certificate certify(const DensityOperator& rho, const SearchConfig& config,
                    const std::optional<ElementaryDecomposition>& seed = std::nullopt);

struct MeasureInterval {
  double lo;
  std::optional<double> hi;
};

/// [lower - 1, upper - 1]; hi is absent when no upper bound is known.
MeasureInterval measure_from_bounds(const GammaBounds& bounds);

MeasureInterval entanglement_measure(const DensityOperator& rho, const SearchConfig& config);

}  // namespace sepgamma
