#include "sepgamma/states.hpp"

#include <cmath>
#include <string>

#include "sepgamma/errors.hpp"
#include "sepgamma/random.hpp"

namespace sepgamma {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Hermitian, positive and unit-trace checks shared by states and factors.
void check_density(const ComplexMatrix& m, const std::string& what) {
  if (!all_finite(m)) throw Error(ErrorCode::NonFinite, what + " has non-finite entries");
  const double herm = hermiticity_deviation(m);
  if (herm > kStateTolerance) {
    throw Error(ErrorCode::NotHermitian, what + " is not Hermitian (deviation " + fmt(herm) + ")",
                herm);
  }
  const double min_eig = hermitian_eig(m).eigenvalues.minCoeff();
  if (min_eig < -kStateTolerance) {
    throw Error(ErrorCode::NotPositive,
                what + " is not positive (minimum eigenvalue " + fmt(min_eig) + ")", min_eig);
  }
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > kStateTolerance) {
    throw Error(ErrorCode::TraceNotOne, what + " does not have unit trace (trace " + fmt(tr) + ")",
                tr);
  }
}

}  // namespace

DensityOperator DensityOperator::from_matrix(ComplexMatrix m, BipartiteDims dims) {
  dims.require_operator(m);
  check_density(m, "density operator");
  return DensityOperator(std::move(m), dims);
}

void validate(const SeparableDecomposition& dec) {
  if (dec.terms.empty()) {
    throw Error(ErrorCode::InvalidDecomposition, "separable decomposition has no terms");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < dec.terms.size(); ++i) {
    const ProductTerm& t = dec.terms[i];
    const std::string tag = "term " + std::to_string(i);
    if (!(t.weight > 0.0) || !std::isfinite(t.weight)) {
      throw Error(ErrorCode::InvalidDecomposition, tag + ": weight must be positive", t.weight);
    }
    if (t.rho1.rows() != dec.dims.d1() || t.rho1.cols() != dec.dims.d1() ||
        t.rho2.rows() != dec.dims.d2() || t.rho2.cols() != dec.dims.d2()) {
      throw Error(ErrorCode::InvalidDecomposition, tag + ": factor shapes do not match dims");
    }
    try {
      check_density(t.rho1, tag + " rho1");
      check_density(t.rho2, tag + " rho2");
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidDecomposition, e.what(), e.value());
    }
    total += t.weight;
  }
  if (std::abs(total - 1.0) > kStateTolerance) {
    throw Error(ErrorCode::InvalidDecomposition, "weights sum to " + fmt(total) + ", not 1", total);
  }
}

ComplexMatrix mixture_matrix(const SeparableDecomposition& dec) {
  ComplexMatrix out = ComplexMatrix::Zero(dec.dims.composite(), dec.dims.composite());
  for (const ProductTerm& t : dec.terms) out += t.weight * kron(t.rho1, t.rho2);
  return out;
}

WitnessedState separable_mixture(const SeparableDecomposition& dec) {
  validate(dec);
  return {DensityOperator::from_matrix(mixture_matrix(dec), dec.dims), dec};
}

DensityOperator pure_density(const ComplexVector& psi, BipartiteDims dims) {
  if (psi.size() != dims.composite()) {
    throw Error(ErrorCode::DimensionMismatch, "state vector length " + std::to_string(psi.size()) +
                                                  " does not match composite dimension " +
                                                  std::to_string(dims.composite()));
  }
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw Error(ErrorCode::NotNormalized, "state vector has norm " + fmt(norm), norm);
  }
  return DensityOperator::from_matrix(psi * psi.adjoint(), dims);
}

DensityOperator werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "Werner parameter must lie in [0, 1]", p);
  }
  ComplexVector singlet = ComplexVector::Zero(4);
  singlet(1) = M_SQRT1_2;
  singlet(2) = -M_SQRT1_2;
  ComplexMatrix m = p * (singlet * singlet.adjoint()) +
                    (1.0 - p) * 0.25 * ComplexMatrix::Identity(4, 4);
  return DensityOperator::from_matrix(std::move(m), BipartiteDims(2, 2));
}

DensityOperator max_entangled(Index d) {
  if (d < 2) throw Error(ErrorCode::InvalidParameter, "max_entangled requires d >= 2");
  // Entries written directly so that each nonzero is exactly 1/d.
  ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) m(a * d + a, b * d + b) = 1.0 / static_cast<double>(d);
  return DensityOperator::from_matrix(std::move(m), BipartiteDims(d, d));
}

DensityOperator bell_state() { return max_entangled(2); }

WitnessedState random_state(const RandomSpec& spec, BipartiteDims dims) {
  Rng rng(spec.seed);
  const Index n = dims.composite();
  switch (spec.kind) {
    case RandomKind::Pure: {
      const ComplexVector psi = random_unit_vector(n, rng);
      ComplexMatrix m = psi * psi.adjoint();
      return {DensityOperator::from_matrix(0.5 * (m + m.adjoint()), dims), std::nullopt};
    }
    case RandomKind::MixedHs: {
      if (spec.rank < 0 || spec.rank > n) {
        throw Error(ErrorCode::InvalidParameter, "rank must lie in [0, d1*d2]");
      }
      return {DensityOperator::from_matrix(random_density_matrix(n, spec.rank, rng), dims),
              std::nullopt};
    }
    case RandomKind::Separable: {
      if (spec.terms < 1) throw Error(ErrorCode::InvalidParameter, "terms must be >= 1");
      if (spec.factor_rank < 0) throw Error(ErrorCode::InvalidParameter, "factor_rank must be >= 0");
      SeparableDecomposition dec{dims, {}};
      const auto weights = uniform_simplex(static_cast<std::size_t>(spec.terms), rng);
      for (double w : weights) {
        ComplexMatrix rho1 = random_density_matrix(dims.d1(), spec.factor_rank, rng);
        ComplexMatrix rho2 = random_density_matrix(dims.d2(), spec.factor_rank, rng);
        dec.terms.push_back({w, std::move(rho1), std::move(rho2)});
      }
      return separable_mixture(dec);
    }
  }
  throw Error(ErrorCode::InvalidParameter, "unknown random state kind");
}

}  // namespace sepgamma
