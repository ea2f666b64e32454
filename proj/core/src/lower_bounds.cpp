#include <algorithm>
#include <cmath>

#include "sepgamma/crossnorm.hpp"
#include "sepgamma/errors.hpp"
#include "sepgamma/random.hpp"

namespace sepgamma {

RealignmentBound lower_bound_realignment(const DensityOperator& rho) {
  const RealVector s = singular_values(realignment(rho.matrix(), rho.dims()));
  RealignmentBound out;
  out.spectrum.assign(s.data(), s.data() + s.size());
  out.raw = s.sum();
  if (!std::isfinite(out.raw)) throw NumericError("realignment spectrum is not finite");
  out.value = std::max(1.0, out.raw);
  return out;
}

Complex witness_pairing(const ComplexMatrix& rho, const BipartiteDims& dims,
                        const ComplexMatrix& a, const ComplexMatrix& b) {
  dims.require_operator(rho);
  if (a.rows() != dims.d1() || a.cols() != dims.d2() || b.rows() != dims.d1() ||
      b.cols() != dims.d2()) {
    throw Error(ErrorCode::DimensionMismatch, "witness factors must be d1 x d2");
  }
  return vec(a).transpose() * rho * vec(b);
}

namespace {

struct HalfStep {
  ComplexMatrix factor;
  double value;
};

// argmax over contractions X of |sum X(i,k) W(i,k)| is conj(U V^dagger) for
// W = U S V^dagger, attaining the trace norm of W.
HalfStep best_response(const ComplexVector& w, const BipartiteDims& dims) {
  const SingularValueDecomposition dec = svd(unvec(w, dims.d1(), dims.d2()));
  return {(dec.u * dec.v.adjoint()).conjugate(), dec.singular_values.sum()};
}

ComplexMatrix polar_factor(const ComplexMatrix& m) {
  const SingularValueDecomposition dec = svd(m);
  return dec.u * dec.v.adjoint();
}

}  // namespace

WitnessBound lower_bound_witness(const DensityOperator& rho, const SearchConfig& config) {
  validate(config);
  const BipartiteDims& dims = rho.dims();
  const ComplexMatrix& m = rho.matrix();
  const ComplexMatrix mt = m.transpose();

  std::optional<WitnessBound> best;
  for (int r = 0; r < config.restarts; ++r) {
    ComplexMatrix b;
    if (r == 0) {
      // Top eigenvector reshaped to d1 x d2; its polar factor is optimal for
      // pure states.
      const HermitianEigen eig = hermitian_eig(m);
      b = polar_factor(unvec(eig.eigenvectors.col(0), dims.d1(), dims.d2()));
    } else {
      Rng rng(config.seed + static_cast<std::uint64_t>(r));
      b = random_partial_isometry(dims.d1(), dims.d2(), rng);
    }

    WitnessBound current{0.0, 0.0, ComplexMatrix(), b, 0, {}};
    double previous = -1.0;
    for (int it = 0; it < config.max_iters; ++it) {
      HalfStep step_a = best_response(m * vec(current.b), dims);
      current.a = std::move(step_a.factor);
      current.objective_history.push_back(step_a.value);
      HalfStep step_b = best_response(mt * vec(current.a), dims);
      current.b = std::move(step_b.factor);
      current.objective_history.push_back(step_b.value);
      current.iterations += 2;
      if (step_b.value - previous < config.convergence_tol) break;
      previous = step_b.value;
    }
    current.achieved = std::abs(witness_pairing(m, dims, current.a, current.b));
    if (!std::isfinite(current.achieved)) throw NumericError("witness value is not finite");
    if (!best || current.achieved > best->achieved) best = std::move(current);
  }
  best->value = std::max(1.0, best->achieved);
  return std::move(*best);
}

}  // namespace sepgamma
