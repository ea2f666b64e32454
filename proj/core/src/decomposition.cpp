#include <cmath>
#include <numbers>
#include <string>

#include "sepgamma/crossnorm.hpp"
#include "sepgamma/errors.hpp"

namespace sepgamma {

ElementaryDecomposition::ElementaryDecomposition(BipartiteDims dims,
                                                 std::vector<ElementaryTerm> terms)
    : dims_(dims), terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw Error(ErrorCode::InvalidDecomposition, "elementary decomposition has no terms");
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const ElementaryTerm& t = terms_[i];
    if (t.u.rows() != dims.d1() || t.u.cols() != dims.d1() || t.v.rows() != dims.d2() ||
        t.v.cols() != dims.d2()) {
      throw Error(ErrorCode::InvalidDecomposition,
                  "term " + std::to_string(i) + ": factor shapes do not match dims");
    }
    if (!all_finite(t.u) || !all_finite(t.v)) {
      throw Error(ErrorCode::NonFinite, "term " + std::to_string(i) + " has non-finite entries");
    }
  }
}

ElementaryDecomposition to_elementary(const SeparableDecomposition& dec) {
  std::vector<ElementaryTerm> terms;
  terms.reserve(dec.terms.size());
  for (const ProductTerm& t : dec.terms) terms.push_back({t.weight * t.rho1, t.rho2});
  return {dec.dims, std::move(terms)};
}

ElementaryDecomposition to_elementary(const OperatorSchmidt& schmidt, BipartiteDims dims) {
  std::vector<ElementaryTerm> terms;
  for (std::size_t k = 0; k < schmidt.coefficients.size(); ++k) {
    terms.push_back({schmidt.coefficients[k] * schmidt.left_factors[k], schmidt.right_factors[k]});
  }
  return {dims, std::move(terms)};
}

ElementaryDecomposition scaled(const ElementaryDecomposition& dec, Complex factor) {
  std::vector<ElementaryTerm> terms = dec.terms();
  for (auto& t : terms) t.u *= factor;
  return {dec.dims(), std::move(terms)};
}

ElementaryDecomposition concat(const ElementaryDecomposition& a, const ElementaryDecomposition& b) {
  if (!(a.dims() == b.dims())) {
    throw Error(ErrorCode::DimensionMismatch, "cannot concatenate decompositions with different dims");
  }
  std::vector<ElementaryTerm> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return {a.dims(), std::move(terms)};
}

ElementaryDecomposition mix(const ElementaryDecomposition& dec, const ComplexMatrix& g) {
  const auto n = static_cast<Index>(dec.size());
  if (g.rows() != n || g.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "mixing matrix must be " + std::to_string(n) + "x" +
                                                  std::to_string(n));
  }
  Eigen::FullPivLU<ComplexMatrix> lu(g);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::InvalidParameter, "mixing matrix is singular");
  }
  const ComplexMatrix dual = lu.inverse().transpose();
  const BipartiteDims& dims = dec.dims();
  std::vector<ElementaryTerm> terms(dec.size(),
                                    {ComplexMatrix::Zero(dims.d1(), dims.d1()),
                                     ComplexMatrix::Zero(dims.d2(), dims.d2())});
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      terms[i].u += g(i, j) * dec.terms()[j].u;
      terms[i].v += dual(i, j) * dec.terms()[j].v;
    }
  }
  return {dims, std::move(terms)};
}

double decomposition_cost(const ElementaryDecomposition& dec) {
  double cost = 0.0;
  for (const auto& t : dec.terms()) cost += trace_norm(t.u) * trace_norm(t.v);
  return cost;
}

ComplexMatrix reconstruct(const ElementaryDecomposition& dec) {
  const Index n = dec.dims().composite();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& t : dec.terms()) out += kron(t.u, t.v);
  return out;
}

ElementaryDecomposition pure_state_decomposition(const ComplexVector& psi, BipartiteDims dims) {
  if (psi.size() != dims.composite()) {
    throw Error(ErrorCode::DimensionMismatch, "state vector length does not match dims");
  }
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw Error(ErrorCode::NotNormalized, "state vector is not normalized", norm);
  }
  // psi = sum_k c_k |x_k> (x) |y_k> with x_k = U e_k and y_k = conj(V e_k).
  const SingularValueDecomposition schmidt = svd(unvec(psi, dims.d1(), dims.d2()));
  Index r = 0;
  while (r < schmidt.singular_values.size() && schmidt.singular_values(r) > 1e-12) ++r;

  std::vector<ComplexVector> left(r), right(r);
  for (Index m = 0; m < r; ++m) {
    left[m] = ComplexVector::Zero(dims.d1());
    right[m] = ComplexVector::Zero(dims.d2());
    for (Index k = 0; k < r; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((m * k) % r) /
                           static_cast<double>(r);
      const Complex phase = std::polar(std::sqrt(schmidt.singular_values(k)), angle);
      left[m] += phase * schmidt.u.col(k);
      right[m] += std::conj(phase) * schmidt.v.col(k).conjugate();
    }
  }

  const double weight = 1.0 / static_cast<double>(r * r);
  std::vector<ElementaryTerm> terms;
  terms.reserve(static_cast<std::size_t>(r * r));
  for (Index m = 0; m < r; ++m) {
    for (Index n = 0; n < r; ++n) {
      terms.push_back({weight * (left[m] * left[n].adjoint()), right[m] * right[n].adjoint()});
    }
  }
  return {dims, std::move(terms)};
}

namespace {

// Positive part of the Hermitian part of m. Leaves already-positive
// Hermitian parts untouched.
ComplexMatrix positive_hermitian_part(const ComplexMatrix& m) {
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  const HermitianEigen eig = hermitian_eig(h);
  if (eig.eigenvalues.minCoeff() >= 0.0) return h;
  const RealVector clipped = eig.eigenvalues.cwiseMax(0.0);
  ComplexMatrix p = eig.eigenvectors * clipped.cast<Complex>().asDiagonal() *
                    eig.eigenvectors.adjoint();
  return 0.5 * (p + p.adjoint());
}

}  // namespace

PositivizeResult positivize(const ElementaryDecomposition& dec, const DensityOperator& target,
                            double sep_tol) {
  if (!(dec.dims() == target.dims())) {
    throw Error(ErrorCode::DimensionMismatch, "decomposition and target have different dims");
  }
  const double cost = decomposition_cost(dec);
  if (!(cost <= 1.0 + sep_tol)) {
    throw Error(ErrorCode::CostTooHigh,
                "decomposition cost " + std::to_string(cost) + " exceeds 1 + sep_tol", cost);
  }

  SeparableDecomposition out{dec.dims(), {}};
  double total = 0.0;
  for (const ElementaryTerm& t : dec.terms()) {
    const Complex tu = t.u.trace();
    const Complex tv = t.v.trace();
    // Rotate each trace onto the bisector of the joint phase; the product
    // u (x) v is unchanged because the two rotations cancel.
    const double joint = std::arg(tu * tv);
    const Complex fix_u = std::polar(1.0, 0.5 * joint - std::arg(tu));
    const Complex fix_v = std::polar(1.0, 0.5 * joint - std::arg(tv));
    ComplexMatrix pu = positive_hermitian_part(fix_u * t.u);
    ComplexMatrix pv = positive_hermitian_part(fix_v * t.v);
    const double tr_u = pu.trace().real();
    const double tr_v = pv.trace().real();
    if (tr_u < 1e-12 || tr_v < 1e-12) continue;
    const double weight = tr_u * tr_v;
    total += weight;
    out.terms.push_back({weight, pu / tr_u, pv / tr_v});
  }
  if (out.terms.empty()) {
    throw Error(ErrorCode::InvalidDecomposition, "no term survived positivization");
  }
  for (auto& term : out.terms) term.weight /= total;

  const double error = trace_norm(target.matrix() - mixture_matrix(out));
  if (!std::isfinite(error)) throw NumericError("positivize produced a non-finite residual");
  return {std::move(out), error};
}

}  // namespace sepgamma
