#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "sepgamma/baselines.hpp"
#include "sepgamma/crossnorm.hpp"
#include "sepgamma/errors.hpp"
#include "sepgamma/random.hpp"

using namespace sepgamma;
using Catch::Matchers::WithinAbs;

TEST_CASE("ppt_check", "[ppt]") {
  Rng rng(60);
  const ComplexMatrix r1 = random_density_matrix(2, 0, rng), r2 = random_density_matrix(2, 0, rng);
  const PptReport product = ppt_check(DensityOperator::from_matrix(kron(r1, r2), BipartiteDims(2, 2)));
  CHECK(product.is_ppt);
  CHECK(product.min_eigenvalue >= 0.0);

  const PptReport bell = ppt_check(bell_state());
  CHECK_THAT(bell.min_eigenvalue, WithinAbs(-0.5, 1e-12));
  CHECK(!bell.is_ppt);

  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    const double oracle_min =
        oracle::hermitian_eigenvalues(partial_transpose(oracle::werner_from_paulis(p), BipartiteDims(2, 2))).back();
    CHECK_THAT(ppt_check(werner(p)).min_eigenvalue, WithinAbs(oracle_min, 1e-12));
    CHECK_THAT(oracle_min, WithinAbs((1.0 - 3.0 * p) / 4.0, 1e-12));
  }

  const PptReport loose = ppt_check(bell_state(), 0.6);
  CHECK(loose.is_ppt);
}

TEST_CASE("separable mixtures are PPT in every dimension", "[ppt][property]") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RandomSpec spec;
    spec.seed = seed;
    spec.kind = RandomKind::Separable;
    spec.terms = 1 + static_cast<Index>(seed % 6);
    spec.factor_rank = seed % 3 == 0 ? 1 : 0;
    const BipartiteDims dims(2 + static_cast<Index>(seed % 2), 2 + static_cast<Index>(seed % 3));
    CHECK(ppt_check(random_state(spec, dims).state).is_ppt);
  }
}

TEST_CASE("schmidt coefficients", "[schmidt]") {
  const BipartiteDims qubits(2, 2);
  ComplexVector zero = ComplexVector::Zero(4);
  zero(0) = 1.0;
  const auto c0 = schmidt_coefficients(zero, qubits);
  CHECK_THAT(c0[0], WithinAbs(1.0, 1e-15));
  for (std::size_t k = 1; k < c0.size(); ++k) CHECK(c0[k] < 1e-15);

  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const auto cb = schmidt_coefficients(phi, qubits);
  CHECK_THAT(cb[0], WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(cb[1], WithinAbs(1.0 / std::sqrt(2.0), 1e-15));

  Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    const BipartiteDims dims(2, 3);
    const ComplexVector psi = random_unit_vector(6, rng);
    const auto c = schmidt_coefficients(psi, dims);
    double sq = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      sq += c[k] * c[k];
      if (k > 0) CHECK(c[k] <= c[k - 1]);
    }
    CHECK_THAT(sq, WithinAbs(1.0, 1e-10));
    const auto ref = oracle::singular_values(unvec(psi, 2, 3));
    for (std::size_t k = 0; k < c.size(); ++k) CHECK_THAT(c[k], WithinAbs(ref[k], 1e-12));
  }

  try {
    schmidt_coefficients(2.0 * zero, qubits);
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormalized);
  }
}

TEST_CASE("pure gamma", "[pure]") {
  const BipartiteDims qubits(2, 2);
  ComplexVector product = ComplexVector::Zero(4);
  product(2) = 1.0;
  CHECK_THAT(pure_gamma(product, qubits), WithinAbs(1.0, 1e-12));

  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  CHECK_THAT(pure_gamma(phi, qubits), WithinAbs(2.0, 1e-12));
  CHECK_THAT(pure_gamma(phi, qubits), WithinAbs(oracle::trace_norm(realignment(phi * phi.adjoint(), qubits)), 1e-12));

  Rng rng(62);
  const BipartiteDims qutrits(3, 3);
  for (int t = 0; t < 20; ++t) {
    const ComplexVector psi = random_unit_vector(9, rng);
    const double g = pure_gamma(psi, qutrits);
    CHECK(g > 1.0 + 1e-9);
    CHECK_THAT(g, WithinAbs(lower_bound_realignment(pure_density(psi, qutrits)).value, 1e-9));
    CHECK_THAT(g, WithinAbs(decomposition_cost(pure_state_decomposition(psi, qutrits)), 1e-9));

    const ComplexVector a = random_unit_vector(3, rng), b = random_unit_vector(3, rng);
    ComplexVector prod(9);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) prod(i * 3 + j) = a(i) * b(j);
    CHECK_THAT(pure_gamma(prod, qutrits), WithinAbs(1.0, 1e-9));
  }
  CHECK_THROWS_AS(pure_gamma(3.0 * phi, qubits), Error);
}
