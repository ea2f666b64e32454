#include "sepgamma/cli/selftest.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "sepgamma/baselines.hpp"
#include "sepgamma/crossnorm.hpp"
#include "sepgamma/errors.hpp"
#include "sepgamma/random.hpp"

namespace sepgamma::cli {

namespace {

// Second-factor indices swapped: computes the realignment of the partial
// transpose instead of the input.
ComplexMatrix swapped_realignment(const ComplexMatrix& m, const BipartiteDims& dims) {
  const Index d1 = dims.d1();
  const Index d2 = dims.d2();
  ComplexMatrix out(d1 * d1, d2 * d2);
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d1; ++j)
      for (Index k = 0; k < d2; ++k)
        for (Index l = 0; l < d2; ++l) out(i * d1 + j, k * d2 + l) = m(i * d2 + l, j * d2 + k);
  return out;
}

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome within(double got, double want, double tol) {
  std::ostringstream s;
  s << "got " << got << ", want " << want << " +- " << tol;
  return {std::abs(got - want) <= tol, s.str()};
}

Outcome at_most(double got, double bound) {
  std::ostringstream s;
  s << "max violation " << got - bound;
  return {got <= bound, s.str()};
}

ComplexMatrix random_square(Index n, Rng& rng) { return ginibre(n, n, rng); }

}  // namespace

std::vector<PropertyResult> run_selftest(const SelfTestOptions& options) {
  const RealignmentKernel realign = options.corrupt_realignment
                                        ? RealignmentKernel(swapped_realignment)
                                        : RealignmentKernel(realignment);
  const BipartiteDims qubits(2, 2);
  const BipartiteDims qutrits(3, 3);
  std::vector<PropertyResult> results;

  auto property = [&](std::string name, auto&& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, {}};
    try {
      outcome = body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    results.push_back({std::move(name), outcome.passed, ms, std::move(outcome.detail)});
  };

  property("kron mixed-product identity", [&] {
    Rng rng(1);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix a = random_square(2, rng), b = random_square(2, rng);
      const ComplexMatrix c = random_square(2, rng), d = random_square(2, rng);
      worst = std::max(worst, (kron(a, b) * kron(c, d) - kron(a * c, b * d)).cwiseAbs().maxCoeff());
    }
    return at_most(worst, 1e-12);
  });

  property("trace norm is a cross norm", [&] {
    Rng rng(2);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix u = random_square(2, rng), v = random_square(3, rng);
      worst = std::max(worst, std::abs(trace_norm(kron(u, v)) - trace_norm(u) * trace_norm(v)));
    }
    return at_most(worst, 1e-10);
  });

  property("realignment product rule", [&] {
    Rng rng(3);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix a = random_square(2, rng), b = random_square(3, rng);
      const ComplexMatrix expected = vec(a) * vec(b).transpose();
      worst = std::max(worst, (realign(kron(a, b), BipartiteDims(2, 3)) - expected).cwiseAbs().maxCoeff());
    }
    return at_most(worst, 1e-12);
  });

  property("realignment is a Frobenius isometry", [&] {
    Rng rng(4);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix m = random_square(6, rng);
      worst = std::max(worst, std::abs(realign(m, BipartiteDims(2, 3)).norm() - m.norm()));
    }
    return at_most(worst, 1e-12);
  });

  property("realignment spectrum is local-unitary invariant", [&] {
    Rng rng(5);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix m = random_density_matrix(9, 0, rng);
      const ComplexMatrix w = kron(haar_unitary(3, rng), haar_unitary(3, rng));
      const RealVector s1 = singular_values(realign(m, qutrits));
      const RealVector s2 = singular_values(realign(w * m * w.adjoint(), qutrits));
      worst = std::max(worst, (s1 - s2).cwiseAbs().maxCoeff());
    }
    return at_most(worst, 1e-9);
  });

  property("Bell realignment spectrum is (1/2, 1/2, 1/2, 1/2)", [&] {
    const RealVector s = singular_values(realign(bell_state().matrix(), qubits));
    return at_most((s - RealVector::Constant(4, 0.5)).cwiseAbs().maxCoeff(), 1e-12);
  });

  property("Werner realignment bound is max(1, (1+3p)/2)", [&] {
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const double p = i / 10.0;
      const double value = std::max(1.0, singular_values(realign(werner(p).matrix(), qubits)).sum());
      worst = std::max(worst, std::abs(value - std::max(1.0, (1.0 + 3.0 * p) / 2.0)));
    }
    return at_most(worst, 1e-9);
  });

  property("partial transpose is a trace-preserving involution", [&] {
    Rng rng(6);
    bool ok = true;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix m = random_square(6, rng);
      const BipartiteDims dims(2, 3);
      ok = ok && partial_transpose(partial_transpose(m, dims), dims) == m;
      worst = std::max(worst, std::abs(partial_transpose(m, dims).trace() - m.trace()));
    }
    Outcome o = at_most(worst, 1e-12);
    o.passed = o.passed && ok;
    return o;
  });

  property("Werner PPT minimum eigenvalue is (1-3p)/4", [&] {
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const double p = i / 10.0;
      worst = std::max(worst, std::abs(ppt_check(werner(p)).min_eigenvalue - (1.0 - 3.0 * p) / 4.0));
    }
    return at_most(worst, 1e-9);
  });

  // Random decompositions: the operator-Schmidt form of a random state,
  // scrambled by a random invertible mixing.
  auto random_decomposition = [](Rng& rng, const BipartiteDims& dims) {
    const ComplexMatrix rho = random_density_matrix(dims.composite(), 0, rng);
    const ElementaryDecomposition base = to_elementary(operator_schmidt(rho, dims), dims);
    const auto n = static_cast<Index>(base.size());
    return mix(base, ginibre(n, n, rng));
  };

  property("decomposition cost never drops below 1", [&] {
    Rng rng(7);
    double lowest = 2.0;
    for (int t = 0; t < 50; ++t) lowest = std::min(lowest, decomposition_cost(random_decomposition(rng, qubits)));
    return Outcome{lowest >= 1.0 - 1e-9, "lowest cost " + std::to_string(lowest)};
  });

  property("cost dominates the realignment nuclear norm", [&] {
    Rng rng(8);
    double worst = -1.0;
    for (int t = 0; t < 50; ++t) {
      const ElementaryDecomposition dec = random_decomposition(rng, qubits);
      worst = std::max(worst, singular_values(realign(reconstruct(dec), qubits)).sum() -
                                  decomposition_cost(dec));
    }
    return at_most(worst, 1e-9);
  });

  property("cost dominates the product-witness pairing", [&] {
    Rng rng(9);
    double worst = -1.0;
    for (int t = 0; t < 50; ++t) {
      const ElementaryDecomposition dec = random_decomposition(rng, qubits);
      const ComplexMatrix a = random_partial_isometry(2, 2, rng);
      const ComplexMatrix b = random_partial_isometry(2, 2, rng);
      worst = std::max(worst, std::abs(witness_pairing(reconstruct(dec), qubits, a, b)) -
                                  decomposition_cost(dec));
    }
    return at_most(worst, 1e-9);
  });

  property("pure states attain the realignment bound", [&] {
    Rng rng(10);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const ComplexVector psi = random_unit_vector(9, rng);
      const double cost = decomposition_cost(pure_state_decomposition(psi, qutrits));
      const double nuclear = singular_values(realign(psi * psi.adjoint(), qutrits)).sum();
      worst = std::max({worst, std::abs(cost - nuclear), std::abs(cost - pure_gamma(psi, qutrits))});
    }
    return at_most(worst, 1e-9);
  });

  property("Bell bounds meet at 2", [&] {
    SearchConfig config;
    const DensityOperator bell = bell_state();
    const double witness = lower_bound_witness(bell, config).value;
    const double upper = upper_bound_search(bell, config).cost;
    std::ostringstream s;
    s << "witness " << witness << ", upper " << upper;
    return Outcome{witness >= 2.0 - 1e-6 && upper <= 2.0 + 1e-2 && upper >= 2.0 - 1e-9, s.str()};
  });

  property("seeded separable mixture certifies as Separable", [&] {
    RandomSpec spec;
    spec.seed = 11;
    spec.kind = RandomKind::Separable;
    spec.terms = 5;
    const WitnessedState ws = random_state(spec, qutrits);
    const Certificate cert = certify(ws.state, SearchConfig{}, to_elementary(*ws.provenance));
    return Outcome{cert.verdict == Verdict::Separable && cert.reconstruction_error &&
                       *cert.reconstruction_error <= 1e-10,
                   std::string(to_string(cert.verdict))};
  });

  return results;
}

}  // namespace sepgamma::cli
