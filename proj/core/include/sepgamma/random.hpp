#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sepgamma/linalg.hpp"

namespace sepgamma {

/// Seedable engine used everywhere. mt19937_64 has a fully specified output
/// sequence; the samplers below draw from it directly so that a seed maps to
/// the same values under any standard library.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
double uniform01(Rng& rng);

/// Standard normal via Box-Muller (one draw per call, no cached state).
double standard_normal(Rng& rng);

/// Complex normal with E|z|^2 = 1.
Complex complex_normal(Rng& rng);

ComplexMatrix ginibre(Index rows, Index cols, Rng& rng);

/// Haar-distributed unit vector in C^n.
ComplexVector random_unit_vector(Index n, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix haar_unitary(Index n, Rng& rng);

/// Polar factor of a Ginibre rows x cols matrix: a partial isometry with all
/// singular values 1.
ComplexMatrix random_partial_isometry(Index rows, Index cols, Rng& rng);

/// Hilbert-Schmidt (induced) random density matrix G G^dagger / tr(G G^dagger)
/// with G of shape n x rank; rank <= 0 means full rank.
ComplexMatrix random_density_matrix(Index n, Index rank, Rng& rng);

/// Uniform point on the probability simplex with `n` vertices.
std::vector<double> uniform_simplex(std::size_t n, Rng& rng);

}  // namespace sepgamma
