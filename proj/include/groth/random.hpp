#pragma once

// Seeded samplers for property tests and the sampling experiments.
// All draws go through std::mt19937_64 so runs are reproducible per seed.

#include <cstdint>
#include <random>

#include "groth/linalg.hpp"

namespace groth {

using Rng = std::mt19937_64;

/// Seed for the k-th independent stream derived from a base seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

Complex complex_gaussian(Rng& rng);
Matrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols);
Vector random_unit_vector(Rng& rng, std::size_t n);
Vector random_torus_point(Rng& rng, std::size_t n);

/// Haar unitary: Q factor of a Gaussian matrix with positive R diagonal (Gram-Schmidt).
Matrix random_unitary(Rng& rng, std::size_t n);
Matrix random_hermitian(Rng& rng, std::size_t n);
/// U diag(z) U^+ with Gaussian complex z.
Matrix random_normal(Rng& rng, std::size_t n);
/// Full-support density matrix: normalized squared-Gaussian spectrum in a random basis.
Matrix random_density(Rng& rng, std::size_t n);
/// Orthogonal projector of the given rank in a random basis.
Matrix random_projector(Rng& rng, std::size_t n, std::size_t rank);

}  // namespace groth
