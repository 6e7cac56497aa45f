// random.hpp: seeded generators for states, unitaries and measurements

#pragma once

#include "nphase/core.hpp"

#include <cstdint>
#include <random>

namespace nphase {

using Rng = std::mt19937_64;

// SplitMix64 mix of (base, index); used to give each parallel task its own
// reproducible stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

ComplexMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols);

// Haar-random unit vector.
PureState random_pure_state(Rng& rng, std::size_t dim);

// G G† / tr(G G†) with G a dim × rank Ginibre matrix.
DensityOperator random_mixed_state(Rng& rng, std::size_t dim, std::size_t rank);
DensityOperator random_mixed_state(Rng& rng, std::size_t dim);

// Haar-random unitary (QR of a Ginibre matrix with the phase fix).
ComplexMatrix random_unitary(Rng& rng, std::size_t dim);

ComplexMatrix random_hermitian(Rng& rng, std::size_t dim);

// Projective measurement onto the columns of a Haar-random unitary.
Povm random_projective_povm(Rng& rng, std::size_t dim);

}  // namespace nphase
