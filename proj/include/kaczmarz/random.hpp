#pragma once

#include <cstdint>
#include <random>

#include "kaczmarz/linalg.hpp"
#include "kaczmarz/sequence.hpp"

namespace kaczmarz {

/// Seeded generator. Identical seeds give identical streams within a build.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    Index uniform_index(Index lo, Index hi)
    {
        return std::uniform_int_distribution<Index>(lo, hi)(engine_);
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Independent stream seed for sub-task `stream` of a run seeded with `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Standard normal entries (real and imaginary parts for the complex field).
Vector random_vector(Rng& rng, Field field, Index dim);
Vector random_unit_vector(Rng& rng, Field field, Index dim);
Matrix random_matrix(Rng& rng, Field field, Index rows, Index cols);
Matrix random_unitary(Rng& rng, Field field, Index n);

/// Hermitian positive definite, eigenvalues log-uniform in [1, max_condition].
Matrix random_spd(Rng& rng, Field field, Index n, double max_condition);

/// U diag(s) W* with singular values log-uniform in [1, max_condition].
Matrix random_invertible(Rng& rng, Field field, Index n, double max_condition);

/// Columns of a random unitary matrix, periodic.
VectorSequence random_orthonormal_basis(Rng& rng, Field field, Index n);

/// Periodic sequence of `length` random unit vectors.
VectorSequence random_unit_sequence(Rng& rng, Field field, Index dim, Index length);

/// Periodic pair with <phi_n, psi_n> = 1: psi_n is phi_n plus `spread`-scaled
/// noise, rescaled to restore the normalization.
SequencePair random_normalized_pair(Rng& rng, Field field, Index dim, Index length, double spread);

} // namespace kaczmarz
