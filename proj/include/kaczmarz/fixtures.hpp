#pragma once

#include "kaczmarz/sequence.hpp"

namespace kaczmarz::fixtures {

/// (delta_n, -delta_n) over the standard basis of R^N, periodic. Runs one
/// pass to -x.
SequencePair negated_basis_pair(Index dim);

/// phi = (1,-1), (1,1), (1/2,-1/2); psi = (1,0), (1,0), (3/2,-1/2).
/// Effective in this order, not in the reverse one.
SequencePair nonsymmetric_pair();

/// phi = (1,0), (1,1), (0,1); psi = (1,0), (1,0), (0,1). Symmetric effective
/// with a mixed Grammian that is not positive.
SequencePair non_positive_grammian_pair();

/// Basis (1,0), (1,1) of R^2 with its dual basis (1,-1), (0,1), explicit.
SequencePair biorthogonal_plane_pair();

/// Period-2 unit sequence (1,0), (1,1)/sqrt(2).
VectorSequence period_two_sequence();

} // namespace kaczmarz::fixtures
