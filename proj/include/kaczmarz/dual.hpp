#pragma once

#include <cstdint>
#include <optional>

#include "kaczmarz/classic.hpp"
#include "kaczmarz/frames.hpp"
#include "kaczmarz/sequence.hpp"

namespace kaczmarz {

/// x_0 = <x, phi_0> psi_0,  x_n = x_{n-1} + <x - x_{n-1}, phi_n> psi_n.
IterationTrace run_dual(const SequencePair& pair, const Vector& x, Index steps,
                        double tol = default_tolerance);

struct AuxiliaryPair {
    VectorSequence g;        ///< g_n = phi_n - sum_{k<n} <phi_n, psi_k> g_k
    VectorSequence g_tilde;  ///< g~_n = psi_n - sum_{k<n} <psi_n, phi_k> g~_k
};

AuxiliaryPair auxiliary_pair(const SequencePair& pair, Index count);

struct IdentityCheck {
    double defect = 0.0;
    bool holds = true;
};

/// |x_n - sum_{k<=n} <x, g_k> psi_k| with x_n from run_dual.
IdentityCheck partial_sum_identity_check(const SequencePair& pair, const Vector& x, Index n,
                                         double tol = default_tolerance);

/// Lower block entries (n, k) = <phi_n, psi_k> for n > k.
TriangularSection triangular_N_V(const SequencePair& pair, Index count);

struct PartialIsometry {
    bool partial_isometry = false;
    double defect = 0.0;  ///< |(V*V)^2 - V*V| with V = inverse - I
};

/// Finite-section diagnostic: the leading block of an infinite V can fail
/// the test even when V itself is a partial isometry, and vice versa.
PartialIsometry partial_isometry_test(const TriangularSection& section,
                                      double tol = default_tolerance);

struct OracleOptions {
    std::uint64_t seed = 0;
    int trials = 20;    ///< random targets for the iteration cross-check
    int periods = 200;  ///< periods per cross-check run
};

struct IterationVerdict {
    bool effective = false;
    double worst_rate = 0.0;         ///< per-period error decay over the second half
    double worst_final_ratio = 0.0;  ///< |eps_end| / |x|
};

/// Empirical verdict for the pair from `trials` seeded runs of the error
/// recursion. Renormalizes every period so divergent runs stay finite.
IterationVerdict iteration_verdict(const SequencePair& pair, const OracleOptions& options = {});

/// Reachable-subspace radius of the one-period error map, seeded by
/// range(I - psi_0 phi_0*).
double pair_radius(const SequencePair& pair);

struct PairVerdict {
    bool forward_effective = false;
    bool reverse_effective = false;
    bool symmetric = false;
    double forward_radius = 0.0;
    double reverse_radius = 0.0;
};

/// Spectral verdict for both orderings of a periodic pair, cross-checked by
/// iteration_verdict. Throws oracle_disagreement when the two disagree.
PairVerdict effective_pair_oracle(const SequencePair& pair, const OracleOptions& options = {});

struct EquivalenceReport {
    Index section = 0;
    PartialIsometry v_partial_isometry;
    bool canonical_duals = false;
    double canonical_dual_defect = 0.0;  ///< max_n |g~_n - S_g^{-1} g_n|
    bool symmetric_pair = false;
    PairVerdict pair_verdict;
    bool t_consistent = false;
    double t_defect = 0.0;  ///< |S_g - T^{-1}|
    Matrix relating_operator;
};

/// Evaluates the three equivalent conditions for a pair related by a
/// positive invertible T (T phi_n = psi_n). Throws hypothesis_violation when
/// T does not satisfy that hypothesis.
EquivalenceReport equivalence_report(const SequencePair& pair, const Matrix& t, Index count,
                                     double tol = default_tolerance,
                                     const OracleOptions& options = {});

/// As above with T recovered from the pair; failure to recover is reported
/// as hypothesis_violation.
EquivalenceReport equivalence_report(const SequencePair& pair, Index count,
                                     double tol = default_tolerance,
                                     const OracleOptions& options = {});

} // namespace kaczmarz
