#pragma once

#include <iosfwd>

#include "kaczmarz/classic.hpp"
#include "kaczmarz/sequence.hpp"

namespace kaczmarz {

/// {(T phi_n, (T^{-1})* psi_n)}. Effectiveness of the pair is invariant under
/// this map. Throws singular when the smallest singular value of T is <= tol.
SequencePair transform_pair(const SequencePair& pair, const Matrix& t, double tol = default_tolerance);

/// (T e_n, (T^{-1})* e_n) from a sequence passing classical validation.
/// An effective e gives a symmetric effective pair.
SequencePair pair_from_effective(const VectorSequence& e, const Matrix& t,
                                 double tol = default_tolerance);

/// e_n = T^{1/2} phi_n for Hermitian positive T.
VectorSequence lift_half_power(const VectorSequence& phi, const Matrix& t,
                               double tol = default_tolerance);

struct RecoveredOperator {
    Matrix t;
    double hermitian_defect = 0.0;
    double psd_min_eig = 0.0;
    double mapping_defect = 0.0;  ///< max_n |T phi_n - psi_n| over the section
};

/// Positive T with T phi_n = psi_n for n < count, which exists iff the mixed
/// Grammian section is positive. T = Psi Phi^+ on the synthesis matrices.
/// Throws grammian_not_positive, span_deficiency, or hypothesis_violation.
RecoveredOperator recover_T(const SequencePair& pair, Index count, double tol = default_tolerance);

/// Canonical dual psi_n = S^{-1} h_n of the h-section, S its frame operator.
/// Then x = sum_{n<K} <x, h_n> psi_n. Throws not_almost_effective when the
/// lower frame bound of the section is <= tol.
VectorSequence synthesis_dual_from_almost_effective(const VectorSequence& e, Index count,
                                                    double tol = default_tolerance);

struct AugmentedRun {
    IterationTrace classic_trace;    ///< state x_n
    IterationTrace augmented_trace;  ///< y_n
    VectorSequence psi_used;
    double max_identity_defect = 0.0;  ///< max_n |<x - x_{n-1}, e_n> - <x, h_n>|
};

/// y_0 = <x, e_0> psi_0,  y_n = y_{n-1} + <x - x_{n-1}, e_n> psi_n, with x_n
/// the classical iterates. Throws when the coefficient identity against the
/// auxiliary sequence h fails beyond tolerance.
AugmentedRun run_augmented(const VectorSequence& e, const VectorSequence& psi, const Vector& x,
                           Index steps, double tol = default_tolerance);

/// (basis, dual basis) with <phi_m, psi_n> = delta_mn. Needs exactly dim
/// independent generators.
SequencePair biorthogonal_pair(const VectorSequence& basis, double tol = default_tolerance);

/// Writes `step,classic_error,augmented_error`.
void write_augmented_csv(std::ostream& out, const AugmentedRun& run);

} // namespace kaczmarz
