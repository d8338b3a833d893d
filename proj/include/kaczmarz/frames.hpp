#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "kaczmarz/linalg.hpp"
#include "kaczmarz/sequence.hpp"

namespace kaczmarz {

// Frame diagnostics evaluated on a finite section of a sequence: the first K
// terms stand in for the whole (possibly infinite) sequence.

struct FrameBounds {
    Index section = 0;
    double lower = 0.0;  ///< A
    double upper = 0.0;  ///< B
    bool parseval = false;
    bool bessel = true;  ///< always true at a finite section
};

/// {<x, f_n>} for n < count.
std::vector<Scalar> analysis_coeffs(const VectorSequence& seq, const Vector& x, Index count);

/// sum_n c_n f_n over the given coefficients.
Vector synthesis_apply(const VectorSequence& seq, const std::vector<Scalar>& coeffs);

/// S_K = sum_{n<K} f_n f_n*
Matrix frame_operator_partial(const VectorSequence& seq, Index count);

FrameBounds frame_bounds(const VectorSequence& seq, Index count, double tol = default_tolerance);

/// |S_{2K} - S_K|, or nothing when the sequence has fewer than 2K terms.
std::optional<double> frame_tail(const VectorSequence& seq, Index count);

/// S_K^{-1} f_n for n < K, as an explicit-finite sequence.
/// Throws singular when S_K is not invertible within tol.
VectorSequence canonical_dual(const VectorSequence& seq, Index count, double tol = default_tolerance);

struct DualityReport {
    bool dual_pair = false;       ///< |sum g_n f_n* - I| <= tol
    bool biorthogonal = false;    ///< |<f_m, g_n> - delta_mn| <= tol
    double dual_defect = 0.0;
    double biorthogonal_defect = 0.0;
    double max_defect = 0.0;
};

DualityReport duality_check(const VectorSequence& f, const VectorSequence& g, Index count,
                            double tol = default_tolerance);

/// Which inner product fills entry (m, n) of a mixed Grammian section.
enum class GrammianOrientation {
    synthesis_analysis,  ///< <psi_m, phi_n>
    analysis_synthesis,  ///< <phi_m, psi_n>
};

const char* to_string(GrammianOrientation orientation);

struct GrammianSection {
    Matrix entries;
    GrammianOrientation orientation = GrammianOrientation::synthesis_analysis;

    Index size() const { return entries.rows(); }
};

GrammianSection mixed_grammian(const SequencePair& pair, Index size,
                               GrammianOrientation orientation = GrammianOrientation::synthesis_analysis);

struct GrammianPositivity {
    bool positive = true;
    std::optional<Index> failing_order;  ///< smallest k whose leading k x k block fails
    std::optional<Vector> witness;       ///< length failing_order, <G_k u, u> < 0
};

/// Every leading principal block must be positive semidefinite.
GrammianPositivity grammian_positive(const GrammianSection& section, double tol = default_tolerance);

/// Row-major CSV with header `m,n,re,im`.
void write_grammian_csv(std::ostream& out, const GrammianSection& section);

} // namespace kaczmarz
