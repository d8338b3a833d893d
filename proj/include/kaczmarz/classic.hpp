#pragma once

#include <iosfwd>
#include <vector>

#include "kaczmarz/frames.hpp"
#include "kaczmarz/linalg.hpp"
#include "kaczmarz/sequence.hpp"

namespace kaczmarz {

/// Record of one run of a Kaczmarz-type iteration.
struct IterationTrace {
    Index steps = 0;
    std::vector<Vector> iterates;        ///< x_0 .. x_{steps-1}
    std::vector<double> error_norms;     ///< |x - x_n|
    std::vector<double> residual_norms;  ///< |<x - x_{n-1}, phi_n>| (x_{-1} = 0)
    Vector target;
    double tolerance = default_tolerance;
    bool converged = false;              ///< final_error <= tolerance
    double final_error = 0.0;
};

/// Writes `step,error_norm,residual_norm`, one row per step.
void write_trace_csv(std::ostream& out, const IterationTrace& trace);

/// Leading K x K block of a unit lower triangular matrix and its inverse.
struct TriangularSection {
    Matrix lower;    ///< I + M (or I + N)
    Matrix inverse;  ///< I + U (or I + V)

    Index size() const { return lower.rows(); }
};

/// Inverse of a unit lower triangular matrix by forward substitution.
Matrix unit_lower_inverse(const Matrix& lower);

/// x_0 = <x, phi_0> psi_0,  x_n = x_{n-1} + <x - x_{n-1}, phi_n> psi_n.
/// Shared driver of the classical and dual iterations.
IterationTrace run_iteration(const VectorSequence& analysis, const VectorSequence& synthesis,
                             const Vector& x, Index steps, double tol);

/// x_0 = <x, e_0> e_0,  x_n = x_{n-1} + <x - x_{n-1}, e_n> e_n.
IterationTrace run_classic(const VectorSequence& e, const Vector& x, Index steps,
                           double tol = default_tolerance);

/// h_0 = e_0,  h_n = e_n - sum_{k<n} <e_n, e_k> h_k,  for n < K.
VectorSequence auxiliary_h(const VectorSequence& e, Index count);

/// Lower block entries (n, k) = <e_n, e_k> for n > k.
TriangularSection triangular_M_U(const VectorSequence& e, Index count);

/// One-period error map prod_{k=m-1..0} (I - psi_k phi_k*) of a periodic pair.
Matrix period_error_map(const SequencePair& pair);

/// Spectral radius of `map` restricted to the smallest invariant subspace
/// containing range(seed). Krylov growth with rank tolerance `rank_tol`.
double reachable_radius(const Matrix& map, const Matrix& seed, double rank_tol = 1e-10);

/// Radius threshold: effective iff radius < 1 - effective_margin.
constexpr double effective_margin = 1e-9;

struct ClassicVerdict {
    bool effective = false;
    double period_map_radius = 0.0;
    bool reliable = true;  ///< false when e is not unit-norm or not dense
};

/// Effectiveness of a periodic sequence from its one-period error map.
/// Throws non_periodic for explicit-finite input.
ClassicVerdict periodic_effectiveness_oracle(const VectorSequence& e);

struct AlmostEffectiveBound {
    Index section = 0;
    double lower = 0.0;        ///< A, lower frame bound of the h-section
    double limit_bound = 1.0;  ///< 1 - A, bound on lim |x - x_n|^2 / |x|^2
    bool almost_effective = false;
};

/// Section-K estimate from the frame bounds of auxiliary_h(e, K).
AlmostEffectiveBound almost_effective_bound(const VectorSequence& e, Index count,
                                            double tol = default_tolerance);

} // namespace kaczmarz
