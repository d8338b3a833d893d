#include "kaczmarz/classic.hpp"

#include <iomanip>
#include <ostream>

namespace kaczmarz {

void write_trace_csv(std::ostream& out, const IterationTrace& trace)
{
    out << "step,error_norm,residual_norm\n";
    out << std::setprecision(17);
    for (Index n = 0; n < trace.steps; ++n) {
        const auto i = static_cast<std::size_t>(n);
        out << n << ',' << trace.error_norms[i] << ',' << trace.residual_norms[i] << '\n';
    }
}

IterationTrace run_iteration(const VectorSequence& analysis, const VectorSequence& synthesis,
                             const Vector& x, Index steps, double tol)
{
    if (steps < 1) {
        throw Error(ErrorKind::invalid_argument, "iteration needs at least one step");
    }
    if (x.dim() != analysis.dim() || x.dim() != synthesis.dim()) {
        throw Error(ErrorKind::invalid_argument, "target vector dimension does not match sequence");
    }
    common_field(x.field(), analysis.field());
    common_field(x.field(), synthesis.field());

    IterationTrace trace;
    trace.steps = steps;
    trace.target = x;
    trace.tolerance = tol;
    trace.iterates.reserve(static_cast<std::size_t>(steps));
    trace.error_norms.reserve(static_cast<std::size_t>(steps));
    trace.residual_norms.reserve(static_cast<std::size_t>(steps));

    CVector current = CVector::Zero(x.dim());
    for (Index n = 0; n < steps; ++n) {
        const CVector& phi = analysis.term_at(n).values();
        const CVector& psi = synthesis.term_at(n).values();
        const Scalar coeff = phi.dot(x.values() - current);
        current += coeff * psi;
        trace.iterates.emplace_back(x.field(), current);
        trace.error_norms.push_back((x.values() - current).norm());
        trace.residual_norms.push_back(std::abs(coeff));
    }
    trace.final_error = trace.error_norms.back();
    trace.converged = trace.final_error <= tol;
    return trace;
}

IterationTrace run_classic(const VectorSequence& e, const Vector& x, Index steps, double tol)
{
    return run_iteration(e, e, x, steps, tol);
}

VectorSequence auxiliary_h(const VectorSequence& e, Index count)
{
    if (count < 1) {
        throw Error(ErrorKind::invalid_argument, "auxiliary_h: section size must be >= 1");
    }
    std::vector<Vector> h;
    h.reserve(static_cast<std::size_t>(count));
    for (Index n = 0; n < count; ++n) {
        const Vector& en = e.term_at(n);
        CVector hn = en.values();
        for (Index k = 0; k < n; ++k) {
            hn -= inner_product(en, e.term_at(k)) * h[static_cast<std::size_t>(k)].values();
        }
        h.emplace_back(e.field(), std::move(hn));
    }
    return VectorSequence::finite(std::move(h));
}

Matrix unit_lower_inverse(const Matrix& lower)
{
    if (!lower.square()) {
        throw Error(ErrorKind::invalid_argument, "unit_lower_inverse: matrix must be square");
    }
    const Index size = lower.rows();
    const CMatrix& l = lower.values();
    for (Index i = 0; i < size; ++i) {
        if (l(i, i) != Scalar(1) || l.row(i).tail(size - i - 1).squaredNorm() != 0.0) {
            throw Error(ErrorKind::invalid_argument,
                        "unit_lower_inverse: matrix is not unit lower triangular");
        }
    }
    CMatrix inv = CMatrix::Identity(size, size);
    // Column j of the inverse: solve L y = e_j with y_i = 0 for i < j.
    for (Index j = 0; j < size; ++j) {
        for (Index i = j + 1; i < size; ++i) {
            Scalar acc = 0.0;
            for (Index k = j; k < i; ++k) acc += l(i, k) * inv(k, j);
            inv(i, j) = -acc;
        }
    }
    return Matrix(lower.field(), std::move(inv));
}

TriangularSection triangular_M_U(const VectorSequence& e, Index count)
{
    if (count < 1) {
        throw Error(ErrorKind::invalid_argument, "triangular_M_U: section size must be >= 1");
    }
    CMatrix lower = CMatrix::Identity(count, count);
    for (Index n = 0; n < count; ++n) {
        for (Index k = 0; k < n; ++k) lower(n, k) = inner_product(e.term_at(n), e.term_at(k));
    }
    Matrix l(e.field(), std::move(lower));
    Matrix inv = unit_lower_inverse(l);
    return {std::move(l), std::move(inv)};
}

Matrix period_error_map(const SequencePair& pair)
{
    if (!pair.is_periodic()) {
        throw Error(ErrorKind::non_periodic, "error map needs a periodic sequence");
    }
    const Index dim = pair.dim();
    CMatrix map = CMatrix::Identity(dim, dim);
    for (Index k = 0; k < pair.length(); ++k) {
        const CVector& phi = pair.analysis().term_at(k).values();
        const CVector& psi = pair.synthesis().term_at(k).values();
        // (I - psi phi*) map
        map -= psi * (phi.adjoint() * map);
    }
    return Matrix(pair.field(), std::move(map));
}

double reachable_radius(const Matrix& map, const Matrix& seed, double rank_tol)
{
    Matrix basis = orthonormal_range(seed, rank_tol);
    if (basis.cols() == 0) return 0.0;
    while (true) {
        CMatrix stacked(basis.rows(), 2 * basis.cols());
        stacked << basis.values(), map.values() * basis.values();
        Matrix grown = orthonormal_range(Matrix(map.field(), std::move(stacked)), rank_tol);
        if (grown.cols() <= basis.cols()) break;
        basis = std::move(grown);
    }
    return spectral_radius(basis.adjoint() * map * basis);
}

ClassicVerdict periodic_effectiveness_oracle(const VectorSequence& e)
{
    if (!e.is_periodic()) {
        throw Error(ErrorKind::non_periodic, "effectiveness oracle needs a periodic sequence");
    }
    const SequencePair pair = SequencePair::symmetric(e);
    const Vector& e0 = e.term_at(0);
    const Matrix seed = Matrix::identity(e.field(), e.dim()) - outer(e0, e0);

    ClassicVerdict verdict;
    verdict.period_map_radius = reachable_radius(period_error_map(pair), seed);
    const ValidationReport report = validate(e);
    verdict.reliable = report.linearly_dense && report.unit_norms->ok;
    verdict.effective = report.linearly_dense && verdict.period_map_radius < 1.0 - effective_margin;
    return verdict;
}

AlmostEffectiveBound almost_effective_bound(const VectorSequence& e, Index count, double tol)
{
    const FrameBounds bounds = frame_bounds(auxiliary_h(e, count), count, tol);
    AlmostEffectiveBound result;
    result.section = count;
    result.lower = bounds.lower;
    result.limit_bound = 1.0 - bounds.lower;
    result.almost_effective = bounds.lower > tol;
    return result;
}

} // namespace kaczmarz
