#include "kaczmarz/frames.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace kaczmarz {

namespace {

void require_count(Index count, const char* what)
{
    if (count < 1) {
        throw Error(ErrorKind::invalid_argument, std::string(what) + ": section size must be >= 1");
    }
}

} // namespace

std::vector<Scalar> analysis_coeffs(const VectorSequence& seq, const Vector& x, Index count)
{
    require_count(count, "analysis_coeffs");
    std::vector<Scalar> coeffs;
    coeffs.reserve(static_cast<std::size_t>(count));
    for (Index n = 0; n < count; ++n) coeffs.push_back(inner_product(x, seq.term_at(n)));
    return coeffs;
}

Vector synthesis_apply(const VectorSequence& seq, const std::vector<Scalar>& coeffs)
{
    CVector sum = CVector::Zero(seq.dim());
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        if (!std::isfinite(coeffs[n].real()) || !std::isfinite(coeffs[n].imag())) {
            throw Error(ErrorKind::invalid_argument, "synthesis coefficient is not finite");
        }
        sum += coeffs[n] * seq.term_at(static_cast<Index>(n)).values();
    }
    return Vector(seq.field(), std::move(sum));
}

Matrix frame_operator_partial(const VectorSequence& seq, Index count)
{
    require_count(count, "frame_operator_partial");
    CMatrix s = CMatrix::Zero(seq.dim(), seq.dim());
    for (Index n = 0; n < count; ++n) {
        const CVector& f = seq.term_at(n).values();
        s.noalias() += f * f.adjoint();
    }
    return Matrix(seq.field(), std::move(s));
}

FrameBounds frame_bounds(const VectorSequence& seq, Index count, double tol)
{
    const EigDecomposition eig = eig_hermitian(frame_operator_partial(seq, count));
    FrameBounds bounds;
    bounds.section = count;
    bounds.lower = std::max(0.0, eig.eigenvalues[0]);
    bounds.upper = std::max(bounds.lower, eig.eigenvalues[eig.eigenvalues.size() - 1]);
    bounds.parseval = std::abs(bounds.lower - 1.0) <= tol && std::abs(bounds.upper - 1.0) <= tol;
    return bounds;
}

std::optional<double> frame_tail(const VectorSequence& seq, Index count)
{
    if (!seq.is_periodic() && 2 * count > seq.length()) return std::nullopt;
    return spectral_norm(frame_operator_partial(seq, 2 * count) - frame_operator_partial(seq, count));
}

VectorSequence canonical_dual(const VectorSequence& seq, Index count, double tol)
{
    const Matrix s = frame_operator_partial(seq, count);
    const EigDecomposition eig = eig_hermitian(s);
    const double top = eig.eigenvalues[eig.eigenvalues.size() - 1];
    if (eig.eigenvalues[0] <= tol * std::max(1.0, top)) {
        throw Error(ErrorKind::singular,
                    "frame operator is singular at section " + std::to_string(count) +
                        " (smallest eigenvalue " + std::to_string(eig.eigenvalues[0]) + ")");
    }
    const CMatrix& q = eig.eigenvectors.values();
    const CMatrix s_inv =
        q * eig.eigenvalues.cwiseInverse().cast<Scalar>().asDiagonal() * q.adjoint();
    std::vector<Vector> dual;
    dual.reserve(static_cast<std::size_t>(count));
    for (Index n = 0; n < count; ++n) {
        dual.emplace_back(seq.field(), s_inv * seq.term_at(n).values());
    }
    return VectorSequence::finite(std::move(dual));
}

DualityReport duality_check(const VectorSequence& f, const VectorSequence& g, Index count,
                            double tol)
{
    require_count(count, "duality_check");
    if (f.dim() != g.dim()) {
        throw Error(ErrorKind::invalid_argument, "duality_check: dimension mismatch");
    }
    const Field field = common_field(f.field(), g.field());

    CMatrix mixed = CMatrix::Zero(f.dim(), f.dim());
    for (Index n = 0; n < count; ++n) {
        mixed.noalias() += g.term_at(n).values() * f.term_at(n).values().adjoint();
    }
    DualityReport report;
    report.dual_defect =
        spectral_norm(Matrix(field, mixed) - Matrix::identity(field, f.dim()));

    for (Index m = 0; m < count; ++m) {
        for (Index n = 0; n < count; ++n) {
            const Scalar target = m == n ? 1.0 : 0.0;
            report.biorthogonal_defect =
                std::max(report.biorthogonal_defect,
                         std::abs(inner_product(f.term_at(m), g.term_at(n)) - target));
        }
    }
    report.dual_pair = report.dual_defect <= tol;
    report.biorthogonal = report.biorthogonal_defect <= tol;
    report.max_defect = std::max(report.dual_defect, report.biorthogonal_defect);
    return report;
}

const char* to_string(GrammianOrientation orientation)
{
    return orientation == GrammianOrientation::synthesis_analysis ? "synthesis_analysis"
                                                                  : "analysis_synthesis";
}

GrammianSection mixed_grammian(const SequencePair& pair, Index size,
                               GrammianOrientation orientation)
{
    require_count(size, "mixed_grammian");
    const VectorSequence& row_seq = orientation == GrammianOrientation::synthesis_analysis
                                        ? pair.synthesis()
                                        : pair.analysis();
    const VectorSequence& col_seq = orientation == GrammianOrientation::synthesis_analysis
                                        ? pair.analysis()
                                        : pair.synthesis();
    CMatrix g(size, size);
    for (Index m = 0; m < size; ++m) {
        for (Index n = 0; n < size; ++n) {
            g(m, n) = inner_product(row_seq.term_at(m), col_seq.term_at(n));
        }
    }
    return {Matrix(pair.field(), std::move(g)), orientation};
}

GrammianPositivity grammian_positive(const GrammianSection& section, double tol)
{
    GrammianPositivity result;
    for (Index k = 1; k <= section.size(); ++k) {
        PsdVerdict verdict = is_psd(section.entries.block(k, k), tol);
        if (!verdict.psd) {
            result.positive = false;
            result.failing_order = k;
            result.witness = std::move(verdict.witness);
            break;
        }
    }
    return result;
}

void write_grammian_csv(std::ostream& out, const GrammianSection& section)
{
    out << "m,n,re,im\n";
    out << std::setprecision(17);
    for (Index m = 0; m < section.size(); ++m) {
        for (Index n = 0; n < section.size(); ++n) {
            const Scalar v = section.entries(m, n);
            out << m << ',' << n << ',' << v.real() << ',' << v.imag() << '\n';
        }
    }
}

} // namespace kaczmarz
