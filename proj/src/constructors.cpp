#include "kaczmarz/constructors.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "kaczmarz/frames.hpp"

namespace kaczmarz {

namespace {

VectorSequence apply_to_generators(const Matrix& op, const VectorSequence& seq)
{
    std::vector<Vector> mapped;
    mapped.reserve(seq.generators().size());
    for (const Vector& g : seq.generators()) mapped.push_back(op * g);
    return VectorSequence(std::move(mapped), seq.extension());
}

} // namespace

SequencePair transform_pair(const SequencePair& pair, const Matrix& t, double tol)
{
    const Matrix t_inv_adj = inverse(t, tol).adjoint();
    return SequencePair(apply_to_generators(t, pair.analysis()),
                        apply_to_generators(t_inv_adj, pair.synthesis()));
}

SequencePair pair_from_effective(const VectorSequence& e, const Matrix& t, double tol)
{
    const ValidationReport report = validate(e, tol);
    if (!report.unit_norms->ok || !report.linearly_dense) {
        throw Error(ErrorKind::invalid_argument,
                    "pair_from_effective: sequence must be dense and made of unit vectors");
    }
    return transform_pair(SequencePair::symmetric(e), t, tol);
}

VectorSequence lift_half_power(const VectorSequence& phi, const Matrix& t, double tol)
{
    return apply_to_generators(positive_sqrt(t, tol), phi);
}

RecoveredOperator recover_T(const SequencePair& pair, Index count, double tol)
{
    if (count < pair.dim()) {
        throw Error(ErrorKind::span_deficiency,
                    "recover_T: section of " + std::to_string(count) +
                        " terms cannot span dimension " + std::to_string(pair.dim()));
    }
    const Matrix phi = pair.analysis().section(count).generator_matrix();
    const Matrix psi = pair.synthesis().section(count).generator_matrix();
    if (rank(phi, tol) != pair.dim() || rank(psi, tol) != pair.dim()) {
        throw Error(ErrorKind::span_deficiency,
                    "recover_T: leading terms do not span the space");
    }

    const GrammianSection grammian =
        mixed_grammian(pair, count, GrammianOrientation::analysis_synthesis);
    const GrammianPositivity positivity = grammian_positive(grammian, tol);
    if (!positivity.positive) {
        throw Error(ErrorKind::grammian_not_positive,
                    "mixed Grammian is not positive (leading block of order " +
                        std::to_string(*positivity.failing_order) +
                        " fails); no positive T maps phi to psi");
    }

    RecoveredOperator result;
    result.t = psi * pseudo_inverse(phi, tol);
    double phi_scale = 0.0;
    for (Index n = 0; n < count; ++n) {
        const Vector& f = pair.analysis().term_at(n);
        phi_scale = std::max(phi_scale, f.norm());
        result.mapping_defect = std::max(result.mapping_defect,
                                         (result.t * f - pair.synthesis().term_at(n)).norm());
    }
    result.hermitian_defect = hermitian_defect(result.t);
    result.psd_min_eig = eig_hermitian(hermitian_part(result.t)).eigenvalues[0];

    const double t_norm = spectral_norm(result.t);
    std::ostringstream problem;
    if (result.mapping_defect > tol * (1.0 + t_norm * phi_scale)) {
        problem << "fit leaves mapping defect " << result.mapping_defect;
    } else if (result.hermitian_defect > tol * (1.0 + t_norm)) {
        problem << "fitted operator is not Hermitian (defect " << result.hermitian_defect << ")";
    } else if (result.psd_min_eig < -tol * (1.0 + t_norm)) {
        problem << "fitted operator is not positive (eigenvalue " << result.psd_min_eig << ")";
    }
    if (!problem.str().empty()) {
        throw Error(ErrorKind::hypothesis_violation, "recover_T: " + problem.str());
    }
    return result;
}

VectorSequence synthesis_dual_from_almost_effective(const VectorSequence& e, Index count,
                                                    double tol)
{
    const VectorSequence h = auxiliary_h(e, count);
    const EigDecomposition eig = eig_hermitian(frame_operator_partial(h, count));
    if (eig.eigenvalues[0] <= tol) {
        throw Error(ErrorKind::not_almost_effective,
                    "auxiliary section has lower frame bound " +
                        std::to_string(eig.eigenvalues[0]) + " at K = " + std::to_string(count));
    }
    const CMatrix& q = eig.eigenvectors.values();
    const CMatrix s_inv =
        q * eig.eigenvalues.cwiseInverse().cast<Scalar>().asDiagonal() * q.adjoint();
    std::vector<Vector> psi;
    psi.reserve(static_cast<std::size_t>(count));
    for (Index n = 0; n < count; ++n) psi.emplace_back(e.field(), s_inv * h.term_at(n).values());
    return VectorSequence::finite(std::move(psi));
}

AugmentedRun run_augmented(const VectorSequence& e, const VectorSequence& psi, const Vector& x,
                           Index steps, double tol)
{
    if (psi.dim() != e.dim()) {
        throw Error(ErrorKind::invalid_argument, "run_augmented: psi and e differ in dimension");
    }
    common_field(psi.field(), e.field());

    AugmentedRun run{run_classic(e, x, steps, tol), {}, psi, 0.0};
    const VectorSequence h = auxiliary_h(e, steps);
    const double slack = 1e-10 * (1.0 + x.norm());

    IterationTrace& aug = run.augmented_trace;
    aug.steps = steps;
    aug.target = x;
    aug.tolerance = tol;
    CVector y = CVector::Zero(x.dim());
    CVector previous_state = CVector::Zero(x.dim());
    for (Index n = 0; n < steps; ++n) {
        const Vector& en = e.term_at(n);
        const Scalar coeff = en.values().dot(x.values() - previous_state);
        const double defect = std::abs(coeff - inner_product(x, h.term_at(n)));
        run.max_identity_defect = std::max(run.max_identity_defect, defect);
        if (defect > slack) {
            std::ostringstream os;
            os << "augmented coefficient identity fails at step " << n << " (defect " << defect
               << ")";
            throw Error(ErrorKind::numerical_failure, os.str());
        }
        y += coeff * psi.term_at(n).values();
        aug.iterates.emplace_back(x.field(), y);
        aug.error_norms.push_back((x.values() - y).norm());
        aug.residual_norms.push_back(std::abs(coeff));
        previous_state = run.classic_trace.iterates[static_cast<std::size_t>(n)].values();
    }
    aug.final_error = aug.error_norms.back();
    aug.converged = aug.final_error <= tol;
    return run;
}

SequencePair biorthogonal_pair(const VectorSequence& basis, double tol)
{
    if (basis.length() != basis.dim()) {
        throw Error(ErrorKind::singular,
                    "biorthogonal_pair: need exactly " + std::to_string(basis.dim()) +
                        " generators, got " + std::to_string(basis.length()));
    }
    const Matrix phi = basis.generator_matrix();
    const Eigen::VectorXd s = singular_values(phi);
    if (s[s.size() - 1] <= tol * s[0]) {
        throw Error(ErrorKind::singular, "biorthogonal_pair: generators are linearly dependent");
    }
    const Matrix psi = inverse(phi, 0.0).adjoint();
    std::vector<Vector> dual;
    for (Index n = 0; n < basis.dim(); ++n) dual.push_back(psi.column(n));
    return SequencePair(basis, VectorSequence(std::move(dual), basis.extension()));
}

void write_augmented_csv(std::ostream& out, const AugmentedRun& run)
{
    out << "step,classic_error,augmented_error\n";
    out << std::setprecision(17);
    for (Index n = 0; n < run.augmented_trace.steps; ++n) {
        const auto i = static_cast<std::size_t>(n);
        out << n << ',' << run.classic_trace.error_norms[i] << ','
            << run.augmented_trace.error_norms[i] << '\n';
    }
}

} // namespace kaczmarz
