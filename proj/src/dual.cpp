#include "kaczmarz/dual.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "kaczmarz/constructors.hpp"
#include "kaczmarz/random.hpp"

namespace kaczmarz {

IterationTrace run_dual(const SequencePair& pair, const Vector& x, Index steps, double tol)
{
    return run_iteration(pair.analysis(), pair.synthesis(), x, steps, tol);
}

namespace {

// a_0 = u_0,  a_n = u_n - sum_{k<n} <u_n, v_k> a_k
VectorSequence recursive_auxiliary(const VectorSequence& u, const VectorSequence& v, Index count)
{
    if (count < 1) {
        throw Error(ErrorKind::invalid_argument, "auxiliary sequence: section size must be >= 1");
    }
    std::vector<Vector> a;
    a.reserve(static_cast<std::size_t>(count));
    for (Index n = 0; n < count; ++n) {
        const Vector& un = u.term_at(n);
        CVector an = un.values();
        for (Index k = 0; k < n; ++k) {
            an -= inner_product(un, v.term_at(k)) * a[static_cast<std::size_t>(k)].values();
        }
        a.emplace_back(u.field(), std::move(an));
    }
    return VectorSequence::finite(std::move(a));
}

} // namespace

AuxiliaryPair auxiliary_pair(const SequencePair& pair, Index count)
{
    return {recursive_auxiliary(pair.analysis(), pair.synthesis(), count),
            recursive_auxiliary(pair.synthesis(), pair.analysis(), count)};
}

IdentityCheck partial_sum_identity_check(const SequencePair& pair, const Vector& x, Index n,
                                         double tol)
{
    const IterationTrace trace = run_dual(pair, x, n + 1);
    const AuxiliaryPair aux = auxiliary_pair(pair, n + 1);
    CVector sum = CVector::Zero(x.dim());
    for (Index k = 0; k <= n; ++k) {
        sum += inner_product(x, aux.g.term_at(k)) * pair.synthesis().term_at(k).values();
    }
    IdentityCheck check;
    check.defect = (trace.iterates.back().values() - sum).norm();
    check.holds = check.defect <= tol;
    return check;
}

TriangularSection triangular_N_V(const SequencePair& pair, Index count)
{
    if (count < 1) {
        throw Error(ErrorKind::invalid_argument, "triangular_N_V: section size must be >= 1");
    }
    CMatrix lower = CMatrix::Identity(count, count);
    for (Index n = 0; n < count; ++n) {
        for (Index k = 0; k < n; ++k) {
            lower(n, k) = inner_product(pair.analysis().term_at(n), pair.synthesis().term_at(k));
        }
    }
    Matrix l(pair.field(), std::move(lower));
    Matrix inv = unit_lower_inverse(l);
    return {std::move(l), std::move(inv)};
}

PartialIsometry partial_isometry_test(const TriangularSection& section, double tol)
{
    const Matrix v = section.inverse - Matrix::identity(section.inverse.field(), section.size());
    const Matrix gram = v.adjoint() * v;
    PartialIsometry result;
    result.defect = spectral_norm(gram * gram - gram);
    result.partial_isometry = result.defect <= tol;
    return result;
}

IterationVerdict iteration_verdict(const SequencePair& pair, const OracleOptions& options)
{
    if (!pair.is_periodic()) {
        throw Error(ErrorKind::non_periodic, "iteration_verdict needs periodic sequences");
    }
    if (options.trials < 1 || options.periods < 2) {
        throw Error(ErrorKind::invalid_argument, "iteration_verdict: need trials >= 1, periods >= 2");
    }
    Rng rng(options.seed);
    const Index m = pair.length();
    const int half = options.periods / 2;
    constexpr double negligible = 1e-10;

    IterationVerdict verdict;
    verdict.effective = true;
    for (int t = 0; t < options.trials; ++t) {
        const Vector x = random_vector(rng, pair.field(), pair.dim());
        CVector eps = x.values();
        const double log_start = std::log(x.norm());
        double log_scale = log_start;
        eps /= x.norm();
        double log_at_half = log_start;
        double rate = 0.0;
        bool vanished = false;

        for (int p = 1; p <= options.periods; ++p) {
            for (Index k = 0; k < m; ++k) {
                const CVector& phi = pair.analysis().term_at(k).values();
                const CVector& psi = pair.synthesis().term_at(k).values();
                eps -= phi.dot(eps) * psi;
            }
            const double nrm = eps.norm();
            if (nrm == 0.0) {
                vanished = true;
                break;
            }
            if (!std::isfinite(nrm)) {
                rate = std::numeric_limits<double>::infinity();
                log_scale = std::numeric_limits<double>::infinity();
                break;
            }
            log_scale += std::log(nrm);
            eps /= nrm;
            if (p == half) log_at_half = log_scale;
        }

        double final_ratio = 0.0;
        if (!vanished) {
            final_ratio = std::exp(log_scale - log_start);
            if (std::isfinite(log_scale)) {
                rate = std::exp((log_scale - log_at_half) / (options.periods - half));
            }
        }
        const bool converges = final_ratio <= negligible || rate < 1.0 - effective_margin;
        verdict.effective = verdict.effective && converges;
        verdict.worst_rate = std::max(verdict.worst_rate, rate);
        verdict.worst_final_ratio = std::max(verdict.worst_final_ratio, final_ratio);
    }
    return verdict;
}

double pair_radius(const SequencePair& pair)
{
    const Vector& phi0 = pair.analysis().term_at(0);
    const Vector& psi0 = pair.synthesis().term_at(0);
    const Matrix seed = Matrix::identity(pair.field(), pair.dim()) - outer(psi0, phi0);
    return reachable_radius(period_error_map(pair), seed);
}

PairVerdict effective_pair_oracle(const SequencePair& pair, const OracleOptions& options)
{
    if (!pair.is_periodic()) {
        throw Error(ErrorKind::non_periodic, "pair oracle needs periodic sequences");
    }
    PairVerdict verdict;
    verdict.forward_radius = pair_radius(pair);
    verdict.reverse_radius = pair_radius(pair.reversed());
    verdict.forward_effective = verdict.forward_radius < 1.0 - effective_margin;
    verdict.reverse_effective = verdict.reverse_radius < 1.0 - effective_margin;
    verdict.symmetric = verdict.forward_effective && verdict.reverse_effective;

    OracleOptions forward = options;
    OracleOptions reverse = options;
    reverse.seed = derive_seed(options.seed, 1);
    const IterationVerdict fwd = iteration_verdict(pair, forward);
    const IterationVerdict rev = iteration_verdict(pair.reversed(), reverse);
    auto disagree = [](const char* which, double radius, const IterationVerdict& it) {
        std::ostringstream os;
        os << which << " verdict disagreement: spectral radius " << radius
           << " vs iteration rate " << it.worst_rate << " (final ratio " << it.worst_final_ratio
           << ")";
        return Error(ErrorKind::oracle_disagreement, os.str());
    };
    if (fwd.effective != verdict.forward_effective) {
        throw disagree("forward", verdict.forward_radius, fwd);
    }
    if (rev.effective != verdict.reverse_effective) {
        throw disagree("reverse", verdict.reverse_radius, rev);
    }
    return verdict;
}

EquivalenceReport equivalence_report(const SequencePair& pair, const Matrix& t, Index count,
                                     double tol, const OracleOptions& options)
{
    if (!t.square() || t.rows() != pair.dim()) {
        throw Error(ErrorKind::invalid_argument, "relating operator has the wrong shape");
    }
    common_field(t.field(), pair.field());

    EigDecomposition eig;
    try {
        eig = eig_hermitian(t, tol);
    } catch (const Error& err) {
        throw Error(ErrorKind::hypothesis_violation,
                    std::string("relating operator is not Hermitian: ") + err.what());
    }
    const double top = eig.eigenvalues[eig.eigenvalues.size() - 1];
    if (eig.eigenvalues[0] <= tol * (1.0 + std::abs(top))) {
        throw Error(ErrorKind::hypothesis_violation,
                    "relating operator is not positive and invertible (smallest eigenvalue " +
                        std::to_string(eig.eigenvalues[0]) + ")");
    }
    for (Index n = 0; n < count; ++n) {
        const Vector& phi = pair.analysis().term_at(n);
        const double defect = (t * phi - pair.synthesis().term_at(n)).norm();
        if (defect > tol * (1.0 + top * phi.norm())) {
            std::ostringstream os;
            os << "relating operator does not map phi_" << n << " to psi_" << n << " (defect "
               << defect << ")";
            throw Error(ErrorKind::hypothesis_violation, os.str());
        }
    }

    EquivalenceReport report;
    report.section = count;
    report.relating_operator = t;
    report.v_partial_isometry = partial_isometry_test(triangular_N_V(pair, count), tol);

    const AuxiliaryPair aux = auxiliary_pair(pair, count);
    const Matrix t_inv = inverse(t, 0.0);
    try {
        const VectorSequence dual = canonical_dual(aux.g, count, tol);
        for (Index n = 0; n < count; ++n) {
            report.canonical_dual_defect =
                std::max(report.canonical_dual_defect,
                         (aux.g_tilde.term_at(n) - dual.term_at(n)).norm());
        }
        report.t_defect = spectral_norm(frame_operator_partial(aux.g, count) - t_inv);
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::singular) throw;
        report.canonical_dual_defect = std::numeric_limits<double>::infinity();
        report.t_defect = std::numeric_limits<double>::infinity();
    }
    report.canonical_duals = report.canonical_dual_defect <= tol;
    report.t_consistent = report.t_defect <= tol * (1.0 + spectral_norm(t_inv));

    report.pair_verdict = effective_pair_oracle(pair, options);
    report.symmetric_pair = report.pair_verdict.symmetric;
    return report;
}

EquivalenceReport equivalence_report(const SequencePair& pair, Index count, double tol,
                                     const OracleOptions& options)
{
    const Index span_section =
        pair.is_periodic() ? std::max(pair.length(), pair.dim()) : pair.length();
    RecoveredOperator recovered;
    try {
        recovered = recover_T(pair, span_section, tol);
    } catch (const Error& err) {
        throw Error(ErrorKind::hypothesis_violation,
                    std::string("hypothesis not satisfiable: ") + err.what());
    }
    return equivalence_report(pair, recovered.t, count, tol, options);
}

} // namespace kaczmarz
