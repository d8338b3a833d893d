#include "kaczmarz/sequence.hpp"

#include <cmath>
#include <sstream>

namespace kaczmarz {

const char* to_string(Extension extension)
{
    return extension == Extension::periodic ? "periodic" : "explicit";
}

VectorSequence::VectorSequence(std::vector<Vector> generators, Extension extension)
    : generators_(std::move(generators)), extension_(extension)
{
    if (generators_.empty()) {
        throw Error(ErrorKind::invalid_argument, "sequence needs at least one generator");
    }
    dim_ = generators_.front().dim();
    field_ = generators_.front().field();
    if (dim_ < 1) {
        throw Error(ErrorKind::invalid_argument, "sequence dimension must be positive");
    }
    for (const Vector& g : generators_) {
        common_field(field_, g.field());
        if (g.dim() != dim_) {
            throw Error(ErrorKind::invalid_argument, "sequence generators differ in dimension");
        }
    }
}

const Vector& VectorSequence::term_at(Index n) const
{
    if (n < 0) {
        throw Error(ErrorKind::invalid_argument, "negative sequence index");
    }
    if (extension_ == Extension::periodic) {
        return generators_[static_cast<std::size_t>(n % length())];
    }
    if (n >= length()) {
        throw Error(ErrorKind::invalid_argument,
                    "index " + std::to_string(n) + " out of range for explicit sequence of length " +
                        std::to_string(length()));
    }
    return generators_[static_cast<std::size_t>(n)];
}

VectorSequence VectorSequence::section(Index count) const
{
    std::vector<Vector> terms;
    terms.reserve(static_cast<std::size_t>(count));
    for (Index n = 0; n < count; ++n) terms.push_back(term_at(n));
    return VectorSequence::finite(std::move(terms));
}

Matrix VectorSequence::generator_matrix() const { return Matrix::from_columns(generators_); }

SequencePair::SequencePair(VectorSequence analysis, VectorSequence synthesis)
    : analysis_(std::move(analysis)), synthesis_(std::move(synthesis))
{
    if (analysis_.dim() != synthesis_.dim()) {
        throw Error(ErrorKind::invalid_argument, "pair members differ in dimension");
    }
    common_field(analysis_.field(), synthesis_.field());
    if (analysis_.extension() != synthesis_.extension()) {
        throw Error(ErrorKind::invalid_argument, "pair members differ in extension policy");
    }
    if (analysis_.length() != synthesis_.length()) {
        throw Error(ErrorKind::invalid_argument, "pair members differ in generator count");
    }
}

bool linearly_dense(const VectorSequence& seq, double tol)
{
    return rank(seq.generator_matrix(), tol) == seq.dim();
}

ValidationReport validate(const SequencePair& pair, ValidationMode mode, double tol)
{
    ValidationReport report;
    const Index len = pair.length();

    for (Index n = 0; n < len; ++n) {
        const Scalar p = inner_product(pair.analysis().term_at(n), pair.synthesis().term_at(n));
        report.normalization.worst_deviation =
            std::max(report.normalization.worst_deviation, std::abs(p - 1.0));
    }
    report.normalization.ok = report.normalization.worst_deviation <= tol;
    if (!report.normalization.ok) {
        std::ostringstream os;
        os << "<phi_n, psi_n> deviates from 1 by up to " << report.normalization.worst_deviation;
        report.warnings.push_back(os.str());
    }

    if (mode == ValidationMode::classical) {
        Check unit;
        for (Index n = 0; n < len; ++n) {
            unit.worst_deviation =
                std::max(unit.worst_deviation, std::abs(pair.analysis().term_at(n).norm() - 1.0));
        }
        unit.ok = unit.worst_deviation <= tol;
        if (!unit.ok) {
            std::ostringstream os;
            os << "sequence is not made of unit vectors (worst | |e_n| - 1 | = "
               << unit.worst_deviation << ")";
            report.warnings.push_back(os.str());
        }
        report.unit_norms = unit;
    }

    const bool analysis_dense = linearly_dense(pair.analysis(), tol);
    const bool synthesis_dense = linearly_dense(pair.synthesis(), tol);
    report.linearly_dense = analysis_dense && synthesis_dense;
    if (!analysis_dense) report.warnings.push_back("analysis sequence does not span the space");
    if (!synthesis_dense) report.warnings.push_back("synthesis sequence does not span the space");
    if (!pair.is_periodic()) {
        report.warnings.push_back("explicit-finite sequence: density is checked on the listed terms only");
    }
    return report;
}

ValidationReport validate(const VectorSequence& e, double tol)
{
    return validate(SequencePair::symmetric(e), ValidationMode::classical, tol);
}

} // namespace kaczmarz
