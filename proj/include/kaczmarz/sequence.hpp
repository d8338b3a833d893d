#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kaczmarz/linalg.hpp"

namespace kaczmarz {

enum class Extension {
    periodic,        ///< term(n) = generators[n mod len]
    explicit_finite, ///< term(n) defined only for n < len
};

const char* to_string(Extension extension);

/// Indexed sequence of vectors built from a finite list of generators.
class VectorSequence {
public:
    VectorSequence(std::vector<Vector> generators, Extension extension);

    static VectorSequence periodic(std::vector<Vector> generators)
    {
        return VectorSequence(std::move(generators), Extension::periodic);
    }
    static VectorSequence finite(std::vector<Vector> generators)
    {
        return VectorSequence(std::move(generators), Extension::explicit_finite);
    }

    Index dim() const noexcept { return dim_; }
    Field field() const noexcept { return field_; }
    Extension extension() const noexcept { return extension_; }
    bool is_periodic() const noexcept { return extension_ == Extension::periodic; }
    /// Number of generators (the period for periodic sequences).
    Index length() const noexcept { return static_cast<Index>(generators_.size()); }
    const std::vector<Vector>& generators() const noexcept { return generators_; }

    const Vector& term_at(Index n) const;

    /// Leading terms 0..count-1 as an explicit-finite sequence.
    VectorSequence section(Index count) const;
    /// Generators as the columns of a dim x length matrix.
    Matrix generator_matrix() const;

private:
    std::vector<Vector> generators_;
    Extension extension_;
    Index dim_ = 0;
    Field field_ = Field::real;
};

inline const Vector& term_at(const VectorSequence& seq, Index n) { return seq.term_at(n); }

/// Ordered (analysis, synthesis) pair.
class SequencePair {
public:
    SequencePair(VectorSequence analysis, VectorSequence synthesis);

    /// The pair (e, e) used by the classical algorithm.
    static SequencePair symmetric(const VectorSequence& e) { return SequencePair(e, e); }

    const VectorSequence& analysis() const noexcept { return analysis_; }
    const VectorSequence& synthesis() const noexcept { return synthesis_; }
    Index dim() const noexcept { return analysis_.dim(); }
    Field field() const noexcept { return analysis_.field(); }
    Extension extension() const noexcept { return analysis_.extension(); }
    Index length() const noexcept { return analysis_.length(); }
    bool is_periodic() const noexcept { return analysis_.is_periodic(); }

    /// (synthesis, analysis)
    SequencePair reversed() const { return SequencePair(synthesis_, analysis_); }

private:
    VectorSequence analysis_;
    VectorSequence synthesis_;
};

enum class ValidationMode { classical, dual };

struct Check {
    bool ok = true;
    double worst_deviation = 0.0;
};

/// Findings on the standing hypotheses of the algorithms. Never thrown:
/// algorithms run on violating inputs too.
struct ValidationReport {
    Check normalization;               ///< |<phi_n, psi_n> - 1| over one generator list
    std::optional<Check> unit_norms;   ///< classical mode only: | |e_n| - 1 |
    bool linearly_dense = true;        ///< both sequences span the space
    std::vector<std::string> warnings;
};

ValidationReport validate(const SequencePair& pair, ValidationMode mode,
                          double tol = default_tolerance);
/// Classical-mode validation of a single sequence.
ValidationReport validate(const VectorSequence& e, double tol = default_tolerance);

/// rank(generators) == dim with threshold tol * sigma_max.
bool linearly_dense(const VectorSequence& seq, double tol = default_tolerance);

} // namespace kaczmarz
