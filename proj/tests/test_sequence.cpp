#include <gtest/gtest.h>

#include "kaczmarz/fixtures.hpp"
#include "kaczmarz/random.hpp"
#include "kaczmarz/sequence.hpp"
#include "support.hpp"

using namespace kaczmarz;

namespace {

VectorSequence three_generators(Extension ext)
{
    return VectorSequence({Vector::real({1, 0}), Vector::real({0, 1}), Vector::real({1, 1})}, ext);
}

TEST(TermAt, PeriodicWrapsModuloLength)
{
    const VectorSequence seq = three_generators(Extension::periodic);
    EXPECT_EQ(seq.term_at(5).values(), seq.generators()[2].values());
    EXPECT_EQ(term_at(seq, 0).values(), seq.generators()[0].values());
}

TEST(TermAt, ExplicitOutOfRangeThrows)
{
    const VectorSequence seq = VectorSequence::finite(
        {Vector::real({1, 0}), Vector::real({0, 1}), Vector::real({1, 1}), Vector::real({2, 0})});
    EXPECT_NO_THROW(seq.term_at(3));
    EXPECT_THROW(seq.term_at(7), Error);
    EXPECT_THROW(seq.term_at(-1), Error);
}

TEST(TermAt, PeriodicWithDeclaredPeriod)
{
    Rng rng(21);
    const VectorSequence seq = random_unit_sequence(rng, Field::complex, 3, 4);
    for (Index n = 0; n <= 10 * seq.length(); ++n) {
        EXPECT_EQ(seq.term_at(n).values(), seq.term_at(n + seq.length()).values());
    }
}

TEST(VectorSequence, RejectsMixedDimensionsAndFields)
{
    EXPECT_THROW(VectorSequence::periodic({Vector::real({1, 0}), Vector::real({1, 0, 0})}), Error);
    EXPECT_THROW(VectorSequence::periodic({Vector::real({1, 0}), Vector::complex({1.0, 0.0})}),
                 Error);
    EXPECT_THROW(VectorSequence::periodic({}), Error);
}

TEST(VectorSequence, SectionIsExplicitPrefix)
{
    const VectorSequence seq = three_generators(Extension::periodic);
    const VectorSequence sec = seq.section(7);
    EXPECT_EQ(sec.extension(), Extension::explicit_finite);
    ASSERT_EQ(sec.length(), 7);
    for (Index n = 0; n < 7; ++n) EXPECT_EQ(sec.term_at(n).values(), seq.term_at(n).values());
    const Matrix g = seq.generator_matrix();
    EXPECT_EQ(g.rows(), 2);
    EXPECT_EQ(g.cols(), 3);
}

TEST(SequencePair, RequiresMatchingShapes)
{
    EXPECT_THROW(SequencePair(three_generators(Extension::periodic),
                              three_generators(Extension::explicit_finite)),
                 Error);
    EXPECT_THROW(SequencePair(three_generators(Extension::periodic),
                              VectorSequence::periodic({Vector::real({1, 0})})),
                 Error);
    const SequencePair pair = fixtures::nonsymmetric_pair();
    const SequencePair rev = pair.reversed();
    EXPECT_EQ(rev.analysis().term_at(2).values(), pair.synthesis().term_at(2).values());
}

TEST(Validate, NonsymmetricPairIsNormalizedAndDense)
{
    const ValidationReport r = validate(fixtures::nonsymmetric_pair(), ValidationMode::dual);
    EXPECT_TRUE(r.normalization.ok);
    EXPECT_LE(r.normalization.worst_deviation, 1e-15);
    EXPECT_TRUE(r.linearly_dense);
    EXPECT_FALSE(r.unit_norms.has_value());
    EXPECT_TRUE(r.warnings.empty());
}

TEST(Validate, NegatedBasisReportsDeviationTwo)
{
    const ValidationReport r = validate(fixtures::negated_basis_pair(4), ValidationMode::dual);
    EXPECT_FALSE(r.normalization.ok);
    EXPECT_DOUBLE_EQ(r.normalization.worst_deviation, 2.0);
    EXPECT_TRUE(r.linearly_dense);
    EXPECT_FALSE(r.warnings.empty());
}

TEST(Validate, ClassicalModeChecksUnitNorms)
{
    const ValidationReport r = validate(fixtures::nonsymmetric_pair().analysis());
    ASSERT_TRUE(r.unit_norms.has_value());
    EXPECT_FALSE(r.unit_norms->ok);
    EXPECT_NEAR(r.unit_norms->worst_deviation, std::sqrt(2.0) - 1.0, 1e-14);
}

TEST(Validate, DetectsMissingDensity)
{
    const VectorSequence e = VectorSequence::periodic({Vector::real({1, 0})});
    const ValidationReport r = validate(e);
    EXPECT_FALSE(r.linearly_dense);
    EXPECT_TRUE(r.unit_norms->ok);
    EXPECT_FALSE(linearly_dense(e));
}

TEST(Validate, IsPure)
{
    Rng rng(22);
    const SequencePair pair = random_normalized_pair(rng, Field::complex, 3, 5, 0.5);
    const ValidationReport a = validate(pair, ValidationMode::dual);
    const ValidationReport b = validate(pair, ValidationMode::dual);
    EXPECT_EQ(a.normalization.ok, b.normalization.ok);
    EXPECT_EQ(a.normalization.worst_deviation, b.normalization.worst_deviation);
    EXPECT_EQ(a.linearly_dense, b.linearly_dense);
    EXPECT_EQ(a.warnings, b.warnings);
    EXPECT_LE(a.normalization.worst_deviation, 1e-12);
}

TEST(Validate, FlagsAgreeWithDeviations)
{
    Rng rng(23);
    for (int t = 0; t < 30; ++t) {
        const SequencePair pair = random_normalized_pair(rng, Field::real, 3, 4, 0.4);
        std::vector<Vector> scaled;
        for (const Vector& v : pair.synthesis().generators()) {
            scaled.push_back(Scalar(rng.uniform(0.5, 1.5)) * v);
        }
        const SequencePair off(pair.analysis(), VectorSequence::periodic(scaled));
        const double tol = 1e-3;
        const ValidationReport r = validate(off, ValidationMode::dual, tol);
        EXPECT_EQ(r.normalization.ok, r.normalization.worst_deviation <= tol);
    }
}

} // namespace
