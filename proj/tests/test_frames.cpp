#include <sstream>

#include <gtest/gtest.h>

#include "kaczmarz/classic.hpp"
#include "kaczmarz/fixtures.hpp"
#include "kaczmarz/frames.hpp"
#include "kaczmarz/random.hpp"
#include "support.hpp"

using namespace kaczmarz;
namespace ts = testing_support;

namespace {

TEST(Analysis, GrammianPairExample)
{
    const VectorSequence phi = fixtures::non_positive_grammian_pair().analysis();
    const std::vector<Scalar> c = analysis_coeffs(phi, Vector::real({1, 2}), 3);
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[0], Scalar(1));
    EXPECT_EQ(c[1], Scalar(3));
    EXPECT_EQ(c[2], Scalar(2));
}

TEST(Synthesis, GrammianPairExample)
{
    const VectorSequence psi = fixtures::non_positive_grammian_pair().synthesis();
    const Vector y = synthesis_apply(psi, {1.0, 1.0, 1.0});
    EXPECT_LE(ts::distance(y, {2, 1}), 1e-15);
}

TEST(Analysis, AdjointOfSynthesis)
{
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        const VectorSequence f = random_unit_sequence(rng, Field::complex, 3, 5);
        const Vector x = random_vector(rng, Field::complex, 3);
        std::vector<Scalar> c;
        for (int n = 0; n < 5; ++n) c.emplace_back(rng.normal(), rng.normal());
        const std::vector<Scalar> a = analysis_coeffs(f, x, 5);
        Scalar lhs = 0.0;
        for (std::size_t n = 0; n < 5; ++n) lhs += a[n] * std::conj(c[n]);
        EXPECT_LE(std::abs(lhs - inner_product(x, synthesis_apply(f, c))), 1e-12);
    }
}

TEST(FrameOperator, GrammianPairExample)
{
    const VectorSequence phi = fixtures::non_positive_grammian_pair().analysis();
    EXPECT_LE(ts::distance(frame_operator_partial(phi, 3), {{2, 1}, {1, 2}}), 1e-15);
    const FrameBounds b = frame_bounds(phi, 3);
    EXPECT_NEAR(b.lower, 1.0, 1e-14);
    EXPECT_NEAR(b.upper, 3.0, 1e-14);
    EXPECT_FALSE(b.parseval);
    EXPECT_TRUE(b.bessel);
}

TEST(FrameOperator, PeriodTwoAuxiliarySection)
{
    const VectorSequence h = auxiliary_h(fixtures::period_two_sequence(), 4);
    EXPECT_LE(ts::distance(frame_operator_partial(h, 4), {{1, 0}, {0, 0.875}}), 1e-15);
}

TEST(FrameBounds, PeriodTwoAuxiliaryApproachesParseval)
{
    const VectorSequence h = auxiliary_h(fixtures::period_two_sequence(), 40);
    const FrameBounds b = frame_bounds(h, 40);
    EXPECT_NEAR(b.lower, 1.0, 1e-5);
    EXPECT_NEAR(b.upper, 1.0, 1e-5);
}

TEST(FrameBounds, OrthonormalBasisIsParseval)
{
    Rng rng(32);
    const VectorSequence e = random_orthonormal_basis(rng, Field::complex, 4);
    const FrameBounds b = frame_bounds(e, 4);
    EXPECT_TRUE(b.parseval);
    const std::optional<double> tail = frame_tail(e, 4);
    ASSERT_TRUE(tail.has_value());
    EXPECT_NEAR(*tail, 1.0, 1e-12);
    EXPECT_FALSE(frame_tail(e.section(4), 4).has_value());
}

TEST(CanonicalDual, GrammianPairExample)
{
    const VectorSequence phi = fixtures::non_positive_grammian_pair().analysis();
    const VectorSequence dual = canonical_dual(phi, 3);
    EXPECT_EQ(dual.extension(), Extension::explicit_finite);
    EXPECT_LE(ts::distance(dual.term_at(0), {2.0 / 3, -1.0 / 3}), 1e-14);
    EXPECT_LE(ts::distance(dual.term_at(1), {1.0 / 3, 1.0 / 3}), 1e-14);
    EXPECT_LE(ts::distance(dual.term_at(2), {-1.0 / 3, 2.0 / 3}), 1e-14);
}

TEST(CanonicalDual, SingularFrameOperatorThrows)
{
    const VectorSequence e = VectorSequence::periodic({Vector::real({1, 0})});
    try {
        canonical_dual(e, 5);
        FAIL() << "expected singular";
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::singular);
    }
}

TEST(CanonicalDual, FormsDualPair)
{
    Rng rng(33);
    for (int t = 0; t < 30; ++t) {
        const Field field = t % 2 == 0 ? Field::real : Field::complex;
        const Index dim = rng.uniform_index(2, 5);
        const Index count = dim + rng.uniform_index(0, 4);
        const VectorSequence f = random_unit_sequence(rng, field, dim, count);
        const VectorSequence g = canonical_dual(f, count);
        const DualityReport r = duality_check(f, g, count, 1e-9);
        EXPECT_TRUE(r.dual_pair) << r.dual_defect;
        // reconstruction x = sum <x, f_n> g_n
        const Vector x = random_vector(rng, field, dim);
        const Vector y = synthesis_apply(g, analysis_coeffs(f, x, count));
        EXPECT_LE(norm(x - y), 1e-10 * norm(x));
    }
}

TEST(DualityCheck, Examples)
{
    const VectorSequence phi = fixtures::non_positive_grammian_pair().analysis();
    const DualityReport canonical = duality_check(phi, canonical_dual(phi, 3), 3);
    EXPECT_TRUE(canonical.dual_pair);
    EXPECT_FALSE(canonical.biorthogonal);

    const VectorSequence basis = VectorSequence::periodic({Vector::real({1, 0}), Vector::real({0, 1})});
    const DualityReport self = duality_check(basis, basis, 2);
    EXPECT_TRUE(self.dual_pair);
    EXPECT_TRUE(self.biorthogonal);
    EXPECT_EQ(self.max_defect, 0.0);

    const SequencePair bi = fixtures::biorthogonal_plane_pair();
    const DualityReport r = duality_check(bi.analysis(), bi.synthesis(), 2);
    EXPECT_TRUE(r.biorthogonal);
    EXPECT_TRUE(r.dual_pair);
}

TEST(DualityCheck, ParsevalFramesReconstruct)
{
    Rng rng(34);
    for (int t = 0; t < 20; ++t) {
        // rows of an isometry give a Parseval frame
        const Index dim = rng.uniform_index(2, 4);
        const Index count = dim + rng.uniform_index(1, 3);
        const Matrix u = random_unitary(rng, Field::complex, count);
        std::vector<Vector> f;
        for (Index n = 0; n < count; ++n) {
            f.emplace_back(Field::complex, u.values().row(n).head(dim).adjoint());
        }
        const VectorSequence seq = VectorSequence::finite(f);
        EXPECT_TRUE(frame_bounds(seq, count, 1e-10).parseval);
        EXPECT_TRUE(duality_check(seq, seq, count, 1e-10).dual_pair);
    }
}

TEST(Grammian, BothOrientations)
{
    const SequencePair pair = fixtures::non_positive_grammian_pair();
    const GrammianSection sa = mixed_grammian(pair, 3);
    const GrammianSection as = mixed_grammian(pair, 3, GrammianOrientation::analysis_synthesis);
    EXPECT_EQ(sa.orientation, GrammianOrientation::synthesis_analysis);
    for (Index m = 0; m < 3; ++m) {
        for (Index n = 0; n < 3; ++n) {
            EXPECT_EQ(sa.entries(m, n),
                      inner_product(pair.synthesis().term_at(m), pair.analysis().term_at(n)));
            EXPECT_EQ(as.entries(m, n),
                      inner_product(pair.analysis().term_at(m), pair.synthesis().term_at(n)));
        }
    }
    const GrammianPositivity p = grammian_positive(as);
    EXPECT_FALSE(p.positive);
    ASSERT_TRUE(p.failing_order.has_value());
    EXPECT_EQ(*p.failing_order, 3);
    ASSERT_TRUE(p.witness.has_value());
    EXPECT_EQ(p.witness->dim(), 3);
}

TEST(Grammian, PositiveExample)
{
    const SequencePair pair(VectorSequence::periodic({Vector::real({1, 0}), Vector::real({0, 1})}),
                            VectorSequence::periodic({Vector::real({2, 0}), Vector::real({0, 1})}));
    const GrammianSection g = mixed_grammian(pair, 2, GrammianOrientation::analysis_synthesis);
    EXPECT_LE(ts::distance(g.entries, {{2, 0}, {0, 1}}), 0.0);
    const GrammianPositivity p = grammian_positive(g);
    EXPECT_TRUE(p.positive);
    EXPECT_FALSE(p.failing_order.has_value());
}

TEST(Grammian, WitnessHasNegativeForm)
{
    Rng rng(35);
    int failures = 0;
    for (int t = 0; t < 40; ++t) {
        const SequencePair pair = random_normalized_pair(rng, Field::complex, 2, 4, 1.0);
        const GrammianSection g = mixed_grammian(pair, 6);
        const GrammianPositivity p = grammian_positive(g);
        if (p.positive) continue;
        ++failures;
        const Index k = *p.failing_order;
        const CVector& u = p.witness->values();
        const Scalar form = u.dot(g.entries.values().topLeftCorner(k, k) * u);
        EXPECT_LT(form.real(), 0.0);
    }
    EXPECT_GT(failures, 0);
}

TEST(Grammian, CsvFormat)
{
    const SequencePair pair = fixtures::non_positive_grammian_pair();
    std::ostringstream os;
    write_grammian_csv(os, mixed_grammian(pair, 2));
    EXPECT_EQ(os.str(), "m,n,re,im\n0,0,1,0\n0,1,1,0\n1,0,1,0\n1,1,1,0\n");
}

} // namespace
