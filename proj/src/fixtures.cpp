#include "kaczmarz/fixtures.hpp"

#include <cmath>

namespace kaczmarz::fixtures {

SequencePair negated_basis_pair(Index dim)
{
    if (dim < 1) throw Error(ErrorKind::invalid_argument, "negated_basis_pair: dim must be >= 1");
    std::vector<Vector> phi;
    std::vector<Vector> psi;
    for (Index k = 0; k < dim; ++k) {
        phi.push_back(Vector::basis(Field::real, dim, k));
        psi.push_back(-phi.back());
    }
    return SequencePair(VectorSequence::periodic(std::move(phi)),
                        VectorSequence::periodic(std::move(psi)));
}

SequencePair nonsymmetric_pair()
{
    return SequencePair(
        VectorSequence::periodic({Vector::real({1, -1}), Vector::real({1, 1}),
                                  Vector::real({0.5, -0.5})}),
        VectorSequence::periodic({Vector::real({1, 0}), Vector::real({1, 0}),
                                  Vector::real({1.5, -0.5})}));
}

SequencePair non_positive_grammian_pair()
{
    return SequencePair(
        VectorSequence::periodic({Vector::real({1, 0}), Vector::real({1, 1}), Vector::real({0, 1})}),
        VectorSequence::periodic({Vector::real({1, 0}), Vector::real({1, 0}), Vector::real({0, 1})}));
}

SequencePair biorthogonal_plane_pair()
{
    return SequencePair(VectorSequence::finite({Vector::real({1, 0}), Vector::real({1, 1})}),
                        VectorSequence::finite({Vector::real({1, -1}), Vector::real({0, 1})}));
}

VectorSequence period_two_sequence()
{
    const double r = 1.0 / std::sqrt(2.0);
    return VectorSequence::periodic({Vector::real({1, 0}), Vector::real({r, r})});
}

} // namespace kaczmarz::fixtures
