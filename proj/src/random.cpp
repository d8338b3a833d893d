#include "kaczmarz/random.hpp"

#include <cmath>

namespace kaczmarz {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream)
{
    // splitmix64 finalizer over the combined value
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Vector random_vector(Rng& rng, Field field, Index dim)
{
    CVector v(dim);
    for (Index i = 0; i < dim; ++i) {
        const double re = rng.normal();
        const double im = field == Field::complex ? rng.normal() : 0.0;
        v[i] = Scalar(re, im);
    }
    return Vector(field, std::move(v));
}

Vector random_unit_vector(Rng& rng, Field field, Index dim)
{
    while (true) {
        Vector v = random_vector(rng, field, dim);
        const double n = v.norm();
        if (n > 1e-8) return Scalar(1.0 / n) * v;
    }
}

Matrix random_matrix(Rng& rng, Field field, Index rows, Index cols)
{
    CMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            const double re = rng.normal();
            const double im = field == Field::complex ? rng.normal() : 0.0;
            m(i, j) = Scalar(re, im);
        }
    }
    return Matrix(field, std::move(m));
}

Matrix random_unitary(Rng& rng, Field field, Index n)
{
    const Matrix g = random_matrix(rng, field, n, n);
    if (field == Field::real) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(g.values().real());
        Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
        return Matrix(field, q.cast<Scalar>());
    }
    Eigen::HouseholderQR<CMatrix> qr(g.values());
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    return Matrix(field, std::move(q));
}

namespace {

Eigen::VectorXd log_uniform(Rng& rng, Index n, double max_condition)
{
    Eigen::VectorXd s(n);
    const double top = std::log(max_condition);
    for (Index i = 0; i < n; ++i) s[i] = std::exp(rng.uniform(0.0, top));
    return s;
}

} // namespace

Matrix random_spd(Rng& rng, Field field, Index n, double max_condition)
{
    const Matrix q = random_unitary(rng, field, n);
    const Eigen::VectorXd s = log_uniform(rng, n, max_condition);
    const CMatrix t = q.values() * s.cast<Scalar>().asDiagonal() * q.values().adjoint();
    // exact Hermitian symmetry
    return Matrix(field, 0.5 * (t + CMatrix(t.adjoint())));
}

Matrix random_invertible(Rng& rng, Field field, Index n, double max_condition)
{
    const Matrix u = random_unitary(rng, field, n);
    const Matrix w = random_unitary(rng, field, n);
    const Eigen::VectorXd s = log_uniform(rng, n, max_condition);
    return Matrix(field, u.values() * s.cast<Scalar>().asDiagonal() * w.values().adjoint());
}

VectorSequence random_orthonormal_basis(Rng& rng, Field field, Index n)
{
    const Matrix q = random_unitary(rng, field, n);
    std::vector<Vector> basis;
    for (Index j = 0; j < n; ++j) basis.push_back(q.column(j));
    return VectorSequence::periodic(std::move(basis));
}

VectorSequence random_unit_sequence(Rng& rng, Field field, Index dim, Index length)
{
    std::vector<Vector> terms;
    for (Index j = 0; j < length; ++j) terms.push_back(random_unit_vector(rng, field, dim));
    return VectorSequence::periodic(std::move(terms));
}

SequencePair random_normalized_pair(Rng& rng, Field field, Index dim, Index length, double spread)
{
    std::vector<Vector> phi;
    std::vector<Vector> psi;
    while (static_cast<Index>(phi.size()) < length) {
        const Vector f = random_unit_vector(rng, field, dim);
        const Vector p = f + Scalar(spread) * random_vector(rng, field, dim);
        const Scalar c = inner_product(f, p);
        if (std::abs(c) < 0.2) continue;
        // <f, p / conj(c)> = <f, p> / c = 1
        phi.push_back(f);
        psi.push_back(Vector(field, p.values() / std::conj(c)));
    }
    return SequencePair(VectorSequence::periodic(std::move(phi)),
                        VectorSequence::periodic(std::move(psi)));
}

} // namespace kaczmarz
