#pragma once

// Independent reference computations for the tests. These deliberately avoid
// the library's recursions: auxiliary sequences come from products of
// elementary error maps, iterations are replayed step by step on raw Eigen
// vectors.

#include <cmath>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "kaczmarz/classic.hpp"
#include "kaczmarz/random.hpp"
#include "kaczmarz/sequence.hpp"

namespace testing_support {

using kaczmarz::CMatrix;
using kaczmarz::CVector;
using kaczmarz::Index;

inline double distance(const kaczmarz::Vector& v, std::initializer_list<kaczmarz::Scalar> expect)
{
    CVector e(static_cast<Index>(expect.size()));
    Index i = 0;
    for (kaczmarz::Scalar s : expect) e[i++] = s;
    return (v.values() - e).norm();
}

inline double distance(const kaczmarz::Matrix& a,
                       std::initializer_list<std::initializer_list<double>> expect)
{
    return (a.values() - kaczmarz::Matrix::real(expect).values()).norm();
}

inline CMatrix elementary(const CVector& phi, const CVector& psi)
{
    return CMatrix::Identity(phi.size(), phi.size()) - psi * phi.adjoint();
}

/// g_n = Q_0* Q_1* ... Q_{n-1}* phi_n with Q_k = I - psi_k phi_k*, so that
/// <eps_{n-1}, phi_n> = <x, g_n> for the error eps of the dual iteration.
inline std::vector<CVector> auxiliary_by_products(const kaczmarz::SequencePair& pair, Index count)
{
    const Index d = pair.dim();
    std::vector<CVector> out;
    CMatrix prefix = CMatrix::Identity(d, d);  // Q_{n-1} ... Q_0
    for (Index n = 0; n < count; ++n) {
        const CVector& phi = pair.analysis().term_at(n).values();
        out.push_back(prefix.adjoint() * phi);
        prefix = elementary(phi, pair.synthesis().term_at(n).values()) * prefix;
    }
    return out;
}

/// Error vectors eps_n = x - x_n of the dual iteration, replayed directly.
inline std::vector<CVector> replay_errors(const kaczmarz::SequencePair& pair, const CVector& x,
                                          Index steps)
{
    std::vector<CVector> out;
    CVector eps = x;
    for (Index n = 0; n < steps; ++n) {
        const CVector& phi = pair.analysis().term_at(n).values();
        const CVector& psi = pair.synthesis().term_at(n).values();
        eps = eps - phi.dot(eps) * psi;
        out.push_back(eps);
    }
    return out;
}

/// Per-period decay of |eps| estimated from a long replay.
inline double empirical_rate(const kaczmarz::SequencePair& pair, const CVector& x, int periods)
{
    CVector eps = x / x.norm();
    double log_total = 0.0;
    double log_half = 0.0;
    for (int p = 1; p <= periods; ++p) {
        for (Index k = 0; k < pair.length(); ++k) {
            const CVector& phi = pair.analysis().term_at(k).values();
            const CVector& psi = pair.synthesis().term_at(k).values();
            eps = eps - phi.dot(eps) * psi;
        }
        const double n = eps.norm();
        if (n == 0.0) return 0.0;
        log_total += std::log(n);
        eps /= n;
        if (p == periods / 2) log_half = log_total;
    }
    return std::exp((log_total - log_half) / (periods - periods / 2));
}

/// Unit sequence in the plane drifting to a limit angle:
/// theta_n = theta_inf (1 - r^n). Not effective (the iterates freeze), but
/// almost effective with h-bound A = 1 - prod_{n>=1} cos^2(theta_n - theta_{n-1}).
inline kaczmarz::VectorSequence drifting_sequence(double theta_inf, double r, Index count)
{
    std::vector<kaczmarz::Vector> e;
    for (Index n = 0; n < count; ++n) {
        const double theta = theta_inf * (1.0 - std::pow(r, static_cast<double>(n)));
        e.push_back(kaczmarz::Vector::real({std::cos(theta), std::sin(theta)}));
    }
    return kaczmarz::VectorSequence::finite(std::move(e));
}

inline double drifting_lower_bound(double theta_inf, double r, Index count)
{
    double prod = 1.0;
    for (Index n = 1; n < count; ++n) {
        const double step = theta_inf * std::pow(r, static_cast<double>(n - 1)) * (1.0 - r);
        prod *= std::cos(step) * std::cos(step);
    }
    return 1.0 - prod;
}

/// Periodic unit sequence whose period map radius is below `max_radius`.
inline kaczmarz::VectorSequence effective_unit_sequence(kaczmarz::Rng& rng, kaczmarz::Field field,
                                                        Index dim, Index length, double max_radius)
{
    while (true) {
        kaczmarz::VectorSequence e = kaczmarz::random_unit_sequence(rng, field, dim, length);
        const kaczmarz::ClassicVerdict v = kaczmarz::periodic_effectiveness_oracle(e);
        if (v.reliable && v.period_map_radius < max_radius) return e;
    }
}

} // namespace testing_support
