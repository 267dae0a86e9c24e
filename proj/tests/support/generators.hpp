#ifndef COHWIT_TESTS_GENERATORS_HPP
#define COHWIT_TESTS_GENERATORS_HPP

// Random instance generators shared by the unit and acceptance suites.

#include <random>
#include <vector>

#include "cohwit/operator_core.hpp"
#include "cohwit/witness.hpp"

namespace cohwit::testing {

using Rng = std::mt19937_64;
using HM = HermitianMatrix<double>;
using DM = DensityMatrix<double>;
using Cx = std::complex<double>;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Eigen::Index uniform_dim(Rng& rng, Eigen::Index lo, Eigen::Index hi)
{
    return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng);
}

inline Cx complex_normal(Rng& rng)
{
    std::normal_distribution<double> n;
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

inline HM random_hermitian(Eigen::Index d, Rng& rng)
{
    ComplexMatrix<double> m(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i)
            m(i, j) = complex_normal(rng);
    return HM::hermitian_part(m);
}

/// Random member of W_x: nonnegative diagonal, trace fixed by the class.
inline HM random_member(Eigen::Index d, const TraceClass& x, Rng& rng)
{
    ComplexMatrix<double> m = ComplexMatrix<double>::Zero(d, d);
    const double off_scale = uniform(rng, 0.05, 1.5);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < j; ++i) {
            m(i, j) = off_scale * complex_normal(rng);
            m(j, i) = std::conj(m(i, j));
        }
    if (!x.is_fixed_zero()) {
        for (Eigen::Index i = 0; i < d; ++i) {
            // Occasionally zero diagonals, to reach the interval endpoints.
            const bool zero = x.kind() == TraceClass::Kind::NonNegative ? uniform(rng) < 0.2
                                                                        : uniform(rng) < 0.1;
            m(i, i) = zero ? 0.0 : uniform(rng, 0.0, 2.0);
        }
        if (m.diagonal().real().sum() <= 0.0)
            m(0, 0) = 1.0;
    }
    HM w = HM::hermitian_part(m);
    if (x.is_fixed_positive())
        w = (x.value() / w.trace()) * w;
    return w;
}

/// Random member of W_x^c, with a clear negative eigenvalue.
inline HM random_nontrivial(Eigen::Index d, const TraceClass& x, Rng& rng, double margin = 1e-3)
{
    for (;;) {
        HM w = random_member(d, x, rng);
        if (min_eigenvalue(w) < -margin * std::max(1.0, max_abs(w)))
            return w;
    }
}

inline std::vector<Witness<double>> random_nontrivial_set(std::size_t n, Eigen::Index d,
                                                          const TraceClass& x, Rng& rng)
{
    std::vector<Witness<double>> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(Witness<double>::make(random_nontrivial(d, x, rng), x));
    return out;
}

/// Random diagonal state; one in five is a computational basis projector.
inline DM random_incoherent(Eigen::Index d, Rng& rng)
{
    RealVector<double> p(d);
    if (uniform(rng) < 0.2) {
        p.setZero();
        p(uniform_dim(rng, 0, d - 1)) = 1.0;
        return DM::diagonal(p);
    }
    std::exponential_distribution<double> e(1.0);
    for (Eigen::Index i = 0; i < d; ++i)
        p(i) = e(rng);
    p /= p.sum();
    return DM::diagonal(p);
}

inline DM random_coherent(Eigen::Index d, Rng& rng)
{
    for (;;) {
        DM rho = sample_density<double>(d, rng);
        if (max_off_diagonal(rho.hermitian()) > 1e-6)
            return rho;
    }
}

inline DM random_pure(Eigen::Index d, Rng& rng)
{
    ComplexVector<double> v(d);
    for (Eigen::Index i = 0; i < d; ++i)
        v(i) = complex_normal(rng);
    return DM::pure(v);
}

inline HM random_psd(Eigen::Index d, Rng& rng, double scale = 1.0)
{
    ComplexMatrix<double> g(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i)
            g(i, j) = complex_normal(rng);
    return scale * HM::hermitian_part(g * g.adjoint() / double(d));
}

} // namespace cohwit::testing

#endif // COHWIT_TESTS_GENERATORS_HPP
