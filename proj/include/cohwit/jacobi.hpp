#ifndef COHWIT_JACOBI_HPP
#define COHWIT_JACOBI_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "cohwit/errors.hpp"

namespace cohwit::detail {

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
Scalar off_diagonal_norm2(const ComplexMatrix<Scalar>& a)
{
    Scalar off = 0;
    for (Eigen::Index q = 1; q < a.cols(); ++q)
        for (Eigen::Index p = 0; p < q; ++p)
            off += std::norm(a(p, q));
    return off;
}

/// Cyclic complex Jacobi for a Hermitian matrix. Each (p,q) step first
/// removes the phase of a_pq with a diagonal unitary, then applies the
/// real symmetric rotation that annihilates the now-real element.
///
/// On return `a` is diagonal (eigenvalues on the diagonal, unsorted) and
/// the columns of `v` are the matching orthonormal eigenvectors.
template <typename Scalar>
void cyclic_jacobi(ComplexMatrix<Scalar>& a, ComplexMatrix<Scalar>& v)
{
    using Complex = std::complex<Scalar>;
    const Eigen::Index n = a.rows();
    v = ComplexMatrix<Scalar>::Identity(n, n);
    if (n < 2)
        return;

    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    const Scalar scale2 = a.squaredNorm();
    const long max_sweeps = 10L * n * n;

    for (long sweep = 0;; ++sweep) {
        const Scalar off = off_diagonal_norm2<Scalar>(a);
        if (off == Scalar(0) || off <= eps * eps * scale2)
            return;
        if (sweep >= max_sweeps)
            throw Error(ErrorKind::NonConvergence,
                        "Jacobi exceeded " + std::to_string(max_sweeps) + " sweeps");

        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const Scalar g = std::abs(apq);
                if (g == Scalar(0))
                    continue;
                const Complex phase = apq / g;
                const Complex phase_c = std::conj(phase);
                const Scalar app = a(p, p).real();
                const Scalar aqq = a(q, q).real();

                const Scalar theta = (aqq - app) / (Scalar(2) * g);
                Scalar t = Scalar(1) / (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
                if (theta < Scalar(0))
                    t = -t;
                const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
                const Scalar s = t * c;

                // A <- A G,  G = [[c, s], [-s conj(e), c conj(e)]] on (p, q)
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * phase_c * akq;
                    a(k, q) = s * akp + c * phase_c * akq;
                }
                // A <- G^H A
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = c * vkp - s * phase_c * vkq;
                    v(k, q) = s * vkp + c * phase_c * vkq;
                }
                a(p, q) = Complex(0);
                a(q, p) = Complex(0);
                a(p, p) = Complex(app - t * g);
                a(q, q) = Complex(aqq + t * g);
            }
        }
    }
}

/// Sorts eigenpairs ascending and rotates every eigenvector so that its
/// largest-modulus component (first index on ties) is real and positive.
template <typename Scalar>
void canonicalize_eigenpairs(RealVector<Scalar>& values, ComplexMatrix<Scalar>& vectors)
{
    const Eigen::Index n = values.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return values(i) < values(j); });

    RealVector<Scalar> sorted_values(n);
    ComplexMatrix<Scalar> sorted_vectors(vectors.rows(), n);
    for (Eigen::Index k = 0; k < n; ++k) {
        sorted_values(k) = values(order[static_cast<std::size_t>(k)]);
        sorted_vectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
    }

    for (Eigen::Index k = 0; k < n; ++k) {
        auto col = sorted_vectors.col(k);
        Eigen::Index best = 0;
        Scalar best_abs = -1;
        for (Eigen::Index i = 0; i < col.size(); ++i) {
            const Scalar m = std::abs(col(i));
            if (m > best_abs) {
                best_abs = m;
                best = i;
            }
        }
        if (best_abs > Scalar(0)) {
            col *= std::conj(col(best)) / best_abs;
            col(best) = std::complex<Scalar>(col(best).real(), Scalar(0));
        }
    }
    values = std::move(sorted_values);
    vectors = std::move(sorted_vectors);
}

} // namespace cohwit::detail

#endif // COHWIT_JACOBI_HPP
