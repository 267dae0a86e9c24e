#ifndef COHWIT_SIMPLEX_SOLVER_HPP
#define COHWIT_SIMPLEX_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "cohwit/operator_core.hpp"

namespace cohwit {

template <typename Scalar = double>
struct SimplexOptions {
    int restarts = 20;
    int iterations = 2000;
    /// Step at iteration k is step_scale / sqrt(k) along the normalized supergradient.
    Scalar step_scale = Scalar(0.5);
    /// Lower bound on every weight; 0 for the closed simplex.
    Scalar floor = 0;
    std::uint64_t seed = 0;
};

template <typename Scalar = double>
struct SimplexSearchResult {
    RealVector<Scalar> weights;
    /// lambda_min(sum_i weights_i W_i), recomputed at `weights`.
    Scalar value;
    /// A state with Tr[W_i rho] < -tol for every i, when one turned up.
    std::optional<DensityMatrix<Scalar>> common_state;
    long evaluations = 0;
};

namespace detail {

/// Euclidean projection onto {t : t_i >= floor, sum t_i = 1}.
template <typename Scalar>
RealVector<Scalar> project_to_simplex(const RealVector<Scalar>& y, Scalar floor)
{
    const Eigen::Index n = y.size();
    const Scalar radius = Scalar(1) - Scalar(n) * floor;
    RealVector<Scalar> shifted = y.array() - floor;
    std::vector<Scalar> u(shifted.data(), shifted.data() + n);
    std::sort(u.begin(), u.end(), std::greater<Scalar>());
    Scalar cumsum = 0;
    Scalar theta = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
        cumsum += u[static_cast<std::size_t>(k)];
        const Scalar candidate = (cumsum - radius) / Scalar(k + 1);
        if (u[static_cast<std::size_t>(k)] - candidate > Scalar(0))
            theta = candidate;
    }
    return (shifted.array() - theta).max(Scalar(0)) + floor;
}

template <typename Scalar>
HermitianMatrix<Scalar> combine(const std::vector<HermitianMatrix<Scalar>>& ws,
                                const RealVector<Scalar>& t)
{
    ComplexMatrix<Scalar> sum = ComplexMatrix<Scalar>::Zero(ws.front().dim(), ws.front().dim());
    for (std::size_t i = 0; i < ws.size(); ++i)
        sum += t(static_cast<Eigen::Index>(i)) * ws[i].matrix();
    return HermitianMatrix<Scalar>::hermitian_part(sum);
}

template <typename Scalar>
bool below_for_all(const std::vector<HermitianMatrix<Scalar>>& ws, const DensityMatrix<Scalar>& rho,
                   Scalar tol)
{
    return std::all_of(ws.begin(), ws.end(),
                       [&](const auto& w) { return expectation(w, rho) < -tol; });
}

} // namespace detail

/// Maximizes the concave function t -> lambda_min(sum_i t_i W_i) over the
/// (floored) probability simplex by projected supergradient ascent. The
/// supergradient at t is (<v|W_i|v>)_i for a bottom eigenvector v.
///
/// A run stops as soon as either side is certified: the value reaches
/// -tol, or a state is found on which every W_i is below -tol (the bottom
/// eigenvector, or the step-weighted average of past bottom eigenvectors).
template <typename Scalar>
SimplexSearchResult<Scalar> maximize_min_eigenvalue(const std::vector<HermitianMatrix<Scalar>>& ws,
                                                    const SimplexOptions<Scalar>& opt, Scalar tol)
{
    const auto n = static_cast<Eigen::Index>(ws.size());
    if (n == 0)
        throw Error(ErrorKind::InvalidArgument, "empty witness list");
    if (Scalar(n) * opt.floor > Scalar(1))
        throw Error(ErrorKind::InvalidArgument, "weight floor infeasible for this many witnesses");
    const Eigen::Index d = ws.front().dim();

    SimplexSearchResult<Scalar> best;
    best.value = -std::numeric_limits<Scalar>::infinity();
    std::mt19937_64 rng(opt.seed);
    std::exponential_distribution<Scalar> expo(Scalar(1));

    for (int restart = 0; restart < std::max(1, opt.restarts); ++restart) {
        RealVector<Scalar> t = RealVector<Scalar>::Constant(n, Scalar(1) / Scalar(n));
        if (restart > 0) {
            for (Eigen::Index i = 0; i < n; ++i)
                t(i) = expo(rng);
            t /= t.sum();
            t = detail::project_to_simplex<Scalar>(t, opt.floor);
        }

        ComplexMatrix<Scalar> avg_state = ComplexMatrix<Scalar>::Zero(d, d);
        Scalar avg_weight = 0;

        for (int k = 1; k <= std::max(1, opt.iterations); ++k) {
            const auto eig = spectral_decompose(detail::combine(ws, t));
            ++best.evaluations;
            const Scalar value = eig.eigenvalues(0);
            if (value > best.value) {
                best.value = value;
                best.weights = t;
            }
            if (value >= -tol)
                break;

            const ComplexVector<Scalar> v = eig.eigenvectors.col(0);
            RealVector<Scalar> g(n);
            for (Eigen::Index i = 0; i < n; ++i)
                g(i) = (v.adjoint() * ws[static_cast<std::size_t>(i)].matrix() * v)(0).real();
            if (g.maxCoeff() < -tol) {
                best.common_state = DensityMatrix<Scalar>::pure(v);
                break;
            }
            if (n == 1)
                break;

            const Scalar step = opt.step_scale / std::sqrt(Scalar(k));
            avg_state += step * (v * v.adjoint());
            avg_weight += step;
            if (k % 50 == 0) {
                const auto avg = DensityMatrix<Scalar>::from(
                    HermitianMatrix<Scalar>::hermitian_part(avg_state / avg_weight));
                if (detail::below_for_all(ws, avg, tol)) {
                    best.common_state = avg;
                    break;
                }
            }

            // The supergradient is only defined up to the simplex's normal
            // direction; remove the mean before normalizing.
            RealVector<Scalar> dir = g.array() - g.mean();
            const Scalar norm = dir.norm();
            if (!(norm > Scalar(0)))
                break;
            t = detail::project_to_simplex<Scalar>(t + (step / norm) * dir, opt.floor);
        }
        if (best.value >= -tol || best.common_state)
            break;
    }
    best.value = min_eigenvalue(detail::combine(ws, best.weights));
    return best;
}

} // namespace cohwit

#endif // COHWIT_SIMPLEX_SOLVER_HPP
