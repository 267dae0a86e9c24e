#ifndef COHWIT_ANALYSIS_HPP
#define COHWIT_ANALYSIS_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "cohwit/simplex_solver.hpp"
#include "cohwit/synthesis.hpp"
#include "cohwit/witness.hpp"

namespace cohwit {

/// Convex weights whose combination of the witnesses is PSD.
template <typename Scalar = double>
struct SimplexCertificate {
    RealVector<Scalar> weights;
    Scalar combined_min_eigenvalue;
};

/// Recomputes lambda_min(sum_i t_i W_i) and checks that the weights lie on
/// the probability simplex; used to re-verify certificates independently.
template <typename Scalar>
bool verify_certificate(const std::vector<HermitianMatrix<Scalar>>& ws,
                        const SimplexCertificate<Scalar>& cert, Scalar tol = Tolerances<Scalar>{}.psd)
{
    if (static_cast<std::size_t>(cert.weights.size()) != ws.size() || ws.empty())
        return false;
    if ((cert.weights.array() < Scalar(0)).any() ||
        std::abs(cert.weights.sum() - Scalar(1)) > Scalar(1e-10))
        return false;
    const Scalar lmin = min_eigenvalue(detail::combine(ws, cert.weights));
    return std::abs(lmin - cert.combined_min_eigenvalue) <= Scalar(1e-9) && lmin >= -tol;
}

enum class IntersectionStatus { ProvedEmpty, FoundCommonState, Undecided };

inline const char* to_string(IntersectionStatus s)
{
    switch (s) {
    case IntersectionStatus::ProvedEmpty: return "proved_empty";
    case IntersectionStatus::FoundCommonState: return "found_common_state";
    case IntersectionStatus::Undecided: return "undecided";
    }
    return "?";
}

template <typename Scalar = double>
struct IntersectionVerdict {
    IntersectionStatus status = IntersectionStatus::Undecided;
    std::optional<SimplexCertificate<Scalar>> certificate;
    std::optional<DensityMatrix<Scalar>> common_state;
    /// Best lambda_min reached, whatever the status.
    Scalar best_min_eigenvalue = 0;
};

template <typename Scalar = double>
struct IntersectionOptions {
    SimplexOptions<Scalar> solver{};
    /// Random states tried when the solver does not certify either side.
    int fallback_samples = 4096;
};

namespace detail {

template <typename Scalar>
std::vector<HermitianMatrix<Scalar>> matrices_of(const std::vector<Witness<Scalar>>& ws)
{
    std::vector<HermitianMatrix<Scalar>> out;
    out.reserve(ws.size());
    for (const auto& w : ws)
        out.push_back(w.matrix());
    return out;
}

} // namespace detail

/// Decides whether the detection regions of witnesses of class ">" or ">="
/// have empty intersection: empty iff some convex combination is PSD.
template <typename Scalar>
IntersectionVerdict<Scalar> intersection_empty_B(const std::vector<Witness<Scalar>>& witnesses,
                                                 const TraceClass& x,
                                                 const IntersectionOptions<Scalar>& opt = {},
                                                 Scalar tol = Tolerances<Scalar>{}.psd)
{
    const CriterionFamily fam = criterion_family(x);
    if (fam != CriterionFamily::B1 && fam != CriterionFamily::B2)
        throw Error(ErrorKind::UnsupportedClass, "intersection_empty_B needs x = gt or geq");
    const Eigen::Index d = detail::require_nontrivial_set(witnesses, x, tol);
    const auto ws = detail::matrices_of(witnesses);

    const auto search = maximize_min_eigenvalue(ws, opt.solver, tol);
    IntersectionVerdict<Scalar> out;
    out.best_min_eigenvalue = search.value;
    if (search.value >= -tol) {
        out.status = IntersectionStatus::ProvedEmpty;
        out.certificate = SimplexCertificate<Scalar>{search.weights, search.value};
        return out;
    }
    if (search.common_state) {
        out.status = IntersectionStatus::FoundCommonState;
        out.common_state = search.common_state;
        return out;
    }

    std::mt19937_64 rng(opt.solver.seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<Scalar> normal;
    for (int s = 0; s < opt.fallback_samples; ++s) {
        std::optional<DensityMatrix<Scalar>> rho;
        if (s % 2 == 0) {
            rho = sample_density<Scalar>(d, rng);
        } else {
            ComplexVector<Scalar> v(d);
            for (Eigen::Index i = 0; i < d; ++i) {
                const Scalar re = normal(rng);
                const Scalar im = normal(rng);
                v(i) = std::complex<Scalar>(re, im);
            }
            rho = DensityMatrix<Scalar>::pure(v);
        }
        if (detail::below_for_all(ws, *rho, tol)) {
            out.status = IntersectionStatus::FoundCommonState;
            out.common_state = rho;
            return out;
        }
    }
    return out;
}

template <typename Scalar = double>
struct SufficientConditionResult {
    bool sufficient_condition_holds = false;
    std::size_t subsets_checked = 0;
    /// Bitmask of the first subset that admitted no strictly positive PSD
    /// combination, when the condition fails.
    std::optional<std::uint32_t> failing_subset;
};

inline constexpr std::size_t max_subset_witnesses = 20;

/// Sufficient test for empty intersection when x = r > 0: every subset of
/// size >= ceil(n/2) must admit strictly positive weights (floored at
/// 1e-6) with a PSD combination. Stops at the first failing subset.
template <typename Scalar>
SufficientConditionResult<Scalar> intersection_sufficient_A(const std::vector<Witness<Scalar>>& witnesses,
                                                            const TraceClass& x,
                                                            SimplexOptions<Scalar> opt = {},
                                                            Scalar tol = Tolerances<Scalar>{}.psd)
{
    if (criterion_family(x) != CriterionFamily::A)
        throw Error(ErrorKind::UnsupportedClass, "intersection_sufficient_A needs x = r > 0");
    if (witnesses.size() > max_subset_witnesses)
        throw Error(ErrorKind::TooManyWitnesses, "subset enumeration is limited to 20 witnesses");
    detail::require_nontrivial_set(witnesses, x, tol);
    opt.floor = Scalar(1e-6);

    const auto n = static_cast<std::uint32_t>(witnesses.size());
    const std::uint32_t min_size = (n + 1) / 2;
    const auto all = detail::matrices_of(witnesses);

    SufficientConditionResult<Scalar> out;
    for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
        if (static_cast<std::uint32_t>(std::popcount(mask)) < min_size)
            continue;
        std::vector<HermitianMatrix<Scalar>> subset;
        for (std::uint32_t i = 0; i < n; ++i)
            if (mask & (std::uint32_t(1) << i))
                subset.push_back(all[i]);
        ++out.subsets_checked;
        const auto search = maximize_min_eigenvalue(subset, opt, tol);
        if (search.value < -tol) {
            out.failing_subset = mask;
            return out;
        }
    }
    out.sufficient_condition_holds = true;
    return out;
}

template <typename Scalar = double>
struct CommonStateOptions {
    int grid_points = 1024;
    /// In [0, 1). Shifts the mixing grid and blends the final state toward
    /// I/d by perturbation/2; distinct values give distinct common states.
    Scalar perturbation = 0;
};

/// A state with nonzero expectation under every traceless witness, built
/// by induction: extend a common state of a prefix by mixing it with a
/// state that W_k detects, choosing the mixing weight on a grid so that no
/// affine expectation f_i(lambda) sits at its root.
template <typename Scalar>
DensityMatrix<Scalar> common_state_C(const std::vector<Witness<Scalar>>& witnesses, const TraceClass& x,
                                     const CommonStateOptions<Scalar>& opt = {},
                                     Scalar tol = Tolerances<Scalar>{}.psd)
{
    if (!x.is_fixed_zero())
        throw Error(ErrorKind::UnsupportedClass, "common_state_C needs x = 0");
    if (!(opt.perturbation >= Scalar(0) && opt.perturbation < Scalar(1)) || opt.grid_points < 1)
        throw Error(ErrorKind::InvalidArgument, "perturbation must lie in [0, 1), grid_points >= 1");
    const Eigen::Index d = detail::require_nontrivial_set(witnesses, x, tol);
    const auto ws = detail::matrices_of(witnesses);

    auto rho = DensityMatrix<Scalar>::pure(spectral_decompose(ws.front()).eigenvectors.col(0));
    const Scalar shift = (Scalar(1) + opt.perturbation) / Scalar(2);

    for (std::size_t k = 1; k < ws.size(); ++k) {
        std::vector<Scalar> a(k + 1);
        bool all_nonzero = true;
        for (std::size_t i = 0; i <= k; ++i) {
            a[i] = expectation(ws[i], rho);
            all_nonzero = all_nonzero && std::abs(a[i]) > tol;
        }
        if (all_nonzero)
            continue;

        const auto eig = spectral_decompose(ws[k]);
        const std::array<ComplexVector<Scalar>, 2> sigmas{eig.eigenvectors.col(0),
                                                          eig.eigenvectors.col(d - 1)};
        Scalar best_score = -1;
        Scalar best_lambda = 0;
        std::size_t best_sigma = 0;
        for (std::size_t c = 0; c < sigmas.size(); ++c) {
            const auto sigma = DensityMatrix<Scalar>::pure(sigmas[c]);
            std::vector<Scalar> b(k + 1);
            for (std::size_t i = 0; i <= k; ++i)
                b[i] = expectation(ws[i], sigma);
            for (int j = 0; j < opt.grid_points; ++j) {
                const Scalar lambda = (Scalar(j) + shift) / Scalar(opt.grid_points + 1);
                Scalar score = std::numeric_limits<Scalar>::infinity();
                for (std::size_t i = 0; i <= k; ++i)
                    score = std::min(score, std::abs(lambda * a[i] + (Scalar(1) - lambda) * b[i]));
                if (score > best_score) {
                    best_score = score;
                    best_lambda = lambda;
                    best_sigma = c;
                }
            }
        }
        rho = DensityMatrix<Scalar>::mix(best_lambda, rho,
                                         DensityMatrix<Scalar>::pure(sigmas[best_sigma]));
    }

    const auto all_nonzero = [&](const DensityMatrix<Scalar>& s) {
        return std::all_of(ws.begin(), ws.end(),
                           [&](const auto& w) { return std::abs(expectation(w, s)) > tol; });
    };
    if (opt.perturbation > Scalar(0)) {
        auto blended = DensityMatrix<Scalar>::mix(Scalar(1) - opt.perturbation / Scalar(2), rho,
                                                  DensityMatrix<Scalar>::maximally_mixed(d));
        if (all_nonzero(blended))
            rho = std::move(blended);
    }
    if (!all_nonzero(rho))
        throw Error(ErrorKind::NonConvergence, "no mixing weight separated every expectation from zero");
    return rho;
}

enum class Relation { Equal, Included, Incomparable };

inline const char* to_string(Relation r)
{
    switch (r) {
    case Relation::Equal: return "equal";
    case Relation::Included: return "included";
    case Relation::Incomparable: return "incomparable";
    }
    return "?";
}

/// For Included, C[W2] ⊆ C[W1] via W2 = scale * W1 + psd_remainder.
template <typename Scalar = double>
struct EquivalenceResult {
    Relation relation = Relation::Incomparable;
    std::optional<Scalar> scale;
    std::optional<HermitianMatrix<Scalar>> psd_remainder;
};

namespace detail {

/// Least-squares r for W2 ≈ r W1 and the max-entry residual.
template <typename Scalar>
std::pair<Scalar, Scalar> proportionality(const HermitianMatrix<Scalar>& w1, const HermitianMatrix<Scalar>& w2)
{
    const Scalar r = inner(w1, w2) / inner(w1, w1);
    return {r, max_abs(w2 - r * w1)};
}

/// max over a in [lo, hi] of the concave g(a) = lambda_min(W2 - a W1).
template <typename Scalar>
std::pair<Scalar, Scalar> maximize_shift(const HermitianMatrix<Scalar>& w1, const HermitianMatrix<Scalar>& w2,
                                         Scalar lo, Scalar hi)
{
    const auto g = [&](Scalar a) { return min_eigenvalue(w2 - a * w1); };
    Scalar best_a = lo;
    Scalar best_g = g(lo);
    if (hi > lo) {
        const Scalar ghi = g(hi);
        if (ghi > best_g) {
            best_a = hi;
            best_g = ghi;
        }
        const Scalar inv_phi = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
        Scalar a = lo;
        Scalar b = hi;
        Scalar c = b - inv_phi * (b - a);
        Scalar e = a + inv_phi * (b - a);
        Scalar gc = g(c);
        Scalar ge = g(e);
        const Scalar width = Scalar(1e-10) * std::max(Scalar(1), hi);
        for (int it = 0; it < 500 && b - a > width; ++it) {
            if (gc >= ge) {
                b = e;
                e = c;
                ge = gc;
                c = b - inv_phi * (b - a);
                gc = g(c);
            } else {
                a = c;
                c = e;
                gc = ge;
                e = a + inv_phi * (b - a);
                ge = g(e);
            }
        }
        for (const auto& [ax, gx] : {std::pair{c, gc}, std::pair{e, ge}})
            if (gx > best_g) {
                best_a = ax;
                best_g = gx;
            }
    }
    return {best_a, best_g};
}

} // namespace detail

/// Equality and inclusion of detection regions of two nontrivial witnesses
/// of the same class.
///
/// - x = ">" or ">=": Equal iff W2 = r W1 with r > 0; otherwise Included
///   (C[W2] ⊆ C[W1]) iff W2 = a W1 + P with a > 0 and P PSD, decided by
///   maximizing lambda_min(W2 - a W1) over a in [tol, a_max] with
///   a_max = lambda_max(W2) / lambda_max(W1) (larger a cannot leave a PSD
///   remainder along the top eigenvector of W1).
/// - x = 0: Equal iff W2 = r W1 for real r != 0; never a strict inclusion.
/// - x = r > 0: Equal iff W1 = W2, or d = 2 and W1 + W2 = r I. Inclusion is
///   not characterized for this class, so anything else is Incomparable.
template <typename Scalar>
EquivalenceResult<Scalar> region_relation(const Witness<Scalar>& w1, const Witness<Scalar>& w2,
                                          const TraceClass& x, Scalar tol = Tolerances<Scalar>{}.psd)
{
    if (!(w1.trace_class() == x) || !(w2.trace_class() == x))
        throw Error(ErrorKind::ClassMismatch, "both witnesses must have class " + x.to_string());
    detail::require_nontrivial_set(std::vector<Witness<Scalar>>{w1, w2}, x, tol);
    const auto& m1 = w1.matrix();
    const auto& m2 = w2.matrix();

    EquivalenceResult<Scalar> out;
    switch (criterion_family(x)) {
    case CriterionFamily::B1:
    case CriterionFamily::B2: {
        const auto [r, residual] = detail::proportionality(m1, m2);
        if (r > Scalar(0) && residual <= tol) {
            out.relation = Relation::Equal;
            out.scale = r;
            return out;
        }
        const Scalar lo = tol;
        const Scalar hi = max_eigenvalue(m2) / max_eigenvalue(m1);
        const auto [a, ga] = detail::maximize_shift(m1, m2, lo, std::max(lo, hi));
        if (ga >= -tol && a >= tol) {
            out.relation = Relation::Included;
            out.scale = a;
            out.psd_remainder = m2 - a * m1;
        }
        return out;
    }
    case CriterionFamily::C: {
        const auto [r, residual] = detail::proportionality(m1, m2);
        if (r != Scalar(0) && residual <= tol) {
            out.relation = Relation::Equal;
            out.scale = r;
        }
        return out;
    }
    case CriterionFamily::A: {
        if (max_abs(m1 - m2) <= tol) {
            out.relation = Relation::Equal;
            out.scale = Scalar(1);
        } else if (m1.dim() == 2 &&
                   max_abs(m1 + m2 - Scalar(x.value()) * HermitianMatrix<Scalar>::identity(2)) <= tol) {
            out.relation = Relation::Equal;
        }
        return out;
    }
    }
    return out;
}

/// Complex dimension of span{rho : Tr[W rho] = 0}, measured by building
/// zero-expectation states rho_eps = (eps H + (1 - eps) rho0) / N from the
/// positive definite zero-expectation state rho0 and a spanning set of the
/// Hermitian matrices trace-orthogonal to W, then taking the numerical rank
/// of their vectorizations. Equals d^2 - 1 for every nontrivial witness.
template <typename Scalar>
Eigen::Index orthocomplement_dimension(const Witness<Scalar>& w, const Tolerances<Scalar>& tol = {})
{
    using Complex = std::complex<Scalar>;
    if (!validate_witness(w.matrix(), w.trace_class(), tol.psd).nontrivial)
        throw Error(ErrorKind::NotNontrivial, "witness has no negative eigenvalue");
    const Eigen::Index d = w.dim();
    const auto& W = w.matrix();
    const auto rho0 = zero_expectation_state(W, tol.psd).interior;
    const Scalar rho0_min = min_eigenvalue(rho0.hermitian());
    const Scalar ww = inner(W, W);

    std::vector<HermitianMatrix<Scalar>> basis;
    for (Eigen::Index j = 0; j < d; ++j) {
        ComplexMatrix<Scalar> e = ComplexMatrix<Scalar>::Zero(d, d);
        e(j, j) = Complex(1, 0);
        basis.emplace_back(e);
        for (Eigen::Index k = j + 1; k < d; ++k) {
            basis.push_back(Scalar(2) * pair_witness<Scalar>(d, {j, k, PairPart::Real, 1}));
            basis.push_back(Scalar(2) * pair_witness<Scalar>(d, {j, k, PairPart::Imag, 1}));
        }
    }

    ComplexMatrix<Scalar> columns(d * d, static_cast<Eigen::Index>(basis.size()) + 1);
    columns.col(0) = rho0.matrix().reshaped();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto h = basis[i] - (inner(W, basis[i]) / ww) * W;
        const Scalar hnorm = h.matrix().norm();
        const Scalar eps = hnorm > Scalar(0) ? rho0_min / (Scalar(2) * (rho0_min + hnorm)) : Scalar(0);
        const auto p = eps * h + (Scalar(1) - eps) * rho0.hermitian();
        const auto state = DensityMatrix<Scalar>::from(p / p.trace());
        columns.col(static_cast<Eigen::Index>(i) + 1) = state.matrix().reshaped();
    }

    Eigen::BDCSVD<ComplexMatrix<Scalar>> svd(columns);
    const auto& sv = svd.singularValues();
    const Scalar cutoff = tol.rank * sv(0);
    return static_cast<Eigen::Index>((sv.array() > cutoff).count());
}

} // namespace cohwit

#endif // COHWIT_ANALYSIS_HPP
