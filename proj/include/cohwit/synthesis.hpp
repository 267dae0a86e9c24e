#ifndef COHWIT_SYNTHESIS_HPP
#define COHWIT_SYNTHESIS_HPP

#include <algorithm>
#include <limits>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cohwit/witness.hpp"

namespace cohwit {

enum class PairPart { Real, Imag };

/// Identifies ±W^R_{j,k} or ±W^I_{j,k}; j < k are zero-based.
struct PairLabel {
    Eigen::Index j = 0;
    Eigen::Index k = 1;
    PairPart part = PairPart::Real;
    int sign = 1;

    /// One-based display form, e.g. "+R(1,2)" or "-I(2,3)".
    std::string to_string() const
    {
        return std::string(sign > 0 ? "+" : "-") + (part == PairPart::Real ? "R(" : "I(") +
               std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
    }

    friend bool operator==(const PairLabel&, const PairLabel&) = default;
};

/// W^R_{j,k} = (|j><k| + |k><j|)/2 and W^I_{j,k} = i(|j><k| - |k><j|)/2,
/// so that Tr[W^R rho] = Re(rho_jk) and Tr[W^I rho] = Im(rho_jk).
template <typename Scalar = double>
HermitianMatrix<Scalar> pair_witness(Eigen::Index dim, const PairLabel& label)
{
    using Complex = std::complex<Scalar>;
    if (label.j < 0 || label.j >= label.k || label.k >= dim)
        throw Error(ErrorKind::InvalidArgument, "pair indices must satisfy 0 <= j < k < dim");
    ComplexMatrix<Scalar> m = ComplexMatrix<Scalar>::Zero(dim, dim);
    const Scalar half = Scalar(label.sign) * Scalar(0.5);
    if (label.part == PairPart::Real) {
        m(label.j, label.k) = Complex(half, 0);
        m(label.k, label.j) = Complex(half, 0);
    } else {
        m(label.j, label.k) = Complex(0, half);
        m(label.k, label.j) = Complex(0, -half);
    }
    return HermitianMatrix<Scalar>(m);
}

template <typename Scalar = double>
struct PairWitnessFamily {
    Eigen::Index dim = 0;
    std::vector<std::pair<PairLabel, HermitianMatrix<Scalar>>> members;
};

/// The finite complete families: {W^R, W^I} for x = 0 (d(d-1) members) and
/// {±W^R, ±W^I} for x = ">=" (2d(d-1) members). Other classes are not
/// finitely completable and raise UnsupportedClass.
template <typename Scalar = double>
PairWitnessFamily<Scalar> complete_family(Eigen::Index dim, const TraceClass& x)
{
    const CriterionFamily fam = criterion_family(x);
    if (fam != CriterionFamily::C && fam != CriterionFamily::B2)
        throw Error(ErrorKind::UnsupportedClass,
                    "class " + x.to_string() + " admits no finite complete family");
    if (dim < 2)
        throw Error(ErrorKind::InvalidArgument, "complete families need dim >= 2");

    std::vector<int> signs{1};
    if (fam == CriterionFamily::B2)
        signs.push_back(-1);

    PairWitnessFamily<Scalar> out;
    out.dim = dim;
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index k = j + 1; k < dim; ++k)
            for (int sign : signs)
                for (PairPart part : {PairPart::Real, PairPart::Imag}) {
                    const PairLabel label{j, k, part, sign};
                    out.members.emplace_back(label, pair_witness<Scalar>(dim, label));
                }
    return out;
}

/// Builds a witness in W_x that detects `rho` from below.
///
/// Takes the largest-modulus off-diagonal rho_mn (lowest (m, n) on ties),
/// picks whichever of ±W^R_{m,n}, ±W^I_{m,n} has the most negative
/// expectation, then for x = ">" adds eps*I with eps = -Tr[W rho]/2, and for
/// x = r > 0 further rescales to trace r.
template <typename Scalar>
Witness<Scalar> synthesize_witness(const DensityMatrix<Scalar>& rho, const TraceClass& x,
                                   const Tolerances<Scalar>& tol = {})
{
    const Eigen::Index d = rho.dim();
    Eigen::Index m = 0;
    Eigen::Index n = 0;
    Scalar best = -1;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j < d; ++j)
            if (std::abs(rho(i, j)) > best) {
                best = std::abs(rho(i, j));
                m = i;
                n = j;
            }
    if (!(best > tol.coherence))
        throw Error(ErrorKind::NotCoherent, "all off-diagonal entries are below the coherence threshold");

    const std::complex<Scalar> z = rho(m, n);
    const std::array<std::pair<PairLabel, Scalar>, 4> candidates{{
        {{m, n, PairPart::Real, 1}, z.real()},
        {{m, n, PairPart::Real, -1}, -z.real()},
        {{m, n, PairPart::Imag, 1}, z.imag()},
        {{m, n, PairPart::Imag, -1}, -z.imag()},
    }};
    auto chosen = candidates.front();
    for (const auto& c : candidates)
        if (c.second < chosen.second)
            chosen = c;

    HermitianMatrix<Scalar> w = pair_witness<Scalar>(d, chosen.first);
    switch (criterion_family(x)) {
    case CriterionFamily::C:
    case CriterionFamily::B2: break;
    case CriterionFamily::B1:
    case CriterionFamily::A: {
        const Scalar eps = -expectation(w, rho) / Scalar(2);
        w = w + eps * HermitianMatrix<Scalar>::identity(d);
        if (criterion_family(x) == CriterionFamily::A)
            w = (Scalar(x.value()) / w.trace()) * w;
        break;
    }
    }
    return Witness<Scalar>::make(std::move(w), x, tol.psd);
}

template <typename Scalar = double>
struct ZeroExpectationStates {
    /// |e_j><e_j| for the most negative eigenvalue; expectation lambda_min.
    DensityMatrix<Scalar> detector;
    /// Positive definite state with zero expectation.
    DensityMatrix<Scalar> interior;
};

/// For nonzero W with nonnegative diagonal and a negative eigenvalue:
/// the bottom eigenprojector, and Q/Tr[Q] with
/// Q = beta * P_+ + alpha * P_- + P_0, alpha = sum of positive eigenvalues,
/// beta = sum of |negative eigenvalues|, which gives Tr[W Q] = 0.
template <typename Scalar>
ZeroExpectationStates<Scalar> zero_expectation_state(const HermitianMatrix<Scalar>& w,
                                                     Scalar tol = Tolerances<Scalar>{}.psd)
{
    if (w.matrix().diagonal().real().minCoeff() < -tol)
        throw Error(ErrorKind::NotAWitness, "matrix has a negative diagonal entry");
    const auto eig = spectral_decompose(w);
    if (eig.eigenvalues(0) >= -tol)
        throw Error(ErrorKind::NotAWitness, "matrix is positive semidefinite");

    Scalar alpha = 0;
    Scalar beta = 0;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const Scalar l = eig.eigenvalues(i);
        if (l > Scalar(0))
            alpha += l;
        else if (l < Scalar(0))
            beta -= l;
    }

    RealVector<Scalar> q(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < q.size(); ++i) {
        const Scalar l = eig.eigenvalues(i);
        q(i) = l > Scalar(0) ? beta : (l < Scalar(0) ? alpha : Scalar(1));
    }
    q /= q.sum();
    const ComplexMatrix<Scalar> interior = eig.eigenvectors *
                                           q.template cast<std::complex<Scalar>>().asDiagonal() *
                                           eig.eigenvectors.adjoint();

    return {DensityMatrix<Scalar>::pure(eig.eigenvectors.col(0)),
            DensityMatrix<Scalar>::from(HermitianMatrix<Scalar>::hermitian_part(interior))};
}

template <typename Scalar = double>
struct EvasionConstants {
    /// max |Tr[(W - Δ(W)) H]| + 1 over the witness set.
    Scalar M;
    /// Smallest witness trace; only for x = ">".
    std::optional<Scalar> m1;
    Scalar epsilon;
    /// The fixed perturbation |1><2| + |2><1|.
    HermitianMatrix<Scalar> H;
};

template <typename Scalar = double>
struct EvadingState {
    DensityMatrix<Scalar> state;
    EvasionConstants<Scalar> constants;
};

/// rho_eps = I/d + eps H: a coherent state that no member of a finite set of
/// nontrivial witnesses detects, for x = r > 0 or x = ">".
template <typename Scalar>
EvadingState<Scalar> evading_state(const std::vector<Witness<Scalar>>& witnesses, const TraceClass& x,
                                   Scalar tol = Tolerances<Scalar>{}.psd)
{
    const CriterionFamily fam = criterion_family(x);
    if (fam != CriterionFamily::A && fam != CriterionFamily::B1)
        throw Error(ErrorKind::UnsupportedClass,
                    "class " + x.to_string() + " is finitely completable; no evader is constructed");
    const Eigen::Index d = detail::require_nontrivial_set(witnesses, x, tol);
    if (d < 2)
        throw Error(ErrorKind::InvalidArgument, "evading states need dim >= 2");

    ComplexMatrix<Scalar> h = ComplexMatrix<Scalar>::Zero(d, d);
    h(0, 1) = h(1, 0) = std::complex<Scalar>(1, 0);
    const HermitianMatrix<Scalar> H(h);

    Scalar response = 0;
    Scalar min_trace = std::numeric_limits<Scalar>::infinity();
    for (const auto& w : witnesses) {
        response = std::max(response, std::abs(inner(w.matrix() - dephase(w.matrix()), H)));
        min_trace = std::min(min_trace, w.matrix().trace());
    }
    const Scalar M = response + Scalar(1);
    const Scalar dd = Scalar(d);

    std::optional<Scalar> m1;
    Scalar eps;
    if (fam == CriterionFamily::A) {
        eps = std::min(Scalar(x.value()) / (2 * dd * M), Scalar(1) / (2 * dd));
    } else {
        m1 = min_trace;
        eps = std::min(min_trace / (2 * dd * M), Scalar(1) / (2 * dd));
    }

    auto state = DensityMatrix<Scalar>::from(HermitianMatrix<Scalar>::identity(d) / dd + eps * H);
    return {std::move(state), {M, m1, eps, H}};
}

} // namespace cohwit

#endif // COHWIT_SYNTHESIS_HPP
