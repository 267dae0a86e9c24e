#ifndef COHWIT_WITNESS_HPP
#define COHWIT_WITNESS_HPP

#include <string>
#include <vector>

#include "cohwit/operator_core.hpp"
#include "cohwit/trace_class.hpp"

namespace cohwit {

/// Result of checking a matrix against the witness set W_x.
template <typename Scalar = double>
struct Membership {
    bool member = false;
    /// member and has a negative eigenvalue (W_x^c = W_x ∩ Λ₋).
    bool nontrivial = false;
    Scalar min_diagonal = 0;
    Scalar trace = 0;
    Scalar min_eigenvalue = 0;
};

template <typename Scalar>
Membership<Scalar> validate_witness(const HermitianMatrix<Scalar>& w, const TraceClass& x,
                                    Scalar tol = Tolerances<Scalar>{}.psd)
{
    Membership<Scalar> out;
    out.min_diagonal = w.matrix().diagonal().real().minCoeff();
    out.trace = w.trace();
    out.min_eigenvalue = min_eigenvalue(w);

    bool trace_ok = false;
    switch (x.kind()) {
    case TraceClass::Kind::Fixed:
        trace_ok = std::abs(out.trace - Scalar(x.value())) <= tol;
        break;
    case TraceClass::Kind::StrictlyPositive: trace_ok = out.trace > tol; break;
    case TraceClass::Kind::NonNegative: trace_ok = out.trace >= -tol; break;
    }
    out.member = trace_ok && out.min_diagonal >= -tol;
    out.nontrivial = out.member && out.min_eigenvalue < -tol;
    return out;
}

/// A Hermitian matrix validated as a member of W_x for its trace class.
template <typename Scalar = double>
class Witness {
public:
    static Witness make(HermitianMatrix<Scalar> m, const TraceClass& x,
                        Scalar tol = Tolerances<Scalar>{}.psd)
    {
        const Scalar min_diag = m.matrix().diagonal().real().minCoeff();
        const Scalar tr = m.trace();
        bool ok = min_diag >= -tol;
        switch (x.kind()) {
        case TraceClass::Kind::Fixed: ok = ok && std::abs(tr - Scalar(x.value())) <= tol; break;
        case TraceClass::Kind::StrictlyPositive: ok = ok && tr > tol; break;
        case TraceClass::Kind::NonNegative: ok = ok && tr >= -tol; break;
        }
        if (!ok)
            throw Error(ErrorKind::NotAWitness,
                        "matrix is not in W_" + x.to_string() + " (min diagonal " +
                            std::to_string(min_diag) + ", trace " + std::to_string(tr) + ")");
        return Witness(std::move(m), x);
    }

    const HermitianMatrix<Scalar>& matrix() const { return m_; }
    const TraceClass& trace_class() const { return x_; }
    Eigen::Index dim() const { return m_.dim(); }

private:
    Witness(HermitianMatrix<Scalar> m, TraceClass x) : m_(std::move(m)), x_(x) {}

    HermitianMatrix<Scalar> m_;
    TraceClass x_;
};

enum class Outcome { CompatibleIncoherent, DetectedBelow, DetectedAbove };

inline const char* to_string(Outcome o)
{
    switch (o) {
    case Outcome::CompatibleIncoherent: return "compatible_incoherent";
    case Outcome::DetectedBelow: return "detected_below";
    case Outcome::DetectedAbove: return "detected_above";
    }
    return "?";
}

template <typename Scalar = double>
struct Verdict {
    Scalar expectation;
    Outcome outcome;

    bool detected() const { return outcome != Outcome::CompatibleIncoherent; }
};

/// Classifies an expectation value against I_x. Values within `tol` of an
/// endpoint are compatible with incoherence.
template <typename Scalar>
Outcome classify_expectation(Scalar e, const TraceClass& x, Scalar tol = Tolerances<Scalar>{}.psd)
{
    if (e < -tol)
        return Outcome::DetectedBelow;
    const IntervalSpec interval = interval_of(x);
    switch (interval.kind) {
    case IntervalSpec::Kind::ClosedSegment:
        if (e > Scalar(interval.hi) + tol)
            return Outcome::DetectedAbove;
        break;
    case IntervalSpec::Kind::SingletonZero:
        if (e > tol)
            return Outcome::DetectedAbove;
        break;
    case IntervalSpec::Kind::NonNegativeRay: break;
    }
    return Outcome::CompatibleIncoherent;
}

template <typename Scalar>
Verdict<Scalar> detect(const Witness<Scalar>& w, const DensityMatrix<Scalar>& rho,
                       Scalar tol = Tolerances<Scalar>{}.psd)
{
    if (w.dim() != rho.dim())
        throw Error(ErrorKind::DimensionMismatch, "witness and state dimensions differ");
    const Scalar e = expectation(w.matrix(), rho);
    return {e, classify_expectation(e, w.trace_class(), tol)};
}

enum class RegionStructure { Empty, SingleLobeBelow, SingleLobeAbove, TwoLobes };

inline const char* to_string(RegionStructure r)
{
    switch (r) {
    case RegionStructure::Empty: return "empty";
    case RegionStructure::SingleLobeBelow: return "single_lobe_below";
    case RegionStructure::SingleLobeAbove: return "single_lobe_above";
    case RegionStructure::TwoLobes: return "two_lobes";
    }
    return "?";
}

/// Which of the convex lobes C_>=[W] (below 0) and C_>=[x I - W] (above x)
/// of the detection region are nonempty. For x = 0 the two lobes are the
/// states with negative and with positive expectation.
template <typename Scalar>
RegionStructure region_structure(const Witness<Scalar>& w, Scalar tol = Tolerances<Scalar>{}.psd)
{
    const auto eig = spectral_decompose(w.matrix());
    const Scalar lo = eig.eigenvalues(0);
    const Scalar hi = eig.eigenvalues(eig.eigenvalues.size() - 1);
    const TraceClass& x = w.trace_class();

    bool below = lo < -tol;
    bool above = false;
    switch (criterion_family(x)) {
    case CriterionFamily::A: above = hi > Scalar(x.value()) + tol; break; // r I - W not PSD
    case CriterionFamily::C: above = hi > tol; break;
    case CriterionFamily::B1:
    case CriterionFamily::B2: break;
    }
    if (below && above)
        return RegionStructure::TwoLobes;
    if (below)
        return RegionStructure::SingleLobeBelow;
    if (above)
        return RegionStructure::SingleLobeAbove;
    return RegionStructure::Empty;
}

namespace detail {

/// Shared precondition check: nonempty, common dimension, every member of
/// class `x` and nontrivial.
template <typename Scalar>
Eigen::Index require_nontrivial_set(const std::vector<Witness<Scalar>>& ws, const TraceClass& x,
                                    Scalar tol)
{
    if (ws.empty())
        throw Error(ErrorKind::InvalidArgument, "witness list is empty");
    const Eigen::Index d = ws.front().dim();
    for (std::size_t i = 0; i < ws.size(); ++i) {
        if (ws[i].dim() != d)
            throw Error(ErrorKind::DimensionMismatch, "witness dimensions differ");
        if (!(ws[i].trace_class() == x))
            throw Error(ErrorKind::ClassMismatch, "witness " + std::to_string(i) + " has class " +
                                                      ws[i].trace_class().to_string() +
                                                      ", expected " + x.to_string());
        if (!validate_witness(ws[i].matrix(), x, tol).nontrivial)
            throw Error(ErrorKind::NotNontrivial,
                        "witness " + std::to_string(i) + " has no negative eigenvalue");
    }
    return d;
}

} // namespace detail

} // namespace cohwit

#endif // COHWIT_WITNESS_HPP
