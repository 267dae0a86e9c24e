#ifndef COHWIT_TOLERANCE_HPP
#define COHWIT_TOLERANCE_HPP

namespace cohwit {

/// The single tolerance record every boundary comparison routes through.
/// Captured by value at call time; there is no global mutable state.
template <typename Scalar = double>
struct Tolerances {
    /// PSD tests, interval endpoints, trace conditions, certificate checks.
    Scalar psd = Scalar(1e-9);
    /// A state counts as coherent for synthesis when max |rho_mn| exceeds this.
    Scalar coherence = Scalar(1e-8);
    /// Largest entrywise asymmetry absorbed by HermitianMatrix construction.
    Scalar symmetry = Scalar(1e-12);
    /// Relative singular-value cutoff for numerical rank.
    Scalar rank = Scalar(1e-8);
};

// Fixed acceptance bounds for DensityMatrix construction.
template <typename Scalar>
inline constexpr Scalar density_trace_tol = Scalar(1e-10);
template <typename Scalar>
inline constexpr Scalar density_eig_tol = Scalar(1e-10);

} // namespace cohwit

#endif // COHWIT_TOLERANCE_HPP
