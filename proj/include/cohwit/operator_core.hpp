#ifndef COHWIT_OPERATOR_CORE_HPP
#define COHWIT_OPERATOR_CORE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "cohwit/errors.hpp"
#include "cohwit/jacobi.hpp"
#include "cohwit/tolerance.hpp"

namespace cohwit {

template <typename Scalar>
using ComplexMatrix = detail::ComplexMatrix<Scalar>;
template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using RealVector = detail::RealVector<Scalar>;

/// Dense d x d complex Hermitian matrix. Immutable once built; every
/// constructor guarantees finite entries, exact conjugate symmetry and a
/// real diagonal.
template <typename Scalar = double>
class HermitianMatrix {
public:
    using Complex = std::complex<Scalar>;
    using Matrix = ComplexMatrix<Scalar>;

    /// Accepts `m` if it is square, finite and Hermitian up to
    /// `symmetry_tol` (absolute, entrywise); the stored value is (m + m^H)/2.
    explicit HermitianMatrix(const Matrix& m, Scalar symmetry_tol = Tolerances<Scalar>{}.symmetry)
    {
        check_shape(m);
        const Scalar asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
        if (!(asym <= symmetry_tol))
            throw Error(ErrorKind::NotHermitian,
                        "asymmetry " + std::to_string(asym) + " exceeds tolerance");
        assign_symmetrized(m);
    }

    /// (m + m^H)/2 without an asymmetry check; for products computed
    /// internally whose rounding may exceed the I/O tolerance.
    static HermitianMatrix hermitian_part(const Matrix& m)
    {
        check_shape(m);
        HermitianMatrix h;
        h.assign_symmetrized(m);
        return h;
    }

    static HermitianMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows)
    {
        const auto n = static_cast<Eigen::Index>(rows.size());
        Matrix m(n, n);
        Eigen::Index i = 0;
        for (const auto& row : rows) {
            if (static_cast<Eigen::Index>(row.size()) != n)
                throw Error(ErrorKind::DimensionMismatch, "ragged row list");
            Eigen::Index j = 0;
            for (const auto& value : row)
                m(i, j++) = value;
            ++i;
        }
        return HermitianMatrix(m);
    }

    static HermitianMatrix zero(Eigen::Index dim) { return HermitianMatrix(Matrix::Zero(dim, dim)); }
    static HermitianMatrix identity(Eigen::Index dim)
    {
        return HermitianMatrix(Matrix::Identity(dim, dim));
    }

    /// |v><v| for a (not necessarily normalized) vector.
    static HermitianMatrix outer(const ComplexVector<Scalar>& v)
    {
        return hermitian_part(v * v.adjoint());
    }

    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    Scalar trace() const { return m_.diagonal().real().sum(); }

    friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b)
    {
        check_same_dim(a, b);
        return raw(a.m_ + b.m_);
    }
    friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b)
    {
        check_same_dim(a, b);
        return raw(a.m_ - b.m_);
    }
    friend HermitianMatrix operator-(const HermitianMatrix& a) { return raw(-a.m_); }
    friend HermitianMatrix operator*(Scalar s, const HermitianMatrix& a)
    {
        if (!std::isfinite(s))
            throw Error(ErrorKind::InvalidArgument, "non-finite scale");
        return raw(s * a.m_);
    }
    friend HermitianMatrix operator*(const HermitianMatrix& a, Scalar s) { return s * a; }
    friend HermitianMatrix operator/(const HermitianMatrix& a, Scalar s) { return (Scalar(1) / s) * a; }

    friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b)
    {
        return a.dim() == b.dim() && a.m_ == b.m_;
    }

private:
    HermitianMatrix() = default;

    // Sums and real multiples of Hermitian matrices stay exactly Hermitian.
    static HermitianMatrix raw(Matrix m)
    {
        HermitianMatrix h;
        h.m_ = std::move(m);
        if (!h.m_.allFinite())
            throw Error(ErrorKind::InvalidArgument, "non-finite entry");
        return h;
    }

    static void check_shape(const Matrix& m)
    {
        if (m.rows() != m.cols() || m.rows() < 1)
            throw Error(ErrorKind::DimensionMismatch, "matrix must be square with dim >= 1");
        if (!m.allFinite())
            throw Error(ErrorKind::InvalidArgument, "non-finite entry");
    }

    static void check_same_dim(const HermitianMatrix& a, const HermitianMatrix& b)
    {
        if (a.dim() != b.dim())
            throw Error(ErrorKind::DimensionMismatch, "operand dimensions differ");
    }

    void assign_symmetrized(const Matrix& m)
    {
        m_ = (m + m.adjoint()) * Scalar(0.5);
        for (Eigen::Index i = 0; i < m_.rows(); ++i)
            m_(i, i) = Complex(m_(i, i).real(), Scalar(0));
    }

    Matrix m_;
};

/// Eigenvalues ascending; column k of `eigenvectors` pairs with eigenvalues(k).
template <typename Scalar = double>
struct SpectralDecomposition {
    RealVector<Scalar> eigenvalues;
    ComplexMatrix<Scalar> eigenvectors;

    HermitianMatrix<Scalar> reconstruct() const
    {
        return HermitianMatrix<Scalar>::hermitian_part(
            eigenvectors * eigenvalues.template cast<std::complex<Scalar>>().asDiagonal() *
            eigenvectors.adjoint());
    }
};

template <typename Scalar>
SpectralDecomposition<Scalar> spectral_decompose(const HermitianMatrix<Scalar>& w)
{
    ComplexMatrix<Scalar> a = w.matrix();
    ComplexMatrix<Scalar> v;
    detail::cyclic_jacobi<Scalar>(a, v);
    SpectralDecomposition<Scalar> out;
    out.eigenvalues = a.diagonal().real();
    out.eigenvectors = std::move(v);
    detail::canonicalize_eigenpairs<Scalar>(out.eigenvalues, out.eigenvectors);
    return out;
}

template <typename Scalar>
Scalar min_eigenvalue(const HermitianMatrix<Scalar>& w)
{
    return spectral_decompose(w).eigenvalues(0);
}

template <typename Scalar>
Scalar max_eigenvalue(const HermitianMatrix<Scalar>& w)
{
    const auto eig = spectral_decompose(w);
    return eig.eigenvalues(eig.eigenvalues.size() - 1);
}

template <typename Scalar>
bool is_psd(const HermitianMatrix<Scalar>& w, Scalar tol = Tolerances<Scalar>{}.psd)
{
    if (tol < Scalar(0))
        throw Error(ErrorKind::InvalidArgument, "tolerance must be nonnegative");
    return min_eigenvalue(w) >= -tol;
}

template <typename Scalar>
HermitianMatrix<Scalar> dephase(const HermitianMatrix<Scalar>& w)
{
    ComplexMatrix<Scalar> d = ComplexMatrix<Scalar>::Zero(w.dim(), w.dim());
    d.diagonal() = w.matrix().diagonal();
    return HermitianMatrix<Scalar>(d);
}

/// Largest entry modulus, ||W||_max.
template <typename Scalar>
Scalar max_abs(const HermitianMatrix<Scalar>& w)
{
    return w.matrix().cwiseAbs().maxCoeff();
}

/// Real Frobenius inner product Tr[A B] of two Hermitian matrices.
template <typename Scalar>
Scalar inner(const HermitianMatrix<Scalar>& a, const HermitianMatrix<Scalar>& b)
{
    if (a.dim() != b.dim())
        throw Error(ErrorKind::DimensionMismatch, "operand dimensions differ");
    return (a.matrix().array() * b.matrix().array().conjugate()).sum().real();
}

/// Unit-trace positive semidefinite Hermitian matrix.
template <typename Scalar = double>
class DensityMatrix {
public:
    /// Validates trace = 1 and min eigenvalue >= -1e-10.
    static DensityMatrix from(const HermitianMatrix<Scalar>& h)
    {
        if (std::abs(h.trace() - Scalar(1)) > density_trace_tol<Scalar>)
            throw Error(ErrorKind::NotADensityMatrix, "trace differs from 1");
        if (min_eigenvalue(h) < -density_eig_tol<Scalar>)
            throw Error(ErrorKind::NotADensityMatrix, "negative eigenvalue");
        return DensityMatrix(h);
    }

    static DensityMatrix maximally_mixed(Eigen::Index dim)
    {
        return DensityMatrix(HermitianMatrix<Scalar>::identity(dim) / Scalar(dim));
    }

    static DensityMatrix pure(const ComplexVector<Scalar>& v)
    {
        const Scalar n = v.norm();
        if (!(n > Scalar(0)))
            throw Error(ErrorKind::InvalidArgument, "zero state vector");
        return DensityMatrix(HermitianMatrix<Scalar>::outer(v / n));
    }

    /// Incoherent state sum_i p_i |i><i|; `p` must be a probability vector.
    static DensityMatrix diagonal(const RealVector<Scalar>& p)
    {
        if (p.size() < 1 || (p.array() < Scalar(0)).any() ||
            std::abs(p.sum() - Scalar(1)) > density_trace_tol<Scalar>)
            throw Error(ErrorKind::NotADensityMatrix, "not a probability vector");
        ComplexMatrix<Scalar> m = ComplexMatrix<Scalar>::Zero(p.size(), p.size());
        m.diagonal() = p.template cast<std::complex<Scalar>>();
        return DensityMatrix(HermitianMatrix<Scalar>(m));
    }

    /// t rho + (1 - t) sigma, t in [0, 1].
    static DensityMatrix mix(Scalar t, const DensityMatrix& rho, const DensityMatrix& sigma)
    {
        if (!(t >= Scalar(0) && t <= Scalar(1)))
            throw Error(ErrorKind::InvalidArgument, "mixing weight outside [0, 1]");
        return DensityMatrix(t * rho.h_ + (Scalar(1) - t) * sigma.h_);
    }

    Eigen::Index dim() const { return h_.dim(); }
    const HermitianMatrix<Scalar>& hermitian() const { return h_; }
    const ComplexMatrix<Scalar>& matrix() const { return h_.matrix(); }
    std::complex<Scalar> operator()(Eigen::Index i, Eigen::Index j) const { return h_(i, j); }

private:
    explicit DensityMatrix(HermitianMatrix<Scalar> h) : h_(std::move(h)) {}

    HermitianMatrix<Scalar> h_;
};

/// Tr[W rho]; real because both operands are Hermitian.
template <typename Scalar>
Scalar expectation(const HermitianMatrix<Scalar>& w, const DensityMatrix<Scalar>& rho)
{
    return inner(w, rho.hermitian());
}

/// max_{m != n} |rho_mn|
template <typename Scalar>
Scalar max_off_diagonal(const HermitianMatrix<Scalar>& h)
{
    Scalar best = 0;
    for (Eigen::Index j = 1; j < h.dim(); ++j)
        for (Eigen::Index i = 0; i < j; ++i)
            best = std::max(best, std::abs(h(i, j)));
    return best;
}

/// Hilbert-Schmidt induced random state G G^H / Tr, G i.i.d. complex Gaussian.
template <typename Scalar = double, typename Rng>
DensityMatrix<Scalar> sample_density(Eigen::Index dim, Rng& rng)
{
    if (dim < 1)
        throw Error(ErrorKind::InvalidArgument, "dim must be >= 1");
    std::normal_distribution<Scalar> normal(Scalar(0), Scalar(1));
    ComplexMatrix<Scalar> g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) {
            const Scalar re = normal(rng);
            const Scalar im = normal(rng);
            g(i, j) = std::complex<Scalar>(re, im);
        }
    ComplexMatrix<Scalar> p = g * g.adjoint();
    p /= p.trace().real();
    return DensityMatrix<Scalar>::from(HermitianMatrix<Scalar>::hermitian_part(p));
}

template <typename Scalar = double>
DensityMatrix<Scalar> sample_density(Eigen::Index dim, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return sample_density<Scalar>(dim, rng);
}

} // namespace cohwit

#endif // COHWIT_OPERATOR_CORE_HPP
