#pragma once

#include <cmath>
#include <sstream>
#include <type_traits>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "spinrot/core.hpp"

namespace spinrot {

template <typename Real = double>
ComplexMatrixT<Real> build_jz(SpinJ j) {
    ComplexMatrixT<Real> out = ComplexMatrixT<Real>::Zero(j.dim(), j.dim());
    for (int k = 0; k < j.dim(); ++k) out(k, k) = Real(k) - Real(j.two_j()) / 2;
    return out;
}

// J+ : |m> -> sqrt(J(J+1) - m(m+1)) |m+1>
template <typename Real = double>
ComplexMatrixT<Real> build_jplus(SpinJ j) {
    ComplexMatrixT<Real> out = ComplexMatrixT<Real>::Zero(j.dim(), j.dim());
    const Real jj = Real(j.two_j()) / 2;
    for (int k = 0; k + 1 < j.dim(); ++k) {
        const Real m = Real(k) - jj;
        using std::sqrt;
        out(k + 1, k) = sqrt(jj * (jj + 1) - m * (m + 1));
    }
    return out;
}

template <typename Real = double>
ComplexMatrixT<Real> build_jx(SpinJ j) {
    ComplexMatrixT<Real> jp = build_jplus<Real>(j);
    return (jp + jp.adjoint()) * Real(0.5);
}

template <typename Real = double>
ComplexMatrixT<Real> build_jy(SpinJ j) {
    ComplexMatrixT<Real> jp = build_jplus<Real>(j);
    return (jp - jp.adjoint()) * std::complex<Real>(0, Real(-0.5));
}

template <typename Derived>
typename Derived::PlainObject identity_like(const Eigen::MatrixBase<Derived>& a) {
    return Derived::PlainObject::Identity(a.rows(), a.cols());
}

// index = i_a * dim(b) + i_b
template <typename A, typename B>
auto kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    using Scalar = typename A::Scalar;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out = Eigen::kroneckerProduct(a, b);
    return out;
}

template <typename Derived>
double max_asymmetry(const Eigen::MatrixBase<Derived>& h) {
    using std::abs;
    return static_cast<double>((h - h.adjoint()).cwiseAbs().maxCoeff());
}

template <typename Real>
struct Eigensystem {
    Eigen::Matrix<Real, Eigen::Dynamic, 1> values;  // ascending
    ComplexMatrixT<Real> vectors;                   // columns
};

// Largest-magnitude component made real positive (first one on ties).
template <typename Vec>
void fix_phase(Vec&& v) {
    using Real = typename std::decay_t<Vec>::RealScalar;
    Eigen::Index arg = 0;
    Real best = -1;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        Real a = std::abs(v(i));
        if (a > best + Real(1e-12)) {
            best = a;
            arg = i;
        }
    }
    if (best > 0) v *= std::conj(v(arg)) / std::abs(v(arg));
}

template <typename Real = double>
Eigensystem<Real> eig_hermitian(const ComplexMatrixT<Real>& h, double tol = 1e-10) {
    if (h.rows() != h.cols()) throw NumericalContractError("eig_hermitian: matrix is not square");
    const double asym = max_asymmetry(h);
    if (!(asym <= tol)) {
        std::ostringstream msg;
        msg << "eig_hermitian: matrix is not Hermitian (max |H - H^dagger| = " << asym << ")";
        throw NumericalContractError(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrixT<Real>> es(h);
    if (es.info() != Eigen::Success) throw NumericalContractError("eig_hermitian: solver did not converge");
    Eigensystem<Real> out{es.eigenvalues(), es.eigenvectors()};
    for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) fix_phase(out.vectors.col(c));
    return out;
}

template <typename Real>
ComplexMatrixT<Real> propagator(const Eigensystem<Real>& es, Real t) {
    using std::exp;
    StateVectorT<Real> phase(es.values.size());
    for (Eigen::Index k = 0; k < phase.size(); ++k) phase(k) = std::polar(Real(1), -es.values(k) * t);
    return es.vectors * phase.asDiagonal() * es.vectors.adjoint();
}

template <typename Real>
StateVectorT<Real> apply_propagator(const Eigensystem<Real>& es, const StateVectorT<Real>& psi, Real t) {
    StateVectorT<Real> c = es.vectors.adjoint() * psi;
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(Real(1), -es.values(k) * t);
    return es.vectors * c;
}

// exp(-i angle J_y) |state>
template <typename Real = double>
StateVectorT<Real> rotate_about_y(const StateVectorT<Real>& state, Real angle, SpinJ j) {
    if (state.size() != j.dim()) throw ValidationError("rotate_about_y: state dimension does not match J");
    static thread_local int cached_two_j = -1;
    static thread_local Eigensystem<Real> cached;
    if (cached_two_j != j.two_j()) {
        cached = eig_hermitian<Real>(build_jy<Real>(j));
        cached_two_j = j.two_j();
    }
    return apply_propagator(cached, state, angle);
}

template <typename Real>
StateVectorT<Real> basis_state(int dim, int index) {
    StateVectorT<Real> out = StateVectorT<Real>::Zero(dim);
    out(index) = 1;
    return out;
}

template <typename Real>
Real expectation(const ComplexMatrixT<Real>& op, const StateVectorT<Real>& psi) {
    return psi.dot(op * psi).real();
}

}  // namespace spinrot
