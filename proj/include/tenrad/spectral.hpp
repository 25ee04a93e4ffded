#pragma once

#include <algorithm>
#include <cmath>

#include "tenrad/complex_matrix.hpp"
#include "tenrad/hermitian_eig.hpp"

namespace tenrad {

/// Spectral norm: sqrt of the largest eigenvalue of a* a.
inline double operator_norm(const ComplexMatrix& a, double eig_tol = kDefaultEigTol) {
    const ComplexMatrix gram = symmetrize(matmul(adjoint(a), a));
    const double top = hermitian_eigenvalues(gram, eig_tol).back();
    return std::sqrt(std::max(0.0, top));
}

/// Spectral norm of a Hermitian matrix: max |eigenvalue|.
inline double hermitian_norm(const ComplexMatrix& h, double eig_tol = kDefaultEigTol) {
    const auto vals = hermitian_eigenvalues(h, eig_tol);
    return std::max(std::abs(vals.front()), std::abs(vals.back()));
}

namespace detail {

// f applied to the eigenvalues of a Hermitian matrix, reassembled as V f(D) V*.
template <typename F>
ComplexMatrix hermitian_calculus(const ComplexMatrix& h, F&& f, double eig_tol) {
    const auto d = hermitian_eig(h, eig_tol);
    const std::size_t n = h.dim();
    ComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double fk = f(d.eigenvalues[k]);
        if (fk == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = d.eigenvectors(i, k);
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += fk * vik * std::conj(d.eigenvectors(j, k));
        }
    }
    return symmetrize(out);
}

} // namespace detail

/// Operator absolute value |a| = (a* a)^{1/2}. Small negative eigenvalues of
/// a* a coming from roundoff are clamped to zero before the square root.
inline ComplexMatrix abs_op(const ComplexMatrix& a, double eig_tol = kDefaultEigTol) {
    const ComplexMatrix gram = symmetrize(matmul(adjoint(a), a));
    return detail::hermitian_calculus(
        gram, [](double x) { return std::sqrt(std::max(0.0, x)); }, eig_tol);
}

/// h^r for Hermitian PSD h via eigenvalue functional calculus.
inline ComplexMatrix psd_power(const ComplexMatrix& h, double r, double eig_tol = kDefaultEigTol) {
    return detail::hermitian_calculus(
        h, [r](double x) { return std::pow(std::max(0.0, x), r); }, eig_tol);
}

} // namespace tenrad
