#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "tenrad/complex_matrix.hpp"
#include "tenrad/error.hpp"

namespace tenrad {

inline constexpr double kDefaultEigTol = 1e-13;
inline constexpr std::size_t kDefaultMaxSweeps = 100;

struct EigDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns are unit eigenvectors
};

namespace detail {

inline double offdiag_frobenius(const ComplexMatrix& h) {
    double s = 0.0;
    const std::size_t n = h.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(h(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing h(p,q). The rotation is
//   U = [[c, -s e^{i phi}], [s e^{-i phi}, c]]   in the (p,q) plane,
// with h(p,q) = r e^{i phi} and tan(2 theta) = 2r / (h_pp - h_qq).
// Hand-rolled double arithmetic: this is the hot loop of every sweep.
inline void jacobi_rotate(ComplexMatrix& h, ComplexMatrix* v, std::size_t p, std::size_t q) {
    const std::size_t n = h.dim();
    const Complex beta = h(p, q);
    const double r = std::abs(beta);
    if (r == 0.0) return;

    const double alpha = h(p, p).real();
    const double gamma = h(q, q).real();
    const double tau = (alpha - gamma) / (2.0 * r);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const double ph_re = beta.real() / r, ph_im = beta.imag() / r;  // e^{i phi}
    const double upq_re = -s * ph_re, upq_im = -s * ph_im;          // U(p,q)
    const double uqp_re = s * ph_re, uqp_im = -s * ph_im;           // U(q,p)

    double* b = reinterpret_cast<double*>(h.entries().data());
    // columns: H <- H U
    for (std::size_t i = 0; i < n; ++i) {
        double* ep = b + 2 * (i * n + p);
        double* eq = b + 2 * (i * n + q);
        const double pr = ep[0], pi = ep[1], qr = eq[0], qi = eq[1];
        ep[0] = c * pr + uqp_re * qr - uqp_im * qi;
        ep[1] = c * pi + uqp_re * qi + uqp_im * qr;
        eq[0] = c * qr + upq_re * pr - upq_im * pi;
        eq[1] = c * qi + upq_re * pi + upq_im * pr;
    }
    // rows: H <- U* H   (conj(uqp) and conj(upq) swap roles)
    double* rp = b + 2 * p * n;
    double* rq = b + 2 * q * n;
    for (std::size_t j = 0; j < n; ++j) {
        const double pr = rp[2 * j], pi = rp[2 * j + 1];
        const double qr = rq[2 * j], qi = rq[2 * j + 1];
        rp[2 * j] = c * pr + uqp_re * qr + uqp_im * qi;
        rp[2 * j + 1] = c * pi + uqp_re * qi - uqp_im * qr;
        rq[2 * j] = c * qr + upq_re * pr + upq_im * pi;
        rq[2 * j + 1] = c * qi + upq_re * pi - upq_im * pr;
    }
    // exact zero for the annihilated pair, real diagonal
    h(p, q) = 0.0;
    h(q, p) = 0.0;
    h(p, p) = Complex(h(p, p).real(), 0.0);
    h(q, q) = Complex(h(q, q).real(), 0.0);

    if (v) {
        double* vb = reinterpret_cast<double*>(v->entries().data());
        for (std::size_t i = 0; i < n; ++i) {
            double* ep = vb + 2 * (i * n + p);
            double* eq = vb + 2 * (i * n + q);
            const double pr = ep[0], pi = ep[1], qr = eq[0], qi = eq[1];
            ep[0] = c * pr + uqp_re * qr - uqp_im * qi;
            ep[1] = c * pi + uqp_re * qi + uqp_im * qr;
            eq[0] = c * qr + upq_re * pr - upq_im * pi;
            eq[1] = c * qi + upq_re * pi + upq_im * pr;
        }
    }
}

// Cyclic sweeps on a pre-symmetrized matrix until the off-diagonal Frobenius
// mass drops below tol * ||h||_F. Eigenvalues end up on the diagonal of h.
inline void jacobi_core(ComplexMatrix& h, ComplexMatrix* v, double fnorm, double tol,
                        std::size_t max_sweeps) {
    const std::size_t n = h.dim();
    if (n <= 1) return;
    const double target = std::max(tol * fnorm, 1e-300);
    // Elements at or below `skip` are left alone; their total mass stays below
    // target, and while the total is above target at least one element exceeds it.
    const double skip = 0.3 * target / static_cast<double>(n);
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        if (offdiag_frobenius(h) < target) return;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::abs(h(p, q)) > skip) jacobi_rotate(h, v, p, q);
    }
    if (offdiag_frobenius(h) >= target)
        raise(Errc::no_convergence, "Jacobi sweeps did not converge");
}

inline void check_hermitian_input(const ComplexMatrix& h, double fnorm) {
    const double defect = frobenius_norm(sub(h, adjoint(h)));
    if (defect > 1e-10 * std::max(1.0, fnorm))
        raise(Errc::not_hermitian, "matrix is not Hermitian within tolerance");
}

} // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
inline EigDecomposition hermitian_eig(const ComplexMatrix& h_in, double tol = kDefaultEigTol,
                                      std::size_t max_sweeps = kDefaultMaxSweeps) {
    if (!(tol > 0.0)) raise(Errc::invalid_tol, "eigensolver tolerance must be positive");
    const double fnorm = frobenius_norm(h_in);
    detail::check_hermitian_input(h_in, fnorm);

    const std::size_t n = h_in.dim();
    ComplexMatrix h = symmetrize(h_in);
    ComplexMatrix v = ComplexMatrix::identity(n);
    detail::jacobi_core(h, &v, fnorm, tol, max_sweeps);

    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = h(i, i).real();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });

    EigDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = vals[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

/// Eigenvalues only (ascending); skips eigenvector accumulation.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h_in,
                                                 double tol = kDefaultEigTol,
                                                 std::size_t max_sweeps = kDefaultMaxSweeps) {
    if (!(tol > 0.0)) raise(Errc::invalid_tol, "eigensolver tolerance must be positive");
    const double fnorm = frobenius_norm(h_in);
    detail::check_hermitian_input(h_in, fnorm);

    ComplexMatrix h = symmetrize(h_in);
    detail::jacobi_core(h, nullptr, fnorm, tol, max_sweeps);

    std::vector<double> vals(h.dim());
    for (std::size_t i = 0; i < h.dim(); ++i) vals[i] = h(i, i).real();
    std::sort(vals.begin(), vals.end());
    return vals;
}

inline double lambda_max(const ComplexMatrix& h, double tol = kDefaultEigTol) {
    return hermitian_eigenvalues(h, tol).back();
}

inline double lambda_min(const ComplexMatrix& h, double tol = kDefaultEigTol) {
    return hermitian_eigenvalues(h, tol).front();
}

/// Column k of the eigenvector matrix as a vector.
inline ComplexVector eig_column(const EigDecomposition& d, std::size_t k) {
    ComplexVector x(d.eigenvectors.dim());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = d.eigenvectors(i, k);
    return x;
}

} // namespace tenrad
