#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "tenrad/error.hpp"

namespace tenrad {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr std::size_t kDefaultKronCap = 4096;

/// Dense square complex matrix, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
        if (dim == 0) raise(Errc::bad_matrix, "dimension must be >= 1");
    }

    /// Row-major nested initializer, e.g. {{0,1},{0,0}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : ComplexMatrix(rows.size()) {
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != dim_) raise(Errc::bad_matrix, "rows must all have length dim");
            std::size_t j = 0;
            for (const auto& v : row) entries_[i * dim_ + j++] = v;
            ++i;
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n); }

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

    const ComplexVector& entries() const { return entries_; }
    ComplexVector& entries() { return entries_; }

    bool all_finite() const {
        for (const auto& z : entries_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
        return a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }

private:
    std::size_t dim_ = 0;
    ComplexVector entries_;
};

inline void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) raise(Errc::dim_mismatch, "matrix dimensions differ");
}

inline ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b);
    ComplexMatrix c(a.dim());
    for (std::size_t k = 0; k < c.entries().size(); ++k)
        c.entries()[k] = a.entries()[k] + b.entries()[k];
    return c;
}

inline ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b);
    ComplexMatrix c(a.dim());
    for (std::size_t k = 0; k < c.entries().size(); ++k)
        c.entries()[k] = a.entries()[k] - b.entries()[k];
    return c;
}

inline ComplexMatrix scale(Complex alpha, const ComplexMatrix& a) {
    ComplexMatrix c(a.dim());
    for (std::size_t k = 0; k < c.entries().size(); ++k) c.entries()[k] = alpha * a.entries()[k];
    return c;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b);
    const std::size_t n = a.dim();
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) { return add(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) { return sub(a, b); }
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }
inline ComplexMatrix operator*(Complex alpha, const ComplexMatrix& a) { return scale(alpha, a); }
inline ComplexMatrix operator*(double alpha, const ComplexMatrix& a) { return scale(Complex(alpha, 0.0), a); }

/// Conjugate transpose.
inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c(i, j) = std::conj(a(j, i));
    return c;
}

inline Complex trace(const ComplexMatrix& a) {
    Complex t{};
    for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

/// Kronecker product; block (i,j) of the result is a(i,j) * b.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                          std::size_t max_dim = kDefaultKronCap) {
    const std::size_t m = a.dim(), n = b.dim();
    if (m > max_dim / n) raise(Errc::size_limit, "kron dimension exceeds cap");
    ComplexMatrix c(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) c(i * n + k, j * n + l) = aij * b(k, l);
        }
    return c;
}

/// Shift by a scalar multiple of the identity: a - lambda*I.
inline ComplexMatrix shift(const ComplexMatrix& a, Complex lambda) {
    ComplexMatrix c = a;
    for (std::size_t i = 0; i < a.dim(); ++i) c(i, i) -= lambda;
    return c;
}

// Hermitian part (a + a*)/2. The strict lower triangle mirrors the upper one,
// so the output is Hermitian bitwise.
inline ComplexMatrix re_part(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        c(i, i) = Complex(a(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex p = (a(i, j) + std::conj(a(j, i))) * 0.5;
            c(i, j) = p;
            c(j, i) = std::conj(p);
        }
    }
    return c;
}

// Skew part (a - a*)/(2i), Hermitian bitwise by the same mirroring.
inline ComplexMatrix im_part(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        c(i, i) = Complex(a(i, i).imag(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex d = (a(i, j) - std::conj(a(j, i))) * 0.5;  // i * im(i,j)
            const Complex q(d.imag(), -d.real());                    // d / i
            c(i, j) = q;
            c(j, i) = std::conj(q);
        }
    }
    return c;
}

/// Roundoff cleanup for nearly Hermitian results.
inline ComplexMatrix symmetrize(const ComplexMatrix& m) { return re_part(m); }

inline bool is_normal(const ComplexMatrix& a, double tol) {
    const double scale2 = frobenius_norm(a);
    const double lhs = frobenius_norm(sub(matmul(adjoint(a), a), matmul(a, adjoint(a))));
    return lhs <= tol * scale2 * scale2;
}

inline bool is_square_zero(const ComplexMatrix& a, double tol) {
    const double scale2 = frobenius_norm(a);
    return frobenius_norm(matmul(a, a)) <= tol * scale2 * scale2;
}

// --- vector helpers ---

inline Complex inner_product(const ComplexVector& u, const ComplexVector& v) {
    Complex s{};
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
    return s;
}

inline double vec_norm(const ComplexVector& u) {
    double s = 0.0;
    for (const auto& z : u) s += std::norm(z);
    return std::sqrt(s);
}

inline ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x) {
    if (x.size() != a.dim()) raise(Errc::dim_mismatch, "matvec dimension mismatch");
    ComplexVector y(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Complex s{};
        for (std::size_t j = 0; j < a.dim(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

/// <a x, x> with the inner product conjugate-linear in its second slot.
inline Complex quadratic_form(const ComplexMatrix& a, const ComplexVector& x) {
    return inner_product(matvec(a, x), x);
}

} // namespace tenrad
