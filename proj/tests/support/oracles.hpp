#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "tenrad/complex_matrix.hpp"
#include "tenrad/hermitian_eig.hpp"
#include "tenrad/spectral.hpp"

// Test-side oracles, kept independent of the library's adaptive maximizers.
namespace tts::oracle {

using tenrad::Complex;
using tenrad::ComplexMatrix;

/// Support samples lambda_max(Re(e^{i theta} a)) on a fixed uniform grid.
struct SupportTable {
    std::vector<double> top, cos_t, sin_t;
    double lipschitz = 0.0;

    SupportTable(const ComplexMatrix& a, std::size_t m) {
        const ComplexMatrix re = tenrad::re_part(a), im = tenrad::im_part(a);
        top.resize(m);
        cos_t.resize(m);
        sin_t.resize(m);
        ComplexMatrix h(a.dim());
        for (std::size_t k = 0; k < m; ++k) {
            const double th = 6.283185307179586 * static_cast<double>(k) / static_cast<double>(m);
            cos_t[k] = std::cos(th);
            sin_t[k] = std::sin(th);
            for (std::size_t idx = 0; idx < h.entries().size(); ++idx)
                h.entries()[idx] = cos_t[k] * re.entries()[idx] - sin_t[k] * im.entries()[idx];
            top[k] = tenrad::hermitian_eigenvalues(h).back();
        }
        lipschitz = tenrad::operator_norm(a);
    }

    /// w(a - lambda I): grid max plus three-point parabolic refinement of the
    /// winning sample (and of every local max within one grid step's slack).
    double radius_shifted(Complex lambda) const {
        const std::size_t m = top.size();
        std::vector<double> f(m);
        double gmax = -1e308;
        for (std::size_t k = 0; k < m; ++k) {
            f[k] = top[k] - (lambda.real() * cos_t[k] - lambda.imag() * sin_t[k]);
            gmax = std::max(gmax, f[k]);
        }
        const double h = 6.283185307179586 / static_cast<double>(m);
        const double slack = (lipschitz + std::abs(lambda)) * h;
        double best = gmax;
        for (std::size_t k = 0; k < m; ++k) {
            const double fm = f[(k + m - 1) % m], f0 = f[k], fp = f[(k + 1) % m];
            if (f0 < fm || f0 < fp) continue;           // not a local max
            if (f0 + slack < gmax) continue;            // cannot host the global max
            const double denom = fm - 2.0 * f0 + fp;
            if (denom >= -1e-300) continue;             // flat or degenerate
            const double delta = 0.5 * (fm - fp) / denom;
            const double peak = f0 - 0.25 * (fm - fp) * delta;
            if (std::abs(delta) <= 1.0) best = std::max(best, peak);
        }
        return best;
    }
};

/// d(a) by zooming square grids; purely grid-based, no simplex steps.
inline double distance_grid(const ComplexMatrix& a, std::size_t pts_per_side = 201,
                            int levels = 4) {
    SupportTable table(a, 4096);
    const double w = table.radius_shifted(Complex{});
    Complex center = tenrad::trace(a) / static_cast<double>(a.dim());
    double radius = 2.0 * std::max(w, 1e-12);

    double best = 1e308;
    for (int lvl = 0; lvl < levels; ++lvl) {
        Complex arg_best;
        for (std::size_t iy = 0; iy < pts_per_side; ++iy)
            for (std::size_t ix = 0; ix < pts_per_side; ++ix) {
                const double fx =
                    -1.0 + 2.0 * static_cast<double>(ix) / static_cast<double>(pts_per_side - 1);
                const double fy =
                    -1.0 + 2.0 * static_cast<double>(iy) / static_cast<double>(pts_per_side - 1);
                const Complex lambda = center + Complex(fx, fy) * radius;
                const double g = table.radius_shifted(lambda);
                if (g < best) {
                    best = g;
                    arg_best = lambda;
                }
            }
        center = arg_best;
        radius = 3.0 * (2.0 * radius / static_cast<double>(pts_per_side - 1));
    }
    return best;
}

} // namespace tts::oracle
