#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "tenrad/complex_matrix.hpp"
#include "tenrad/error.hpp"
#include "tenrad/nelder_mead.hpp"
#include "tenrad/numrange.hpp"

namespace tenrad {

inline constexpr std::size_t kDistanceDescentBudget = 500;
inline constexpr std::size_t kDistanceCoarseGrid = 33;

struct ScalarDistanceResult {
    double value = 0.0;
    Complex lambda_star;
    std::size_t iterations = 0;  // total objective evaluations (grid + descent)
    double box_radius = 0.0;
};

struct CrawfordGapResult {
    double best_value = 0.0;
    Complex lambda_star;
    std::vector<std::pair<Complex, double>> grid_values;  // every evaluated (lambda, h)
};

namespace detail {

// Deterministic preference for reporting a minimizer: value, then |lambda|,
// then arg(lambda) in [0, 2pi).
inline bool better_min(double fv, Complex lv, double f_best, Complex l_best) {
    if (fv != f_best) return fv < f_best;
    const double m1 = std::norm(lv), m2 = std::norm(l_best);
    if (m1 != m2) return m1 < m2;
    double a1 = std::arg(lv), a2 = std::arg(l_best);
    if (a1 < 0.0) a1 += kTwoPi;
    if (a2 < 0.0) a2 += kTwoPi;
    return a1 < a2;
}

} // namespace detail

/// d(a) = inf over complex lambda of w(a - lambda I).
///
/// The objective is convex (the numerical radius is a norm) and a minimizer
/// lies within |lambda - tr(a)/n| <= 2 w(a), so a coarse grid over that box
/// seeds a Nelder-Mead descent. Grid ranking uses the support values already
/// cached for the rotation family (the shift identity makes every w(a -
/// lambda I) a max over the same family); the descent runs at full accuracy.
/// Descent evaluations beyond the budget raise BUDGET_EXCEEDED.
inline ScalarDistanceResult distance_to_scalars(const ComplexMatrix& a,
                                                double tol = kDefaultRadiusTol,
                                                std::size_t descent_budget = kDistanceDescentBudget) {
    if (!(tol > 0.0)) raise(Errc::invalid_tol, "distance tolerance must be positive");

    const double norm_a = operator_norm(a);
    const Complex center = trace(a) / static_cast<double>(a.dim());
    RotationFamily family(a);

    const double w_a =
        norm_a <= 1e-300 ? 0.0 : support_max(family, true, Complex{}, norm_a, {tol}).value;

    ScalarDistanceResult out;
    out.box_radius = 2.0 * w_a;
    if (w_a <= std::max(1e-300, tol * 1e-6)) {
        // scalar multiples of the identity (and zero): exact minimizer at the trace mean
        out.lambda_star = center;
        out.value = 0.0;
        out.iterations = 1;
        return out;
    }

    // coarse grid, ranked by cached support values
    const std::size_t g = kDistanceCoarseGrid;
    family.ensure_grid(64);
    double f_best = 0.0;
    Complex l_best;
    bool have_best = false;
    std::size_t evals = 0;
    for (std::size_t iy = 0; iy < g; ++iy) {
        for (std::size_t ix = 0; ix < g; ++ix) {
            const double fx = -1.0 + 2.0 * static_cast<double>(ix) / static_cast<double>(g - 1);
            const double fy = -1.0 + 2.0 * static_cast<double>(iy) / static_cast<double>(g - 1);
            const Complex lambda = center + Complex(fx, fy) * out.box_radius;
            const double fv = std::max(0.0, family.scan_shifted_max(true, lambda));
            ++evals;
            if (!have_best || detail::better_min(fv, lambda, f_best, l_best)) {
                f_best = fv;
                l_best = lambda;
                have_best = true;
            }
        }
    }

    // descent at full accuracy
    const double fine_tol = std::max(0.25 * tol, 1e-13 * (1.0 + w_a));
    const double step = out.box_radius / static_cast<double>(g - 1);
    const auto nm = detail::nelder_mead_2d(
        [&](double x, double y) {
            return shifted_radius(family, norm_a, Complex(x, y), fine_tol);
        },
        l_best.real(), l_best.imag(), step, 0.5 * tol, 0.25 * tol, descent_budget);
    if (!nm.converged)
        raise(Errc::budget_exceeded, "scalar distance descent exceeded its evaluation budget");

    out.lambda_star = Complex(nm.x, nm.y);
    out.value = nm.fbest;
    out.iterations = evals + nm.evaluations;
    return out;
}

/// Pointwise search of h(lambda) = ||t - lambda I||^2 - c(t - lambda I)^2 over
/// an n_grid x n_grid box plus local descent around the best grid candidates.
/// h is not guaranteed convex, so best_value is an upper estimate of the
/// infimum.
///
/// The crawford term is always computed from below (a max over evaluated
/// support angles), so every reported h sits at or above the true h; that is
/// the safe side for a quantity the caller compares against a lower bound.
/// Grid points get the free cached-scan estimate; the best few candidates and
/// the descent run with refined angles.
inline CrawfordGapResult crawford_gap_rhs(const ComplexMatrix& t, std::size_t n_grid = 9,
                                          double tol = kDefaultRadiusTol) {
    if (n_grid < 9) raise(Errc::bad_argument, "crawford gap grid must be at least 9");
    if (!(tol > 0.0)) raise(Errc::invalid_tol, "crawford gap tolerance must be positive");

    const double norm_t = operator_norm(t);
    const Complex center = trace(t) / static_cast<double>(t.dim());
    RotationFamily family(t);
    family.ensure_grid(64);
    const double scale = 1.0 + norm_t;
    const double c_tol = std::max(tol, 1e-4 * scale);

    CrawfordGapResult out;
    auto shifted_norm = [&](Complex lambda) { return operator_norm(shift(t, lambda), 1e-11); };
    auto h_scan = [&](Complex lambda) {
        const double nrm = shifted_norm(lambda);
        const double c = std::max(0.0, family.scan_shifted_max(false, lambda));
        const double h = nrm * nrm - c * c;
        out.grid_values.emplace_back(lambda, h);
        return h;
    };
    auto h_refined = [&](Complex lambda) {
        const double nrm = shifted_norm(lambda);
        const double c = norm_t <= 1e-300 && std::abs(lambda) <= 1e-300
                             ? 0.0
                             : shifted_crawford(family, norm_t, lambda, c_tol);
        const double h = nrm * nrm - c * c;
        out.grid_values.emplace_back(lambda, h);
        return h;
    };

    const double radius = std::max(2.0 * norm_t, 1e-12);
    std::vector<std::pair<double, Complex>> coarse;
    coarse.reserve(n_grid * n_grid);
    for (std::size_t iy = 0; iy < n_grid; ++iy) {
        for (std::size_t ix = 0; ix < n_grid; ++ix) {
            const double fx = -1.0 + 2.0 * static_cast<double>(ix) / static_cast<double>(n_grid - 1);
            const double fy = -1.0 + 2.0 * static_cast<double>(iy) / static_cast<double>(n_grid - 1);
            const Complex lambda = center + Complex(fx, fy) * radius;
            coarse.emplace_back(h_scan(lambda), lambda);
        }
    }
    std::sort(coarse.begin(), coarse.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return detail::better_min(0.0, a.second, 0.0, b.second);
    });

    // refine the most promising grid candidates, then descend from the best
    double f_best = 0.0;
    Complex l_best;
    bool have_best = false;
    const std::size_t refine_count = std::min<std::size_t>(6, coarse.size());
    for (std::size_t k = 0; k < refine_count; ++k) {
        const Complex lambda = coarse[k].second;
        const double hv = h_refined(lambda);
        if (!have_best || detail::better_min(hv, lambda, f_best, l_best)) {
            f_best = hv;
            l_best = lambda;
            have_best = true;
        }
    }

    const double step = radius / static_cast<double>(n_grid - 1);
    detail::nelder_mead_2d([&](double x, double y) { return h_refined(Complex(x, y)); },
                           l_best.real(), l_best.imag(), step,
                           std::max(0.5 * tol, 1e-10 * scale),
                           std::max(0.25 * tol, 1e-12 * scale * scale), 120);

    // best over everything evaluated, coarse scans included (they sit above
    // their true h, so the minimum stays an upper estimate of inf h)
    out.best_value = out.grid_values.front().second;
    out.lambda_star = out.grid_values.front().first;
    for (const auto& [lambda, hv] : out.grid_values)
        if (detail::better_min(hv, lambda, out.best_value, out.lambda_star)) {
            out.best_value = hv;
            out.lambda_star = lambda;
        }
    return out;
}

} // namespace tenrad
