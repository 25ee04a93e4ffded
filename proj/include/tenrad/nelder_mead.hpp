#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

namespace tenrad::detail {

struct NmResult {
    double x = 0.0, y = 0.0;
    double fbest = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Plain 2-D Nelder-Mead descent (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2). Deterministic; stops when the simplex collapses below
/// `x_tol` or the value spread drops below `f_tol`. Never exceeds `budget`
/// evaluations; `converged` reports whether a stop criterion was met first.
template <typename F>
NmResult nelder_mead_2d(F&& f, double x0, double y0, double step, double x_tol, double f_tol,
                        std::size_t budget) {
    struct Vertex {
        double x, y, fv;
    };
    std::size_t evals = 0;
    auto eval = [&](double x, double y) {
        ++evals;
        return f(x, y);
    };

    std::array<Vertex, 3> v{Vertex{x0, y0, 0.0}, Vertex{x0 + step, y0, 0.0},
                            Vertex{x0, y0 + step, 0.0}};
    for (auto& vx : v) {
        if (evals >= budget) return {v[0].x, v[0].y, v[0].fv, evals, false};
        vx.fv = eval(vx.x, vx.y);
    }

    NmResult out;
    for (;;) {
        std::sort(v.begin(), v.end(), [](const Vertex& a, const Vertex& b) {
            if (a.fv != b.fv) return a.fv < b.fv;
            if (a.x != b.x) return a.x < b.x;
            return a.y < b.y;
        });
        const double diam = std::max({std::abs(v[1].x - v[0].x) + std::abs(v[1].y - v[0].y),
                                      std::abs(v[2].x - v[0].x) + std::abs(v[2].y - v[0].y)});
        const double spread = v[2].fv - v[0].fv;
        if (diam <= x_tol && spread <= f_tol) {
            out.converged = true;
            break;
        }
        if (evals + 2 > budget) break;

        const double cx = 0.5 * (v[0].x + v[1].x), cy = 0.5 * (v[0].y + v[1].y);
        const double rx = cx + (cx - v[2].x), ry = cy + (cy - v[2].y);
        const double fr = eval(rx, ry);
        if (fr < v[0].fv) {
            const double ex = cx + 2.0 * (cx - v[2].x), ey = cy + 2.0 * (cy - v[2].y);
            const double fe = eval(ex, ey);
            v[2] = fe < fr ? Vertex{ex, ey, fe} : Vertex{rx, ry, fr};
        } else if (fr < v[1].fv) {
            v[2] = {rx, ry, fr};
        } else {
            const bool outside = fr < v[2].fv;
            const double px = outside ? cx + 0.5 * (rx - cx) : cx - 0.5 * (cx - v[2].x);
            const double py = outside ? cy + 0.5 * (ry - cy) : cy - 0.5 * (cy - v[2].y);
            const double fp = eval(px, py);
            if (fp < (outside ? fr : v[2].fv)) {
                v[2] = {px, py, fp};
            } else {
                // shrink toward the best vertex
                if (evals + 2 > budget) break;
                for (int i = 1; i < 3; ++i) {
                    v[i].x = v[0].x + 0.5 * (v[i].x - v[0].x);
                    v[i].y = v[0].y + 0.5 * (v[i].y - v[0].y);
                    v[i].fv = eval(v[i].x, v[i].y);
                }
            }
        }
    }

    std::sort(v.begin(), v.end(), [](const Vertex& a, const Vertex& b) {
        if (a.fv != b.fv) return a.fv < b.fv;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    out.x = v[0].x;
    out.y = v[0].y;
    out.fbest = v[0].fv;
    out.evaluations = evals;
    return out;
}

} // namespace tenrad::detail
