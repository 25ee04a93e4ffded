#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <vector>

#include "tenrad/complex_matrix.hpp"
#include "tenrad/hermitian_eig.hpp"

namespace tenrad {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kSweepEigTol = 1e-11;

/// Cached access to the Hermitian family Re(e^{i theta} a) for a fixed matrix.
///
/// Re(e^{i theta} a) = cos(theta) * re_part(a) - sin(theta) * im_part(a), so each
/// angle costs one matrix combination plus one eigensolve. Both spectrum ends
/// are cached per angle because shifting a by lambda*I only shifts the spectrum:
///   extreme eigenvalues of Re(e^{i theta}(a - lambda I)) =
///   extreme eigenvalues of Re(e^{i theta} a) minus Re(e^{i theta} lambda).
/// The cache is ordered by angle so maximizers can walk it.
class RotationFamily {
public:
    struct Slice {
        double lo, hi, cos, sin;
    };

    explicit RotationFamily(const ComplexMatrix& a, double eig_tol = kSweepEigTol)
        : re_(re_part(a)), im_(im_part(a)), eig_tol_(eig_tol) {}

    std::size_t dim() const { return re_.dim(); }

    ComplexMatrix rotated_real_part(double theta) const {
        const double c = std::cos(theta), s = std::sin(theta);
        ComplexMatrix h(re_.dim());
        for (std::size_t k = 0; k < h.entries().size(); ++k)
            h.entries()[k] = c * re_.entries()[k] - s * im_.entries()[k];
        return h;
    }

    const Slice& at(double theta) const {
        auto it = cache_.find(theta);
        if (it != cache_.end()) return it->second;
        ++solves_;
        const auto vals = hermitian_eigenvalues(rotated_real_part(theta), eig_tol_);
        Slice s{vals.front(), vals.back(), std::cos(theta), std::sin(theta)};
        return cache_.emplace(theta, s).first->second;
    }

    double top(double theta) const { return at(theta).hi; }
    double bottom(double theta) const { return at(theta).lo; }

    /// Top/bottom of the family of a - lambda I at one angle.
    double value_shifted(bool use_top, double theta, Complex lambda) const {
        const Slice& e = at(theta);
        const double shift = lambda.real() * e.cos - lambda.imag() * e.sin;
        return (use_top ? e.hi : e.lo) - shift;
    }

    /// Make sure the m uniform angles 2 pi k / m are cached and listed as seeds.
    void ensure_grid(std::size_t m) const {
        if (m <= grid_done_) return;
        grid_.clear();
        grid_.reserve(m);
        for (std::size_t k = 0; k < m; ++k) {
            const double th = kTwoPi * static_cast<double>(k) / static_cast<double>(m);
            grid_.emplace_back(th, &at(th));  // map nodes are stable
        }
        grid_done_ = m;
    }

    /// Seed angles for maximizers: the uniform grid from ensure_grid.
    const std::vector<std::pair<double, const Slice*>>& seed_grid() const { return grid_; }

    /// Max of the shifted support over the seed grid only. Costs no
    /// eigensolves once the grid exists; accurate to (L * pi / m) by the
    /// Lipschitz bound, and never above the true maximum.
    double scan_shifted_max(bool use_top, Complex lambda) const {
        double best = -1e308;
        for (const auto& [th, slice] : grid_) {
            const double shift = lambda.real() * slice->cos - lambda.imag() * slice->sin;
            const double v = (use_top ? slice->hi : slice->lo) - shift;
            if (v > best) best = v;
        }
        return best;
    }

    const std::map<double, Slice>& cache() const { return cache_; }

    /// Full decomposition at one angle (not cached; used for certificates).
    EigDecomposition decompose(double theta) const {
        ++solves_;
        return hermitian_eig(rotated_real_part(theta), eig_tol_);
    }

    std::size_t eigensolve_count() const { return solves_; }

private:
    ComplexMatrix re_, im_;
    double eig_tol_;
    mutable std::map<double, Slice> cache_;
    mutable std::vector<std::pair<double, const Slice*>> grid_;
    mutable std::size_t grid_done_ = 0;
    mutable std::size_t solves_ = 0;
};

struct SupportMax {
    double theta = 0.0;
    double value = 0.0;
};

struct SupportMaxParams {
    double tol = 1e-8;              // value tolerance of the maximization
    std::size_t min_grid = 64;      // uniform seed angles (cached across calls)
    std::size_t eval_budget = 900;  // fresh eigensolves allowed for refinement
    double theta_floor = 1e-10;     // never split or polish below this width
};

namespace detail {

// Golden-section ascent on [lo, hi]; assumes the bracket holds a single local
// max. Every evaluation updates the incumbent, so a wrong bracket can only
// fail to improve the result, never damage it.
template <typename F>
void golden_polish(F&& f, double lo, double hi, double width_floor, SupportMax& best) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    if (f1 > best.value) best = {x1, f1};
    if (f2 > best.value) best = {x2, f2};
    for (int it = 0; it < 64 && (hi - lo) > width_floor; ++it) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = f(x1);
            if (f1 > best.value) best = {x1, f1};
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = f(x2);
            if (f2 > best.value) best = {x2, f2};
        }
    }
}

} // namespace detail

/// Globally maximize theta -> top/bottom of Re(e^{i theta}(a - lambda I)) over
/// the circle.
///
/// All cached angles act as the seed grid. Intervals between consecutive
/// cached angles whose Piyavskii bound could beat the incumbent are refined by
/// midpoint splits (branch and bound on the Lipschitz bound; the target need
/// not be unimodal), and the winner is polished by golden section. Fresh
/// angles land in the family cache, so a run of maximizations with nearby
/// shifts converges to a handful of new eigensolves per call.
inline SupportMax support_max(const RotationFamily& family, bool use_top, Complex lambda,
                              double lipschitz, const SupportMaxParams& p = {}) {
    auto f = [&](double th) { return family.value_shifted(use_top, th, lambda); };

    if (!(lipschitz > 0.0)) return {0.0, f(0.0)};
    family.ensure_grid(std::max<std::size_t>(p.min_grid, 8));

    // scan the seed grid: incumbent plus interval list. Angles discovered by
    // earlier refinements stay in the cache and are picked up again as lookup
    // hits when the interval machinery walks back into a warm region.
    const auto& cache = family.cache();
    const auto& seeds = family.seed_grid();
    SupportMax best{0.0, -1e308};
    double lo_seen = 1e308;
    std::vector<std::pair<double, double>> pts;  // (theta, value), ascending in theta
    pts.reserve(seeds.size() + 1);
    for (const auto& [th, slice] : seeds) {
        const double shift = lambda.real() * slice->cos - lambda.imag() * slice->sin;
        const double v = (use_top ? slice->hi : slice->lo) - shift;
        pts.emplace_back(th, v);
        if (v > best.value) best = {th, v};
        lo_seen = std::min(lo_seen, v);
    }
    pts.emplace_back(pts.front().first + kTwoPi, pts.front().second);  // wrap

    // plateau: constant support functions (disk-like ranges) need no refinement
    if (best.value - lo_seen <= std::max(p.tol * 0.25, 1e-13 * (1.0 + std::abs(best.value))))
        return best;

    struct Interval {
        double lo, hi, flo, fhi, ub;
    };
    auto make_iv = [&](double lo, double hi, double flo, double fhi) {
        return Interval{lo, hi, flo, fhi, 0.5 * (flo + fhi) + 0.5 * lipschitz * (hi - lo)};
    };
    auto cmp = [](const Interval& a, const Interval& b) {
        if (a.ub != b.ub) return a.ub < b.ub;
        return a.lo > b.lo;  // prefer the smaller angle on ties
    };

    // The branch-and-bound phase only has to localize candidate basins to a
    // coarse angular width; golden section finishes the job. Splitting all the
    // way to the value tolerance would cost far more eigensolves.
    const double coarse_w = std::max(p.theta_floor, 1.6e-3);
    const double cut = std::max(0.5 * p.tol, 0.5 * lipschitz * coarse_w);
    const double floor_w = std::max(p.theta_floor, 0.25 * p.tol / lipschitz);

    std::priority_queue<Interval, std::vector<Interval>, decltype(cmp)> heap(cmp);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        Interval iv = make_iv(pts[k].first, pts[k + 1].first, pts[k].second, pts[k + 1].second);
        if (iv.ub > best.value + 0.5 * cut && iv.hi - iv.lo > p.theta_floor) heap.push(iv);
    }

    std::size_t evals = 0;
    std::vector<Interval> survivors;
    while (!heap.empty() && evals < p.eval_budget) {
        Interval iv = heap.top();
        if (iv.ub <= best.value + cut) break;
        heap.pop();
        if (iv.hi - iv.lo <= coarse_w) {
            survivors.push_back(iv);
            continue;
        }
        const double mid = 0.5 * (iv.lo + iv.hi);
        const double fm = f(mid);
        ++evals;
        if (fm > best.value) best = {mid, fm};
        heap.push(make_iv(iv.lo, mid, iv.flo, fm));
        heap.push(make_iv(mid, iv.hi, fm, iv.fhi));
    }

    // polish the incumbent's neighborhood down to the value tolerance
    const double theta_before_polish = best.theta;
    {
        auto it = cache.lower_bound(best.theta);
        double left, right;
        if (it == cache.end() || it == cache.begin()) {
            const double w = kTwoPi / static_cast<double>(std::max<std::size_t>(pts.size(), 2) - 1);
            left = best.theta - w;
            right = best.theta + w;
        } else {
            left = std::prev(it)->first;
            auto next = std::next(it);
            right = next != cache.end() ? next->first : best.theta + (best.theta - left);
        }
        if (right - left > floor_w) detail::golden_polish(f, left, right, floor_w, best);
    }

    // Detached near-optimal intervals get their own polish. Survivors that
    // tile one contiguous run with the incumbent are its own basin's slopes;
    // their Lipschitz bound exceeds the incumbent only through the L*w/2 slack.
    if (!survivors.empty()) {
        std::sort(survivors.begin(), survivors.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        std::vector<std::size_t> run(survivors.size(), 0);
        std::size_t run_id = 0;
        for (std::size_t k = 0; k < survivors.size(); ++k) {
            if (k > 0 && survivors[k].lo != survivors[k - 1].hi) ++run_id;
            run[k] = run_id;
        }
        std::size_t incumbent_run = run_id + 1;  // sentinel: no run
        for (std::size_t k = 0; k < survivors.size(); ++k)
            if (survivors[k].lo <= theta_before_polish && theta_before_polish <= survivors[k].hi)
                incumbent_run = run[k];

        std::vector<std::size_t> order(survivors.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (survivors[a].ub != survivors[b].ub) return survivors[a].ub > survivors[b].ub;
            return survivors[a].lo < survivors[b].lo;
        });
        std::size_t polished = 0;
        for (std::size_t k : order) {
            if (polished >= 8) break;
            const Interval& iv = survivors[k];
            if (iv.ub <= best.value + 0.5 * p.tol) break;  // sorted, rest are no better
            if (run[k] == incumbent_run) continue;
            if (iv.hi - iv.lo > floor_w) {
                detail::golden_polish(f, iv.lo, iv.hi, floor_w, best);
                ++polished;
            }
        }
    }

    best.theta = std::fmod(best.theta, kTwoPi);
    if (best.theta < 0.0) best.theta += kTwoPi;
    return best;
}

} // namespace tenrad
