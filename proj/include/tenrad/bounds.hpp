#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "tenrad/complex_matrix.hpp"
#include "tenrad/error.hpp"
#include "tenrad/numrange.hpp"
#include "tenrad/scalar_distance.hpp"
#include "tenrad/spectral.hpp"

namespace tenrad {

struct OperatorPair {
    ComplexMatrix a, b;
};

enum class BoundId {
    classic_norm,
    radius_product,
    double_radius,
    dist_refined,
    abs_upper,
    cartesian_upper,
    normdiff_lower,
    rot_normdiff_lower,
    sq_normdiff_lower,
    sq_rot_lower,
    crawford_gap,
};

inline constexpr std::array<BoundId, 11> kAllBoundIds = {
    BoundId::classic_norm,    BoundId::radius_product,    BoundId::double_radius,
    BoundId::dist_refined,    BoundId::abs_upper,         BoundId::cartesian_upper,
    BoundId::normdiff_lower,  BoundId::rot_normdiff_lower, BoundId::sq_normdiff_lower,
    BoundId::sq_rot_lower,    BoundId::crawford_gap,
};

inline const char* bound_id_name(BoundId id) {
    switch (id) {
        case BoundId::classic_norm:       return "CLASSIC_NORM";
        case BoundId::radius_product:     return "RADIUS_PRODUCT";
        case BoundId::double_radius:      return "DOUBLE_RADIUS";
        case BoundId::dist_refined:       return "DIST_REFINED";
        case BoundId::abs_upper:          return "ABS_UPPER";
        case BoundId::cartesian_upper:    return "CARTESIAN_UPPER";
        case BoundId::normdiff_lower:     return "NORMDIFF_LOWER";
        case BoundId::rot_normdiff_lower: return "ROT_NORMDIFF_LOWER";
        case BoundId::sq_normdiff_lower:  return "SQ_NORMDIFF_LOWER";
        case BoundId::sq_rot_lower:       return "SQ_ROT_LOWER";
        case BoundId::crawford_gap:       return "CRAWFORD_GAP";
    }
    return "UNKNOWN";
}

inline std::optional<BoundId> bound_id_from_name(const std::string& name) {
    for (BoundId id : kAllBoundIds)
        if (name == bound_id_name(id)) return id;
    return std::nullopt;
}

struct BoundTerm {
    std::string name;
    double value;
};

struct BoundReport {
    BoundId id = BoundId::classic_norm;
    double center = 0.0;             // w(A (x) B), or its square when center_is_squared
    bool center_is_squared = false;
    std::vector<BoundTerm> lower_terms;  // chain order, tightest first
    std::vector<BoundTerm> upper_terms;  // chain order, tightest first
    std::vector<BoundTerm> info_terms;   // not part of the inequality chain
    bool holds = false;
    double min_slack = 0.0;  // smallest signed slack across the chain
    double tol = 0.0;
    std::optional<std::string> error;
};

struct EqualityKind {
    enum Kind { half_norm, quarter_squared };
};

struct EqualityReport {
    EqualityKind::Kind kind = EqualityKind::half_norm;
    std::size_t grid_size = 0;
    double reference = 0.0;  // ||a|| ||b|| or ||a*a (x) b*b + a a* (x) b b*||
    double max_deviation_plus = 0.0;
    double max_deviation_minus = 0.0;
    bool consistent = false;
};

/// Shared per-pair quantities. Everything is computed at most once; the
/// rotation family of a (x) b backs the tensor radius, all the rotated-norm
/// terms, the equality scans, and the crawford-gap search.
class PairContext {
public:
    PairContext(const OperatorPair& p, double tol)
        : a_(p.a), b_(p.b), tol_(tol), rtol_(std::max(std::min(1e-8, tol / 8.0), 1e-13)) {}

    const ComplexMatrix& a() const { return a_; }
    const ComplexMatrix& b() const { return b_; }
    double tol() const { return tol_; }

    const ComplexMatrix& tensor() {
        if (!tensor_) tensor_ = kron(a_, b_);
        return *tensor_;
    }

    RotationFamily& family() {
        if (!family_) family_.emplace(tensor());
        return *family_;
    }

    double norm_a() { return cached(norm_a_, [&] { return operator_norm(a_); }); }
    double norm_b() { return cached(norm_b_, [&] { return operator_norm(b_); }); }
    double norm_t() { return cached(norm_t_, [&] { return norm_a() * norm_b(); }); }

    double w_t() {
        return cached(w_t_, [&] {
            if (norm_t() <= 1e-300) return 0.0;
            return support_max(family(), true, Complex{}, norm_t(), {rtol_}).value;
        });
    }

    double w_a() { return cached(w_a_, [&] { return numerical_radius(a_, rtol_).value; }); }
    double w_b() { return cached(w_b_, [&] { return numerical_radius(b_, rtol_).value; }); }
    double d_a() { return cached(d_a_, [&] { return distance_to_scalars(a_, rtol_).value; }); }
    double d_b() { return cached(d_b_, [&] { return distance_to_scalars(b_, rtol_).value; }); }

    // ||a*a (x) b*b + a a* (x) b b*||
    double norm_gram_sum() {
        return cached(norm_gram_sum_, [&] {
            const ComplexMatrix k = add(kron(gram(a_), gram(b_)), kron(cogram(a_), cogram(b_)));
            return hermitian_norm(symmetrize(k));
        });
    }

    // || T + T* || and || T - T* ||
    double norm_plus() {
        return cached(norm_plus_, [&] { return 2.0 * hermitian_norm(re_part(tensor())); });
    }
    double norm_minus() {
        return cached(norm_minus_, [&] { return 2.0 * hermitian_norm(im_part(tensor())); });
    }

    // || T + i T* || = sqrt(2) ||Re T + Im T||, and the minus version
    double norm_plus_i() {
        return cached(norm_plus_i_, [&] {
            return std::sqrt(2.0) * hermitian_norm(add(re_part(tensor()), im_part(tensor())));
        });
    }
    double norm_minus_i() {
        return cached(norm_minus_i_, [&] {
            return std::sqrt(2.0) * hermitian_norm(sub(re_part(tensor()), im_part(tensor())));
        });
    }

    // || Re(|a||a*| (x) |b||b*|) ||
    double norm_abs_cross() {
        return cached(norm_abs_cross_, [&] {
            const ComplexMatrix pa = matmul(abs_op(a_), abs_op(adjoint(a_)));
            const ComplexMatrix pb = matmul(abs_op(b_), abs_op(adjoint(b_)));
            return hermitian_norm(re_part(kron(pa, pb)));
        });
    }

    double sqrt_norm_a_sq() {
        return cached(sqrt_norm_a_sq_, [&] { return std::sqrt(operator_norm(matmul(a_, a_))); });
    }
    double sqrt_norm_b_sq() {
        return cached(sqrt_norm_b_sq_, [&] { return std::sqrt(operator_norm(matmul(b_, b_))); });
    }

    const CrawfordGapResult& gap(std::size_t n_grid = 9) {
        if (!gap_) gap_ = crawford_gap_rhs(tensor(), n_grid, std::max(rtol_, tol_ / 8.0));
        return *gap_;
    }

private:
    static ComplexMatrix gram(const ComplexMatrix& m) { return symmetrize(matmul(adjoint(m), m)); }
    static ComplexMatrix cogram(const ComplexMatrix& m) { return symmetrize(matmul(m, adjoint(m))); }

    template <typename F>
    double cached(std::optional<double>& slot, F&& f) {
        if (!slot) slot = f();
        return *slot;
    }

    ComplexMatrix a_, b_;
    double tol_, rtol_;
    std::optional<ComplexMatrix> tensor_;
    std::optional<RotationFamily> family_;
    std::optional<double> norm_a_, norm_b_, norm_t_, w_t_, w_a_, w_b_, d_a_, d_b_;
    std::optional<double> norm_gram_sum_, norm_plus_, norm_minus_, norm_plus_i_, norm_minus_i_;
    std::optional<double> norm_abs_cross_, sqrt_norm_a_sq_, sqrt_norm_b_sq_;
    std::optional<CrawfordGapResult> gap_;
};

namespace detail {

// lower_1 <= ... <= lower_k <= center <= upper_1 <= ... <= upper_m, with the
// chain-adjacent slacks defining holds and min_slack.
inline void finish_chain_report(BoundReport& r) {
    bool first = true;
    auto feed = [&](double slack) {
        if (first || slack < r.min_slack) r.min_slack = slack;
        first = false;
    };
    double prev = 0.0;
    bool have_prev = false;
    for (auto it = r.lower_terms.rbegin(); it != r.lower_terms.rend(); ++it) {
        if (have_prev) feed(prev - it->value);
        prev = it->value;
        have_prev = true;
    }
    if (have_prev) feed(r.center - prev);
    prev = r.center;
    for (const auto& t : r.upper_terms) {
        feed(t.value - prev);
        prev = t.value;
    }
    if (first) r.min_slack = 0.0;
    r.holds = r.min_slack >= -r.tol;
}

} // namespace detail

/// Evaluate one inequality chain for the pair, all terms included.
inline BoundReport eval_bound(BoundId id, PairContext& ctx) {
    BoundReport r;
    r.id = id;
    r.tol = ctx.tol();

    const double w = ctx.w_t();
    switch (id) {
        case BoundId::classic_norm:
            r.center = w;
            r.lower_terms = {{"half_norm_product", 0.5 * ctx.norm_t()}};
            r.upper_terms = {{"norm_product", ctx.norm_t()}};
            break;
        case BoundId::radius_product: {
            r.center = w;
            const double ab = ctx.w_a() * ctx.norm_b();
            const double ba = ctx.w_b() * ctx.norm_a();
            r.lower_terms = {{"radius_product", ctx.w_a() * ctx.w_b()}};
            r.upper_terms = {{"min_radius_norm", std::min(ab, ba)}};
            r.info_terms = {{"radius_a_norm_b", ab}, {"radius_b_norm_a", ba}};
            break;
        }
        case BoundId::double_radius:
            r.center = w;
            r.lower_terms = {{"radius_product", ctx.w_a() * ctx.w_b()}};
            r.upper_terms = {{"double_radius_product", 2.0 * ctx.w_a() * ctx.w_b()}};
            break;
        case BoundId::dist_refined: {
            r.center = w;
            const double ab = ctx.w_a() * (ctx.w_b() + ctx.d_b());
            const double ba = ctx.w_b() * (ctx.w_a() + ctx.d_a());
            r.upper_terms = {{"min_dist_refined", std::min(ab, ba)},
                             {"double_radius_product", 2.0 * ctx.w_a() * ctx.w_b()}};
            r.info_terms = {{"radius_a_dist_b", ab}, {"radius_b_dist_a", ba}};
            break;
        }
        case BoundId::abs_upper: {
            r.center = w * w;
            r.center_is_squared = true;
            const double t1 = 0.25 * ctx.norm_gram_sum() + 0.5 * ctx.norm_abs_cross();
            const double root = ctx.norm_t() + ctx.sqrt_norm_a_sq() * ctx.sqrt_norm_b_sq();
            const double t2 = 0.25 * root * root;
            const double t3 = ctx.norm_t() * ctx.norm_t();
            r.upper_terms = {{"abs_combination", t1}, {"quarter_sum_squared", t2},
                             {"norm_product_squared", t3}};
            break;
        }
        case BoundId::cartesian_upper:
            r.center = w * w;
            r.center_is_squared = true;
            r.upper_terms = {{"half_gram_sum", 0.5 * ctx.norm_gram_sum()},
                             {"norm_product_squared", ctx.norm_t() * ctx.norm_t()}};
            break;
        case BoundId::normdiff_lower:
            r.center = w;
            r.lower_terms = {{"half_norm_plus_diff",
                              0.5 * ctx.norm_t() +
                                  0.25 * std::abs(ctx.norm_plus() - ctx.norm_minus())}};
            r.info_terms = {{"norm_sum", ctx.norm_plus()}, {"norm_diff", ctx.norm_minus()}};
            break;
        case BoundId::rot_normdiff_lower:
            r.center = w;
            r.lower_terms = {{"half_norm_plus_rot_diff",
                              0.5 * ctx.norm_t() +
                                  0.25 * std::abs(ctx.norm_plus_i() - ctx.norm_minus_i())}};
            r.info_terms = {{"norm_sum_i", ctx.norm_plus_i()}, {"norm_diff_i", ctx.norm_minus_i()}};
            break;
        case BoundId::sq_normdiff_lower: {
            r.center = w * w;
            r.center_is_squared = true;
            const double p2 = ctx.norm_plus() * ctx.norm_plus();
            const double m2 = ctx.norm_minus() * ctx.norm_minus();
            r.lower_terms = {{"quarter_gram_plus_sq_diff",
                              0.25 * ctx.norm_gram_sum() + 0.125 * std::abs(p2 - m2)}};
            break;
        }
        case BoundId::sq_rot_lower: {
            r.center = w * w;
            r.center_is_squared = true;
            const double p2 = ctx.norm_plus_i() * ctx.norm_plus_i();
            const double m2 = ctx.norm_minus_i() * ctx.norm_minus_i();
            r.lower_terms = {{"quarter_gram_plus_sq_rot_diff",
                              0.25 * ctx.norm_gram_sum() + 0.125 * std::abs(p2 - m2)}};
            break;
        }
        case BoundId::crawford_gap: {
            // || T ||^2 - w(T)^2 <= h(lambda) at every evaluated lambda
            const double lhs = ctx.norm_t() * ctx.norm_t() - w * w;
            r.center = lhs;
            r.center_is_squared = true;
            const auto& gap = ctx.gap();
            r.upper_terms = {{"gap_best", gap.best_value}};
            r.info_terms = {{"gap_lambda_re", gap.lambda_star.real()},
                            {"gap_lambda_im", gap.lambda_star.imag()},
                            {"gap_points", static_cast<double>(gap.grid_values.size())}};
            bool first = true;
            for (const auto& [lambda, h] : gap.grid_values) {
                const double slack = h - lhs;
                if (first || slack < r.min_slack) r.min_slack = slack;
                first = false;
            }
            r.holds = !first && r.min_slack >= -r.tol;
            return r;
        }
    }
    detail::finish_chain_report(r);
    return r;
}

inline BoundReport eval_bound(BoundId id, const OperatorPair& p, double tol) {
    if (!(tol > 0.0)) raise(Errc::invalid_tol, "bound tolerance must be positive");
    PairContext ctx(p, tol);
    return eval_bound(id, ctx);
}

struct EvalAllResult {
    std::vector<BoundReport> reports;  // in BoundId order
    std::optional<BoundId> tightest_lower, tightest_upper;
};

/// All eleven bounds, sharing one tensor-radius computation. Per-bound errors
/// are recorded without aborting the remaining bounds. Tightness is compared
/// in w-units (square roots of the squared chains); the crawford gap bounds a
/// different quantity and stays out of that ranking.
inline EvalAllResult eval_all(const OperatorPair& p, double tol) {
    if (!(tol > 0.0)) raise(Errc::invalid_tol, "bound tolerance must be positive");
    PairContext ctx(p, tol);
    EvalAllResult out;

    double best_lower = -1e308, best_upper = 1e308;
    for (BoundId id : kAllBoundIds) {
        BoundReport r;
        try {
            r = eval_bound(id, ctx);
        } catch (const Error& e) {
            r.id = id;
            r.tol = tol;
            r.error = e.what();
            out.reports.push_back(std::move(r));
            continue;
        }
        if (id != BoundId::crawford_gap) {
            auto to_w = [&](double v) {
                return r.center_is_squared ? std::sqrt(std::max(0.0, v)) : v;
            };
            if (!r.lower_terms.empty()) {
                const double lw = to_w(r.lower_terms.front().value);
                if (lw > best_lower) {
                    best_lower = lw;
                    out.tightest_lower = id;
                }
            }
            if (!r.upper_terms.empty()) {
                const double uw = to_w(r.upper_terms.front().value);
                if (uw < best_upper) {
                    best_upper = uw;
                    out.tightest_upper = id;
                }
            }
        }
        out.reports.push_back(std::move(r));
    }
    return out;
}

// --- quoted lemmas as standalone checks ---

namespace detail {

inline void require_unit(const ComplexVector& x) {
    if (std::abs(vec_norm(x) - 1.0) > 1e-10) raise(Errc::not_unit, "vector is not unit length");
}

inline void require_psd(const ComplexMatrix& m) {
    const double fnorm = frobenius_norm(m);
    if (frobenius_norm(sub(m, adjoint(m))) > 1e-10 * std::max(1.0, fnorm))
        raise(Errc::not_psd, "matrix is not Hermitian");
    if (lambda_min(symmetrize(m)) < -1e-10 * std::max(1.0, fnorm))
        raise(Errc::not_psd, "matrix has a negative eigenvalue");
}

} // namespace detail

/// <a x, x>^r <= <a^r x, x> for PSD a, unit x, r >= 1.
inline bool check_power_lemma(const ComplexMatrix& a, const ComplexVector& x, double r) {
    if (!(r >= 1.0)) raise(Errc::bad_argument, "power lemma needs r >= 1");
    detail::require_psd(a);
    detail::require_unit(x);
    const double lhs = std::pow(std::max(0.0, quadratic_form(a, x).real()), r);
    const double rhs = quadratic_form(psd_power(symmetrize(a), r), x).real();
    return lhs <= rhs + 1e-10;
}

/// |<a x, x>| <= <|a| x, x>^{1/2} <|a*| x, x>^{1/2} for unit x.
inline bool check_mixed_schwarz(const ComplexMatrix& a, const ComplexVector& x) {
    detail::require_unit(x);
    const double lhs = std::abs(quadratic_form(a, x));
    const double fa = std::max(0.0, quadratic_form(abs_op(a), x).real());
    const double fas = std::max(0.0, quadratic_form(abs_op(adjoint(a)), x).real());
    return lhs <= std::sqrt(fa) * std::sqrt(fas) + 1e-10;
}

/// ||a + b|| <= max(||a||, ||b||) + ||a^{1/2} b^{1/2}|| for PSD a, b.
inline bool check_sum_norm_lemma(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_psd(a);
    detail::require_psd(b);
    const double lhs = operator_norm(add(a, b));
    const double na = operator_norm(a), nb = operator_norm(b);
    const double cross = operator_norm(matmul(psd_power(symmetrize(a), 0.5),
                                              psd_power(symmetrize(b), 0.5)));
    return lhs <= std::max(na, nb) + cross + 1e-8 * (na + nb);
}

// --- equality characterizations on a finite angle grid ---

namespace detail {

// ||e^{i theta} T + e^{-i theta} T*|| = 2 ||Re(e^{i theta} T)|| and the minus
// version is 2 ||Im(e^{i theta} T)|| = 2 ||Re(e^{i(theta - pi/2)} T)||; both
// come straight from the rotation family of T.
inline std::pair<double, double> rotated_norms(const RotationFamily& fam, double theta) {
    const auto& plus = fam.at(theta);
    double minus_theta = theta - 0.25 * kTwoPi;
    if (minus_theta < 0.0) minus_theta += kTwoPi;
    const auto& minus = fam.at(minus_theta);
    return {2.0 * std::max(std::abs(plus.hi), std::abs(plus.lo)),
            2.0 * std::max(std::abs(minus.hi), std::abs(minus.lo))};
}

} // namespace detail

/// Does || e^{i theta} T + e^{-i theta} T* || = || ... - ... || = ||a|| ||b||
/// hold across the grid? (Characterizes w(T) = ||a|| ||b|| / 2.)
inline EqualityReport check_equality_half(const OperatorPair& p, std::size_t grid, double tol) {
    if (grid < 4) raise(Errc::bad_argument, "equality grid must have at least 4 angles");
    EqualityReport out;
    out.kind = EqualityKind::half_norm;
    out.grid_size = grid;
    out.reference = operator_norm(p.a) * operator_norm(p.b);
    const RotationFamily fam(kron(p.a, p.b));
    for (std::size_t k = 0; k < grid; ++k) {
        const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(grid);
        const auto [np, nm] = detail::rotated_norms(fam, theta);
        out.max_deviation_plus = std::max(out.max_deviation_plus, std::abs(np - out.reference));
        out.max_deviation_minus = std::max(out.max_deviation_minus, std::abs(nm - out.reference));
    }
    out.consistent = out.max_deviation_plus <= tol && out.max_deviation_minus <= tol;
    return out;
}

/// Squared version against ||a*a (x) b*b + a a* (x) b b*||.
/// (Characterizes w(T)^2 = that norm / 4.)
inline EqualityReport check_equality_quarter(const OperatorPair& p, std::size_t grid, double tol) {
    if (grid < 4) raise(Errc::bad_argument, "equality grid must have at least 4 angles");
    EqualityReport out;
    out.kind = EqualityKind::quarter_squared;
    out.grid_size = grid;
    const ComplexMatrix k1 = add(kron(symmetrize(matmul(adjoint(p.a), p.a)),
                                      symmetrize(matmul(adjoint(p.b), p.b))),
                                 kron(symmetrize(matmul(p.a, adjoint(p.a))),
                                      symmetrize(matmul(p.b, adjoint(p.b)))));
    out.reference = hermitian_norm(symmetrize(k1));
    const RotationFamily fam(kron(p.a, p.b));
    for (std::size_t k = 0; k < grid; ++k) {
        const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(grid);
        const auto [np, nm] = detail::rotated_norms(fam, theta);
        out.max_deviation_plus = std::max(out.max_deviation_plus, std::abs(np * np - out.reference));
        out.max_deviation_minus =
            std::max(out.max_deviation_minus, std::abs(nm * nm - out.reference));
    }
    out.consistent = out.max_deviation_plus <= tol && out.max_deviation_minus <= tol;
    return out;
}

} // namespace tenrad
