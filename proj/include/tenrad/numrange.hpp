#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "tenrad/complex_matrix.hpp"
#include "tenrad/error.hpp"
#include "tenrad/spectral.hpp"
#include "tenrad/support.hpp"

namespace tenrad {

inline constexpr double kDefaultRadiusTol = 1e-8;
inline constexpr std::size_t kDefaultBoundaryPoints = 720;

struct RadiusResult {
    double value = 0.0;
    double theta_star = 0.0;
    ComplexVector certificate;  // unit vector attaining the radius
    std::size_t evaluations = 0;
};

struct CrawfordResult {
    double value = 0.0;
    double theta_star = 0.0;
    bool attained_inside = false;  // true when 0 lies in W(a) numerically
    std::size_t evaluations = 0;
};

struct RangeSample {
    double theta = 0.0;
    Complex boundary_point;
    double support_value = 0.0;
};

/// Numerical radius w(a) = sup_theta lambda_max(Re(e^{i theta} a)).
///
/// Sweeping the whole circle makes the top eigenvalue alone sufficient, since
/// the bottom end at theta equals the negated top end at theta + pi.
inline RadiusResult numerical_radius(const ComplexMatrix& a, double tol = kDefaultRadiusTol) {
    if (!(tol > 0.0)) raise(Errc::invalid_tol, "radius tolerance must be positive");
    const double norm_a = operator_norm(a);

    RadiusResult out;
    if (norm_a <= 1e-300) {
        // zero operator: pin the certificate to the first basis vector
        out.certificate.assign(a.dim(), Complex{});
        out.certificate[0] = 1.0;
        out.evaluations = 1;
        return out;
    }

    RotationFamily family(a);
    const SupportMax mx = support_max(family, true, Complex{}, norm_a, {tol});

    const EigDecomposition d = family.decompose(mx.theta);
    out.value = std::max(mx.value, d.eigenvalues.back());
    out.theta_star = mx.theta;
    out.certificate = eig_column(d, a.dim() - 1);
    out.evaluations = family.eigensolve_count() + 1;  // + operator_norm solve
    return out;
}

/// Crawford number c(a) = inf{|z| : z in W(a)}.
///
/// W(a) is convex, so the distance from the origin is the largest support-line
/// distance: max(0, max_theta lambda_min(Re(e^{i theta} a))).
inline CrawfordResult crawford_number(const ComplexMatrix& a, double tol = kDefaultRadiusTol) {
    if (!(tol > 0.0)) raise(Errc::invalid_tol, "crawford tolerance must be positive");
    const double norm_a = operator_norm(a);

    CrawfordResult out;
    if (norm_a <= 1e-300) {
        out.attained_inside = true;  // W = {0}
        out.evaluations = 1;
        return out;
    }

    RotationFamily family(a);
    const SupportMax mx = support_max(family, false, Complex{}, norm_a, {tol});

    out.value = std::max(0.0, mx.value);
    out.theta_star = mx.theta;
    out.attained_inside = mx.value <= tol;
    out.evaluations = family.eigensolve_count() + 1;
    return out;
}

/// Boundary samples of W(a) via support directions theta_k = 2 pi k / n_points.
inline std::vector<RangeSample> range_boundary(const ComplexMatrix& a, std::size_t n_points) {
    if (n_points < 3) raise(Errc::bad_argument, "range boundary needs at least 3 points");
    RotationFamily family(a);
    std::vector<RangeSample> samples;
    samples.reserve(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
        const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(n_points);
        const EigDecomposition d = family.decompose(theta);
        const ComplexVector x = eig_column(d, a.dim() - 1);
        samples.push_back({theta, quadratic_form(a, x), d.eigenvalues.back()});
    }
    return samples;
}

/// Plain max of lambda_max(Re(e^{i theta} a)) over m uniform angles. Within
/// ||a|| * pi / m of w(a) by the Lipschitz bound; kept free of the adaptive
/// machinery so it can serve as an independent cross-check.
inline double radius_grid_oracle(const ComplexMatrix& a, std::size_t m) {
    if (m < 8) raise(Errc::bad_argument, "grid oracle needs m >= 8");
    const ComplexMatrix re = re_part(a), im = im_part(a);
    const std::size_t n = a.dim();
    double best = -1e308;
    ComplexMatrix h(n);
    for (std::size_t k = 0; k < m; ++k) {
        const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(m);
        const double c = std::cos(theta), s = std::sin(theta);
        for (std::size_t idx = 0; idx < h.entries().size(); ++idx)
            h.entries()[idx] = c * re.entries()[idx] - s * im.entries()[idx];
        best = std::max(best, hermitian_eigenvalues(h).back());
    }
    return best;
}

/// w(a - lambda I) computed from the same rotation family as w(a); the shift
/// moves every support value by Re(e^{i theta} lambda).
inline double shifted_radius(const RotationFamily& family, double norm_a, Complex lambda,
                             double tol) {
    const double lip = norm_a + std::abs(lambda);
    return support_max(family, true, lambda, lip, {tol}).value;
}

/// c(a - lambda I) from a cached rotation family.
inline double shifted_crawford(const RotationFamily& family, double norm_a, Complex lambda,
                               double tol) {
    const double lip = norm_a + std::abs(lambda);
    return std::max(0.0, support_max(family, false, lambda, lip, {tol}).value);
}

} // namespace tenrad
