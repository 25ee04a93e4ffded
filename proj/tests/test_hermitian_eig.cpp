#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support/test_support.hpp"
#include "tenrad/hermitian_eig.hpp"

using namespace tenrad;
using tts::kI;
using tts::TestRng;

namespace {

ComplexMatrix random_hermitian(TestRng& rng, std::size_t n) {
    return symmetrize(rng.matrix(n));
}

void check_residuals(const ComplexMatrix& h, const EigDecomposition& d, double tol) {
    const std::size_t n = h.dim();
    const double fnorm = frobenius_norm(h);
    for (std::size_t k = 0; k < n; ++k) {
        const ComplexVector v = eig_column(d, k);
        ComplexVector r = matvec(h, v);
        for (std::size_t i = 0; i < n; ++i) r[i] -= d.eigenvalues[k] * v[i];
        REQUIRE(vec_norm(r) <= 10.0 * tol * std::max(fnorm, 1e-30));
    }
    // unitarity of the eigenvector matrix
    const ComplexMatrix vtv = matmul(adjoint(d.eigenvectors), d.eigenvectors);
    REQUIRE(frobenius_norm(sub(vtv, ComplexMatrix::identity(n))) <= 100.0 * tol * n);
}

} // namespace

TEST_CASE("eigenvalues of simple matrices") {
    const auto d1 = hermitian_eig(tts::diag({2.0, 1.0}));
    REQUIRE(d1.eigenvalues[0] == Catch::Approx(1.0).margin(1e-13));
    REQUIRE(d1.eigenvalues[1] == Catch::Approx(2.0).margin(1e-13));

    const auto d2 = hermitian_eig(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}});
    REQUIRE(d2.eigenvalues[0] == Catch::Approx(-1.0).margin(1e-13));
    REQUIRE(d2.eigenvalues[1] == Catch::Approx(1.0).margin(1e-13));

    // characteristic polynomial x^2 - 2x = 0
    const auto d3 = hermitian_eig(ComplexMatrix{{1.0, kI}, {-kI, 1.0}});
    REQUIRE(d3.eigenvalues[0] == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(d3.eigenvalues[1] == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("residual and unitarity invariants on random Hermitian matrices") {
    TestRng rng(31);
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 16u}) {
        const ComplexMatrix h = random_hermitian(rng, n);
        const double tol = 1e-13;
        const auto d = hermitian_eig(h, tol);
        REQUIRE(std::is_sorted(d.eigenvalues.begin(), d.eigenvalues.end()));
        check_residuals(h, d, tol);
    }
}

TEST_CASE("values-only path agrees with the full decomposition") {
    TestRng rng(32);
    const ComplexMatrix h = random_hermitian(rng, 7);
    const auto d = hermitian_eig(h);
    const auto vals = hermitian_eigenvalues(h);
    REQUIRE(vals.size() == d.eigenvalues.size());
    for (std::size_t k = 0; k < vals.size(); ++k)
        REQUIRE(vals[k] == Catch::Approx(d.eigenvalues[k]).margin(1e-12));
}

TEST_CASE("non-Hermitian input is rejected") {
    REQUIRE_THROWS_MATCHES(hermitian_eig(tts::mat_n()), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code() == Errc::not_hermitian;
                           }));
}

TEST_CASE("sweep cap failure reports no convergence") {
    TestRng rng(33);
    const ComplexMatrix h = random_hermitian(rng, 6);
    REQUIRE_THROWS_MATCHES(hermitian_eig(h, 1e-13, 0), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code() == Errc::no_convergence;
                           }));
}

TEST_CASE("tolerance must be positive") {
    REQUIRE_THROWS_MATCHES(hermitian_eig(tts::diag({1.0}), 0.0), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code() == Errc::invalid_tol;
                           }));
}

TEST_CASE("degenerate spectra are handled") {
    // repeated eigenvalues
    const ComplexMatrix h{{2.0, 0.0, 0.0}, {0.0, 2.0, 0.0}, {0.0, 0.0, 2.0}};
    const auto d = hermitian_eig(h);
    for (double v : d.eigenvalues) REQUIRE(v == Catch::Approx(2.0).margin(1e-13));
    check_residuals(h, d, 1e-13);

    TestRng rng(34);
    ComplexMatrix block(4);
    block(0, 0) = 3.0;
    block(1, 1) = 3.0;
    block(2, 2) = -1.0;
    block(3, 3) = -1.0;
    block(0, 1) = Complex(0.0, 0.25);
    block(1, 0) = Complex(0.0, -0.25);
    const auto d2 = hermitian_eig(block);
    check_residuals(block, d2, 1e-13);
}
