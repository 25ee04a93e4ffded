#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "tenrad/complex_matrix.hpp"
#include "tenrad/error.hpp"

namespace tenrad {

/// splitmix64: the 64-bit mixing/stream generator (Steele, Lea, Flood).
/// Fixed algorithm so streams reproduce across platforms and languages.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in (0, 1]: (next() >> 11) + 1 scaled by 2^-53.
    double uniform() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal via Box-Muller: sqrt(-2 ln u1) cos(2 pi u2).
    /// Consumes exactly two 64-bit draws per call.
    double gaussian() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    /// Standard complex gaussian: independent N(0, 1/2) parts.
    Complex complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return Complex(re, im) * 0.7071067811865476;
    }

private:
    std::uint64_t state_;
};

/// Child seed for one trial: the finalizer is a bijection on 64-bit words, so
/// distinct trial indices under a fixed master seed give distinct streams.
inline std::uint64_t split_stream(std::uint64_t master_seed, std::uint64_t trial_index) {
    auto mix = [](std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    };
    return mix(master_seed ^ mix(trial_index + 0x9E3779B97F4A7C15ull));
}

enum class EnsembleKind { ginibre, normal, selfadjoint, unitary, square_zero };

struct Ensemble {
    EnsembleKind kind = EnsembleKind::ginibre;
    double scale = 1.0;  // != 1 marks a scaled variant of the base ensemble
};

struct GeneratorConfig {
    std::uint64_t seed = 0;
    std::size_t dim = 2;
};

inline const char* ensemble_kind_name(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::ginibre:     return "ginibre";
        case EnsembleKind::normal:      return "normal";
        case EnsembleKind::selfadjoint: return "selfadjoint";
        case EnsembleKind::unitary:     return "unitary";
        case EnsembleKind::square_zero: return "square_zero";
    }
    return "unknown";
}

inline std::string ensemble_name(const Ensemble& e) {
    std::string s = ensemble_kind_name(e.kind);
    if (e.scale != 1.0) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "*%.12g", e.scale);
        s += buf;
    }
    return s;
}

namespace detail {

// row-major i.i.d. complex gaussian fill
inline ComplexMatrix ginibre(SplitMix64& rng, std::size_t n) {
    ComplexMatrix m(n);
    for (auto& z : m.entries()) z = rng.complex_gaussian();
    return m;
}

// Modified Gram-Schmidt with one reorthogonalization pass; columns that
// collapse (never seen with gaussian draws) are redrawn from the stream.
inline ComplexMatrix haar_like_unitary(SplitMix64& rng, std::size_t n) {
    ComplexMatrix g = ginibre(rng, n);
    ComplexMatrix u(n);
    std::vector<ComplexVector> cols;
    cols.reserve(n);
    for (std::size_t c = 0; c < n; ++c) {
        ComplexVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = g(i, c);
        for (int attempt = 0;; ++attempt) {
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& prev : cols) {
                    const Complex proj = inner_product(v, prev);
                    for (std::size_t i = 0; i < n; ++i) v[i] -= proj * prev[i];
                }
            const double nv = vec_norm(v);
            if (nv > 1e-8) {
                for (auto& z : v) z /= nv;
                break;
            }
            for (auto& z : v) z = rng.complex_gaussian();
            if (attempt > 8) raise(Errc::bad_argument, "unitary draw failed to orthogonalize");
        }
        cols.push_back(v);
        for (std::size_t i = 0; i < n; ++i) u(i, c) = v[i];
    }
    return u;
}

} // namespace detail

/// Draw one matrix. Identical (ensemble, seed, dim) give bitwise-identical
/// output; each ensemble consumes the stream in a fixed documented order.
inline ComplexMatrix generate(const Ensemble& e, const GeneratorConfig& cfg) {
    if (cfg.dim < 1) raise(Errc::bad_argument, "dimension must be >= 1");
    SplitMix64 rng(cfg.seed);
    ComplexMatrix out(cfg.dim);
    switch (e.kind) {
        case EnsembleKind::ginibre:
            out = detail::ginibre(rng, cfg.dim);
            break;
        case EnsembleKind::normal: {
            // U diag(g_1..g_n) U*: unitary first, then the diagonal draws
            const ComplexMatrix u = detail::haar_like_unitary(rng, cfg.dim);
            ComplexMatrix d(cfg.dim);
            for (std::size_t i = 0; i < cfg.dim; ++i) d(i, i) = rng.complex_gaussian();
            out = matmul(u, matmul(d, adjoint(u)));
            break;
        }
        case EnsembleKind::selfadjoint: {
            const ComplexMatrix g = detail::ginibre(rng, cfg.dim);
            out = re_part(g);  // (g + g*)/2, Hermitian bitwise
            break;
        }
        case EnsembleKind::unitary:
            out = detail::haar_like_unitary(rng, cfg.dim);
            break;
        case EnsembleKind::square_zero: {
            if (cfg.dim < 2)
                raise(Errc::dim_too_small, "square-zero draws need dimension >= 2");
            // [[0, X], [0, 0]] with X of shape ceil(n/2) x floor(n/2); the
            // square vanishes exactly by the block structure
            const std::size_t rows = (cfg.dim + 1) / 2;
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = rows; j < cfg.dim; ++j)
                    out(i, j) = rng.complex_gaussian();
            break;
        }
    }
    if (e.scale != 1.0) out = scale(Complex(e.scale, 0.0), out);
    return out;
}

} // namespace tenrad
