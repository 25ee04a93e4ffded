#pragma once

#include <stdexcept>
#include <string>

namespace tenrad {

enum class Errc {
    dim_mismatch,
    size_limit,
    bad_matrix,
    bad_argument,
    invalid_tol,
    not_hermitian,
    no_convergence,
    not_psd,
    not_unit,
    dim_too_small,
    budget_exceeded,
    unknown_bound,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::dim_mismatch:    return "DIM_MISMATCH";
        case Errc::size_limit:      return "SIZE_LIMIT";
        case Errc::bad_matrix:      return "BAD_MATRIX";
        case Errc::bad_argument:    return "BAD_ARGUMENT";
        case Errc::invalid_tol:     return "INVALID_TOL";
        case Errc::not_hermitian:   return "NOT_HERMITIAN";
        case Errc::no_convergence:  return "NO_CONVERGENCE";
        case Errc::not_psd:         return "NOT_PSD";
        case Errc::not_unit:        return "NOT_UNIT";
        case Errc::dim_too_small:   return "DIM_TOO_SMALL";
        case Errc::budget_exceeded: return "BUDGET_EXCEEDED";
        case Errc::unknown_bound:   return "UNKNOWN_BOUND";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace tenrad
