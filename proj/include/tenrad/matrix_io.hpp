#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tenrad/complex_matrix.hpp"
#include "tenrad/error.hpp"
#include "tenrad/numrange.hpp"

namespace tenrad {

/// 12 significant digits, C locale regardless of environment.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string format_complex(Complex z) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

/// Matrix JSON: {"dim": n, "re": [[...]], "im": [[...]]} with n x n finite
/// real entries in both parts.
inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im"))
        raise(Errc::bad_matrix, "matrix JSON needs dim, re, im");
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1)
        raise(Errc::bad_matrix, "dim must be a positive integer");
    const std::size_t n = j["dim"].get<std::size_t>();

    auto read_part = [&](const char* key, std::vector<std::vector<double>>& out) {
        const auto& part = j[key];
        if (!part.is_array() || part.size() != n)
            raise(Errc::bad_matrix, std::string(key) + " must be an n x n array");
        out.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& row = part[i];
            if (!row.is_array() || row.size() != n)
                raise(Errc::bad_matrix, std::string(key) + " must be an n x n array");
            out[i].resize(n);
            for (std::size_t k = 0; k < n; ++k) {
                if (!row[k].is_number())
                    raise(Errc::bad_matrix, "matrix entries must be numbers");
                const double v = row[k].get<double>();
                if (!std::isfinite(v)) raise(Errc::bad_matrix, "matrix entries must be finite");
                out[i][k] = v;
            }
        }
    };

    std::vector<std::vector<double>> re, im;
    read_part("re", re);
    read_part("im", im);
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) m(i, k) = Complex(re[i][k], im[i][k]);
    return m;
}

inline ComplexMatrix parse_matrix(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) raise(Errc::bad_matrix, "matrix file is not valid JSON");
    return matrix_from_json(j);
}

inline ComplexMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::bad_matrix, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_matrix(ss.str());
}

inline nlohmann::ordered_json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::ordered_json j;
    j["dim"] = m.dim();
    auto part = [&](auto pick) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < m.dim(); ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(pick(m(i, k)));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    j["re"] = part([](Complex z) { return z.real(); });
    j["im"] = part([](Complex z) { return z.imag(); });
    return j;
}

/// Boundary samples as CSV: theta, re, im, support_value.
inline void write_range_csv(std::ostream& os, const std::vector<RangeSample>& samples) {
    os << "theta,re,im,support_value\n";
    for (const auto& s : samples)
        os << format_number(s.theta) << ',' << format_number(s.boundary_point.real()) << ','
           << format_number(s.boundary_point.imag()) << ',' << format_number(s.support_value)
           << '\n';
}

} // namespace tenrad
