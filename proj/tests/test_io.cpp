#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>

#include "support/test_support.hpp"
#include "tenrad/matrix_io.hpp"

using namespace tenrad;
using tts::TestRng;

TEST_CASE("matrix JSON round-trip") {
    TestRng rng(81);
    const ComplexMatrix a = rng.matrix(4);
    const ComplexMatrix back = matrix_from_json(nlohmann::json::parse(matrix_to_json(a).dump()));
    REQUIRE(back == a);
}

TEST_CASE("matrix JSON parses the documented shape") {
    const ComplexMatrix m =
        parse_matrix(R"({"dim": 2, "re": [[0, 1], [0, 0]], "im": [[0, 0], [0, 0]]})");
    REQUIRE(m == tts::mat_n());
}

TEST_CASE("matrix JSON rejects malformed input") {
    REQUIRE_THROWS_AS(parse_matrix("not json"), Error);
    REQUIRE_THROWS_AS(parse_matrix(R"({"dim": 2, "re": [[0, 1]], "im": [[0, 0], [0, 0]]})"),
                      Error);  // non-square re
    REQUIRE_THROWS_AS(parse_matrix(R"({"dim": 0, "re": [], "im": []})"), Error);
    REQUIRE_THROWS_AS(parse_matrix(R"({"dim": 1, "re": [[1]], "im": [["x"]]})"), Error);
    REQUIRE_THROWS_AS(parse_matrix(R"({"re": [[1]], "im": [[0]]})"), Error);
    REQUIRE_THROWS_AS(
        parse_matrix(R"({"dim": 1, "re": [[1e999]], "im": [[0]]})"),
        Error);  // overflows to infinity
}

TEST_CASE("number formatting is plain and 12 significant digits") {
    REQUIRE(format_number(0.5) == "0.5");
    REQUIRE(format_number(1.0) == "1");
    REQUIRE(format_number(1.0 / 3.0) == "0.333333333333");
    REQUIRE(format_complex(Complex(0.5, 0.0)) == "0.5+0i");
    REQUIRE(format_complex(Complex(0.0, -0.25)) == "0-0.25i");
}

TEST_CASE("boundary CSV has the documented header and rows") {
    const auto samples = range_boundary(tts::mat_d(), 4);
    std::ostringstream ss;
    write_range_csv(ss, samples);
    std::istringstream in(ss.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    REQUIRE(line == "theta,re,im,support_value");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        REQUIRE(std::count(line.begin(), line.end(), ',') == 3);
    }
    REQUIRE(rows == 4);
}
