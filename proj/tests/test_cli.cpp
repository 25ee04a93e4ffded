#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "support/test_support.hpp"
#include "tenrad/matrix_io.hpp"

// process-level tests of the command line tool
namespace {

const std::string kCli = TENRAD_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string out_file = "/tmp/tenrad_cli_test_out.txt";
    const std::string cmd = kCli + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, ss.str()};
}

std::string write_matrix(const std::string& name, const tenrad::ComplexMatrix& m) {
    const std::string path = "/tmp/tenrad_cli_" + name + ".json";
    std::ofstream out(path);
    out << tenrad::matrix_to_json(m).dump() << "\n";
    return path;
}

std::string first_line(const std::string& s) {
    return s.substr(0, s.find('\n'));
}

} // namespace

TEST_CASE("cli radius on the nilpotent prints 0.5") {
    const auto n = write_matrix("n", tts::mat_n());
    const auto r = run("radius " + n);
    REQUIRE(r.exit_code == 0);
    REQUIRE(first_line(r.output) == "0.5");
    REQUIRE(r.output.find("certificate =") != std::string::npos);
}

TEST_CASE("cli crawford on diag(1,2) prints 1") {
    const auto d = write_matrix("d12", tts::diag({1.0, 2.0}));
    const auto r = run("crawford " + d);
    REQUIRE(r.exit_code == 0);
    REQUIRE(first_line(r.output) == "1");
}

TEST_CASE("cli dist on diag(0,1) reports the Chebyshev center") {
    const auto d = write_matrix("d", tts::mat_d());
    const auto r = run("dist " + d);
    REQUIRE(r.exit_code == 0);
    REQUIRE(first_line(r.output).rfind("0.5 at lambda=0.5", 0) == 0);
}

TEST_CASE("cli bounds exits 0 on clean pairs") {
    const auto n = write_matrix("n", tts::mat_n());
    const auto r = run("bounds " + n + " " + n);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("CLASSIC_NORM") != std::string::npos);
    REQUIRE(r.output.find("CRAWFORD_GAP") != std::string::npos);

    const auto rj = run("bounds " + n + " " + n + " --format json");
    REQUIRE(rj.exit_code == 0);
    REQUIRE(rj.output.find("\"id\": \"CLASSIC_NORM\"") != std::string::npos);
}

TEST_CASE("cli rejects malformed JSON with exit 2") {
    const std::string path = "/tmp/tenrad_cli_bad.json";
    std::ofstream(path) << "{ not json";
    for (const std::string cmd : {"radius ", "crawford ", "dist "}) {
        const auto r = run(cmd + path);
        REQUIRE(r.exit_code == 2);
    }
    const auto rb = run("bounds " + path + " " + path);
    REQUIRE(rb.exit_code == 2);
}

TEST_CASE("cli usage errors exit 2") {
    REQUIRE(run("radius").exit_code == 2);                 // missing argument
    REQUIRE(run("no_such_command").exit_code == 2);        // unknown subcommand
    const auto n = write_matrix("n", tts::mat_n());
    REQUIRE(run("radius " + n + " --no-such-flag").exit_code == 2);
    REQUIRE(run("range " + n + " --points 2").exit_code == 2);
    REQUIRE(run("equality " + n + " " + n + " --grid 3").exit_code == 2);
    REQUIRE(run("radius " + n + " --tol -1").exit_code == 2);
    REQUIRE(run("verify --trials 0").exit_code == 2);
    REQUIRE(run("verify --ensembles nonsense").exit_code == 2);
}

TEST_CASE("cli range writes the boundary CSV") {
    const auto n = write_matrix("n", tts::mat_n());
    const auto r = run("range " + n + " --points 8");
    REQUIRE(r.exit_code == 0);
    REQUIRE(first_line(r.output) == "theta,re,im,support_value");

    const auto rio = run("range " + n + " --points 8 --out /no/such/dir/out.csv");
    REQUIRE(rio.exit_code == 4);
}

TEST_CASE("cli equality distinguishes the half case") {
    const auto n = write_matrix("n", tts::mat_n());
    const auto d = write_matrix("d", tts::mat_d());
    REQUIRE(run("equality " + n + " " + n + " --which half --grid 90").exit_code == 0);
    REQUIRE(run("equality " + d + " " + d + " --which half --grid 90").exit_code == 1);
    REQUIRE(run("equality " + n + " " + n + " --which quarter --grid 90").exit_code == 0);
}

TEST_CASE("cli verify produces identical diffable reports across runs and job counts") {
    const std::string base =
        "verify --trials 6 --dims 2,3 --seed 20240817 --ensembles "
        "ginibre:ginibre,square_zero:normal --grid 60 --format csv --out ";
    const auto r1 = run(base + "/tmp/tenrad_cli_v1.csv");
    REQUIRE(r1.exit_code == 0);
    const auto r2 = run(base + "/tmp/tenrad_cli_v2.csv");
    REQUIRE(r2.exit_code == 0);
    const auto r3 = run(base + "/tmp/tenrad_cli_v3.csv --jobs 3");
    REQUIRE(r3.exit_code == 0);

    auto slurp = [](const std::string& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = slurp("/tmp/tenrad_cli_v1.csv");
    REQUIRE_FALSE(a.empty());
    REQUIRE(a == slurp("/tmp/tenrad_cli_v2.csv"));
    REQUIRE(a == slurp("/tmp/tenrad_cli_v3.csv"));
}
