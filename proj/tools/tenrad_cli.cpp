// tenrad: numerical radius toolkit for tensor products of operators.
//
// Subcommands: radius, crawford, dist, bounds, range, equality, verify.
// Exit codes: 0 success, 1 a checked inequality or equality failed,
// 2 usage or input parse error, 3 numerical failure, 4 output I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tenrad/tenrad.hpp"

namespace {

using namespace tenrad;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Errc::no_convergence:
        case Errc::budget_exceeded:
        case Errc::not_psd:
        case Errc::not_unit:
            return kExitNumeric;
        default:
            return kExitUsage;
    }
}

std::string format_certificate(const ComplexVector& x) {
    std::string s = "[";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i > 0) s += ", ";
        s += format_complex(x[i]);
    }
    return s + "]";
}

std::optional<Ensemble> parse_ensemble(const std::string& name) {
    std::string base = name;
    double factor = 1.0;
    if (const auto star = name.find('*'); star != std::string::npos) {
        base = name.substr(0, star);
        try {
            std::size_t used = 0;
            factor = std::stod(name.substr(star + 1), &used);
            if (used != name.size() - star - 1) return std::nullopt;
        } catch (...) {
            return std::nullopt;
        }
    }
    for (EnsembleKind k : {EnsembleKind::ginibre, EnsembleKind::normal, EnsembleKind::selfadjoint,
                           EnsembleKind::unitary, EnsembleKind::square_zero})
        if (base == ensemble_kind_name(k)) return Ensemble{k, factor};
    return std::nullopt;
}

bool parse_ensemble_pairs(const std::string& spec,
                          std::vector<std::pair<Ensemble, Ensemble>>& out) {
    if (spec == "all") return true;  // leave empty: run_verify fills in all pairs
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) return false;
        const auto a = parse_ensemble(item.substr(0, colon));
        const auto b = parse_ensemble(item.substr(colon + 1));
        if (!a || !b) return false;
        out.push_back({*a, *b});
    }
    return !out.empty();
}

void print_bound_report_text(std::ostream& os, const BoundReport& r) {
    os << bound_id_name(r.id);
    if (r.error) {
        os << "  ERROR " << *r.error << "\n";
        return;
    }
    os << "  center" << (r.center_is_squared ? "(squared)" : "") << " = "
       << format_number(r.center) << "  holds = " << (r.holds ? "yes" : "NO")
       << "  min_slack = " << format_number(r.min_slack) << "\n";
    for (const auto& t : r.lower_terms)
        os << "    lower  " << t.name << " = " << format_number(t.value) << "\n";
    for (const auto& t : r.upper_terms)
        os << "    upper  " << t.name << " = " << format_number(t.value) << "\n";
    for (const auto& t : r.info_terms)
        os << "    info   " << t.name << " = " << format_number(t.value) << "\n";
}

void write_bounds_csv(std::ostream& os, const std::vector<BoundReport>& reports) {
    os << "# format=tenrad-bounds-csv-v1\n";
    for (const auto& r : reports) {
        if (r.error) {
            os << bound_id_name(r.id) << ",error," << *r.error << "\n";
            continue;
        }
        os << bound_id_name(r.id) << ',' << format_number(r.center);
        for (const auto& t : r.lower_terms) os << ',' << t.name << ',' << format_number(t.value);
        for (const auto& t : r.upper_terms) os << ',' << t.name << ',' << format_number(t.value);
        for (const auto& t : r.info_terms) os << ',' << t.name << ',' << format_number(t.value);
        os << ',' << (r.holds ? 1 : 0) << ',' << format_number(r.min_slack) << '\n';
    }
}

nlohmann::ordered_json bounds_to_json(const std::vector<BoundReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(bound_report_to_json(r));
    return arr;
}

int write_text_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return kExitOk;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output file " << path << "\n";
        return kExitIo;
    }
    out << content;
    if (!out.good()) {
        std::cerr << "failed writing " << path << "\n";
        return kExitIo;
    }
    return kExitOk;
}

int cmd_radius(const std::string& path, double tol) {
    const ComplexMatrix a = load_matrix(path);
    const auto r = numerical_radius(a, tol);
    std::cout << format_number(r.value) << "\n";
    std::cout << "theta_star = " << format_number(r.theta_star) << "\n";
    std::cout << "certificate = " << format_certificate(r.certificate) << "\n";
    std::cout << "evaluations = " << r.evaluations << "\n";
    return kExitOk;
}

int cmd_crawford(const std::string& path, double tol) {
    const ComplexMatrix a = load_matrix(path);
    const auto r = crawford_number(a, tol);
    std::cout << format_number(r.value) << "\n";
    std::cout << "theta_star = " << format_number(r.theta_star) << "\n";
    std::cout << "attained_inside = " << (r.attained_inside ? "true" : "false") << "\n";
    return kExitOk;
}

int cmd_dist(const std::string& path, double tol) {
    const ComplexMatrix a = load_matrix(path);
    const auto r = distance_to_scalars(a, tol);
    std::cout << format_number(r.value) << " at lambda=" << format_complex(r.lambda_star) << "\n";
    std::cout << "iterations = " << r.iterations << "\n";
    std::cout << "box_radius = " << format_number(r.box_radius) << "\n";
    return kExitOk;
}

int cmd_bounds(const std::string& path_a, const std::string& path_b, double tol,
               const std::string& format, const std::string& out_path) {
    const OperatorPair p{load_matrix(path_a), load_matrix(path_b)};
    const auto all = eval_all(p, tol);

    std::string content;
    if (format == "json") {
        content = bounds_to_json(all.reports).dump(2) + "\n";
    } else if (format == "csv") {
        std::ostringstream ss;
        write_bounds_csv(ss, all.reports);
        content = ss.str();
    } else {
        std::ostringstream ss;
        for (const auto& r : all.reports) print_bound_report_text(ss, r);
        if (all.tightest_lower)
            ss << "tightest lower bound: " << bound_id_name(*all.tightest_lower) << "\n";
        if (all.tightest_upper)
            ss << "tightest upper bound: " << bound_id_name(*all.tightest_upper) << "\n";
        content = ss.str();
    }
    const int io = write_text_output(out_path, content);
    if (io != kExitOk) return io;

    for (const auto& r : all.reports)
        if (r.error || !r.holds) {
            std::cerr << "bound " << bound_id_name(r.id)
                      << (r.error ? " errored" : " FAILED — this falsifies a proven inequality")
                      << "\n";
            return kExitViolation;
        }
    return kExitOk;
}

int cmd_range(const std::string& path, std::size_t points, const std::string& out_path) {
    const ComplexMatrix a = load_matrix(path);
    const auto samples = range_boundary(a, points);
    std::ostringstream ss;
    write_range_csv(ss, samples);
    return write_text_output(out_path, ss.str());
}

int cmd_equality(const std::string& path_a, const std::string& path_b, const std::string& which,
                 std::size_t grid, double tol) {
    const OperatorPair p{load_matrix(path_a), load_matrix(path_b)};
    const EqualityReport r = which == "half" ? check_equality_half(p, grid, tol)
                                             : check_equality_quarter(p, grid, tol);
    std::cout << "kind = " << equality_kind_name(r.kind) << "\n";
    std::cout << "grid = " << r.grid_size << "\n";
    std::cout << "reference = " << format_number(r.reference) << "\n";
    std::cout << "max_deviation_plus = " << format_number(r.max_deviation_plus) << "\n";
    std::cout << "max_deviation_minus = " << format_number(r.max_deviation_minus) << "\n";
    std::cout << "consistent = " << (r.consistent ? "true" : "false") << "\n";
    return r.consistent ? kExitOk : kExitViolation;
}

int cmd_verify(const VerifyConfig& cfg, const std::string& out_path, const std::string& format) {
    const VerifyResult res = run_verify(cfg);

    std::string content;
    if (format == "csv") {
        std::ostringstream ss;
        write_verify_csv(ss, res);
        content = ss.str();
    } else {
        content = verify_to_json(res).dump(2) + "\n";
    }
    const int io = write_text_output(out_path, content);
    if (io != kExitOk) return io;

    const auto& s = res.summary;
    std::cout << "trials = " << s.trials << "\n";
    std::cout << "bound_reports = " << s.bound_reports << "\n";
    std::cout << "violations = " << s.violations << "\n";
    std::cout << "equality_checks = " << s.equality_checks << "\n";
    std::cout << "trial_errors = " << s.trial_errors << "\n";
    std::cout << "converse_candidates = " << s.converse_half_candidates << " half, "
              << s.converse_quarter_candidates << " quarter\n";
    for (std::size_t k = 0; k < kAllBoundIds.size(); ++k) {
        const auto& pb = s.per_bound[k];
        if (pb.evaluated == 0) continue;
        std::cout << "  " << bound_id_name(kAllBoundIds[k]) << ": held " << pb.held << "/"
                  << pb.evaluated << ", tightest lower " << pb.tightest_lower << ", tightest upper "
                  << pb.tightest_upper << "\n";
    }

    if (s.violations > 0) {
        std::cerr << "violations found — a proven inequality failed numerically\n";
        return kExitViolation;
    }
    if (100 * s.trial_errors > s.trials) {
        std::cerr << "more than 1% of trials failed numerically\n";
        return kExitNumeric;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical radius toolkit for tensor products of operators"};
    app.require_subcommand(1);

    std::string path_a, path_b, out_path, format = "text", which = "half", ensembles_spec = "all";
    std::string dims_spec = "2,3,4,5,6";
    double tol = kDefaultRadiusTol;
    std::size_t points = kDefaultBoundaryPoints, grid = 360;
    VerifyConfig vcfg;
    vcfg.jobs = 1;

    auto* radius = app.add_subcommand("radius", "numerical radius of a matrix");
    radius->add_option("matrix", path_a, "matrix JSON file")->required();
    radius->add_option("--tol", tol, "value tolerance");

    auto* crawford = app.add_subcommand("crawford", "crawford number of a matrix");
    crawford->add_option("matrix", path_a, "matrix JSON file")->required();
    crawford->add_option("--tol", tol, "value tolerance");

    auto* dist = app.add_subcommand("dist", "numerical radius distance to the scalar operators");
    dist->add_option("matrix", path_a, "matrix JSON file")->required();
    dist->add_option("--tol", tol, "value tolerance");

    auto* bounds = app.add_subcommand("bounds", "evaluate every tensor-radius bound for a pair");
    bounds->add_option("matrix_a", path_a, "left factor JSON file")->required();
    bounds->add_option("matrix_b", path_b, "right factor JSON file")->required();
    bounds->add_option("--tol", tol, "check tolerance");
    bounds->add_option("--format", format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    bounds->add_option("--out", out_path, "output file (default stdout)");

    auto* range = app.add_subcommand("range", "numerical range boundary samples as CSV");
    range->add_option("matrix", path_a, "matrix JSON file")->required();
    range->add_option("--points", points, "number of boundary samples (>= 3)");
    range->add_option("--out", out_path, "output file (default stdout)");

    auto* equality = app.add_subcommand("equality", "rotated-norm equality characterization");
    equality->add_option("matrix_a", path_a, "left factor JSON file")->required();
    equality->add_option("matrix_b", path_b, "right factor JSON file")->required();
    equality->add_option("--which", which, "half or quarter")
        ->check(CLI::IsMember({"half", "quarter"}));
    equality->add_option("--grid", grid, "number of angles (>= 4)");
    equality->add_option("--tol", tol, "deviation tolerance");

    auto* verify = app.add_subcommand("verify", "randomized verification harness");
    verify->add_option("--trials", vcfg.trials, "number of trials (>= 1)");
    verify->add_option("--dims", dims_spec, "comma list of dimensions");
    verify->add_option("--ensembles", ensembles_spec,
                       "comma list of a:b ensemble pairs, or 'all'");
    verify->add_option("--seed", vcfg.master_seed, "master seed");
    verify->add_option("--tol", vcfg.tol_factor, "tolerance factor");
    verify->add_option("--grid", vcfg.equality_grid, "equality check grid");
    verify->add_option("--jobs", vcfg.jobs, "worker threads");
    verify->add_option("--out", out_path, "report file (default stdout)");
    std::string verify_format = "json";
    verify->add_option("--format", verify_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*radius) {
            if (!(tol > 0.0)) throw Error(Errc::invalid_tol, "tolerance must be positive");
            return cmd_radius(path_a, tol);
        }
        if (*crawford) {
            if (!(tol > 0.0)) throw Error(Errc::invalid_tol, "tolerance must be positive");
            return cmd_crawford(path_a, tol);
        }
        if (*dist) {
            if (!(tol > 0.0)) throw Error(Errc::invalid_tol, "tolerance must be positive");
            return cmd_dist(path_a, tol);
        }
        if (*bounds) return cmd_bounds(path_a, path_b, tol, format, out_path);
        if (*range) return cmd_range(path_a, points, out_path);
        if (*equality) return cmd_equality(path_a, path_b, which, grid, tol);
        if (*verify) {
            vcfg.dims.clear();
            std::stringstream ss(dims_spec);
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    vcfg.dims.push_back(std::stoul(item));
                } catch (...) {
                    std::cerr << "bad dimension list: " << dims_spec << "\n";
                    return kExitUsage;
                }
            }
            if (!parse_ensemble_pairs(ensembles_spec, vcfg.ensembles)) {
                std::cerr << "bad ensemble list: " << ensembles_spec << "\n";
                return kExitUsage;
            }
            return cmd_verify(vcfg, out_path, verify_format);
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
