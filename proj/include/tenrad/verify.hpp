#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tenrad/bounds.hpp"
#include "tenrad/generators.hpp"
#include "tenrad/matrix_io.hpp"

namespace tenrad {

struct VerifyConfig {
    std::size_t trials = 100;
    std::vector<std::size_t> dims = {2, 3, 4, 5, 6};
    std::vector<std::pair<Ensemble, Ensemble>> ensembles;  // empty: all kind pairs
    std::uint64_t master_seed = 42;
    double tol_factor = 1e-7;  // per-pair tolerance: tol_factor * (1 + ||a||^2 ||b||^2)
    std::size_t equality_grid = 360;
    std::size_t jobs = 1;
    std::size_t kron_cap = kDefaultKronCap;
};

inline std::vector<std::pair<Ensemble, Ensemble>> all_ensemble_pairs() {
    const std::array<EnsembleKind, 5> kinds = {EnsembleKind::ginibre, EnsembleKind::normal,
                                               EnsembleKind::selfadjoint, EnsembleKind::unitary,
                                               EnsembleKind::square_zero};
    std::vector<std::pair<Ensemble, Ensemble>> out;
    out.reserve(kinds.size() * kinds.size());
    for (EnsembleKind a : kinds)
        for (EnsembleKind b : kinds) out.push_back({Ensemble{a}, Ensemble{b}});
    return out;
}

struct TrialEquality {
    EqualityReport report;
    bool expected_consistent = false;
};

struct TrialRecord {
    std::size_t trial_index = 0;
    Ensemble ensemble_a, ensemble_b;
    std::size_t dim_a = 0, dim_b = 0;
    std::uint64_t seed_a = 0, seed_b = 0;
    double tol = 0.0;
    std::vector<BoundReport> reports;
    std::vector<TrialEquality> equality;
    std::optional<BoundId> tightest_lower, tightest_upper;
    bool converse_half_candidate = false;
    bool converse_quarter_candidate = false;
    double wall_time_ms = 0.0;  // excluded from the diffable report section
    std::optional<std::string> error;
};

struct BoundStats {
    std::size_t evaluated = 0, held = 0, violated = 0, errored = 0;
    std::size_t tightest_lower = 0, tightest_upper = 0;
    double min_slack = 1e308;
};

struct VerifySummary {
    std::size_t trials = 0;
    std::size_t bound_reports = 0;
    std::size_t violations = 0;         // failed bounds + failed expected equalities
    std::size_t trial_errors = 0;       // trials with a numerical failure
    std::size_t equality_checks = 0;
    std::size_t equality_failures = 0;  // expected consistent but was not
    std::size_t converse_half_candidates = 0;
    std::size_t converse_quarter_candidates = 0;
    std::vector<std::size_t> converse_trials;  // first few, for inspection
    std::array<BoundStats, 11> per_bound{};
};

struct VerifyResult {
    VerifyConfig config;
    std::vector<TrialRecord> records;
    VerifySummary summary;
};

namespace detail {

inline bool is_square_zero_kind(const Ensemble& e) { return e.kind == EnsembleKind::square_zero; }

inline bool is_normal_kind(const Ensemble& e) {
    return e.kind == EnsembleKind::normal || e.kind == EnsembleKind::selfadjoint ||
           e.kind == EnsembleKind::unitary;
}

// The equality propositions are exercised when the drawn pair satisfies an
// equality hypothesis by construction: a^2 = 0 with b normal (either order),
// or both square-zero.
inline bool matches_equality_hypothesis(const Ensemble& a, const Ensemble& b) {
    return (is_square_zero_kind(a) && (is_normal_kind(b) || is_square_zero_kind(b))) ||
           (is_square_zero_kind(b) && is_normal_kind(a));
}

inline TrialRecord run_trial(const VerifyConfig& cfg, std::size_t index) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& pairs = cfg.ensembles;
    TrialRecord rec;
    rec.trial_index = index;
    const auto& [ea, eb] = pairs[index % pairs.size()];
    rec.ensemble_a = ea;
    rec.ensemble_b = eb;

    SplitMix64 rng(split_stream(cfg.master_seed, index));
    auto pick_dim = [&](const Ensemble& e) {
        std::size_t d = cfg.dims[rng.next() % cfg.dims.size()];
        if (is_square_zero_kind(e) && d < 2) d = 2;
        return d;
    };
    rec.dim_a = pick_dim(ea);
    rec.dim_b = pick_dim(eb);
    rec.seed_a = rng.next();
    rec.seed_b = rng.next();

    try {
        const ComplexMatrix a = generate(ea, {rec.seed_a, rec.dim_a});
        const ComplexMatrix b = generate(eb, {rec.seed_b, rec.dim_b});
        const double na = operator_norm(a), nb = operator_norm(b);
        rec.tol = cfg.tol_factor * (1.0 + na * na * nb * nb);

        const OperatorPair p{a, b};
        auto all = eval_all(p, rec.tol);
        rec.reports = std::move(all.reports);
        rec.tightest_lower = all.tightest_lower;
        rec.tightest_upper = all.tightest_upper;

        if (matches_equality_hypothesis(ea, eb)) {
            rec.equality.push_back({check_equality_half(p, cfg.equality_grid, rec.tol), true});
            rec.equality.push_back({check_equality_quarter(p, cfg.equality_grid, rec.tol), true});
        }

        // candidate counterexamples for the one-directional remarks: rotated
        // norms agree although the corresponding radius equality fails
        double norm_plus_i = 0.0, norm_minus_i = 0.0, half_norm = 0.0, quarter_gram = 0.0;
        double w = 0.0;
        bool have_rot = false, have_half = false, have_quarter = false;
        for (const auto& r : rec.reports) {
            if (r.error) continue;
            if (r.id == BoundId::rot_normdiff_lower) {
                w = r.center;
                for (const auto& t : r.info_terms) {
                    if (t.name == "norm_sum_i") norm_plus_i = t.value;
                    if (t.name == "norm_diff_i") norm_minus_i = t.value;
                }
                have_rot = true;
            }
            if (r.id == BoundId::classic_norm && !r.lower_terms.empty()) {
                half_norm = r.lower_terms.front().value;
                have_half = true;
            }
            if (r.id == BoundId::sq_normdiff_lower && !r.lower_terms.empty()) {
                // quarter_gram_plus_sq_diff reduces to ||K1||/4 when the
                // squared rotated norms agree, which is the candidate case
                quarter_gram = r.lower_terms.front().value;
                have_quarter = true;
            }
        }
        if (have_rot && have_half && std::abs(norm_plus_i - norm_minus_i) <= rec.tol &&
            std::abs(w - half_norm) > 10.0 * rec.tol)
            rec.converse_half_candidate = true;
        if (have_rot && have_quarter && std::abs(norm_plus_i - norm_minus_i) <= rec.tol &&
            std::abs(w * w - quarter_gram) > 10.0 * rec.tol)
            rec.converse_quarter_candidate = true;
    } catch (const Error& e) {
        rec.error = e.what();
    } catch (const std::exception& e) {
        rec.error = e.what();
    }

    rec.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

} // namespace detail

/// Run the randomized verification harness. Trials are independent and fully
/// determined by (master_seed, trial_index), so any worker count produces the
/// same records in the same order.
inline VerifyResult run_verify(VerifyConfig cfg) {
    if (cfg.trials < 1) raise(Errc::bad_argument, "verify needs at least one trial");
    if (cfg.dims.empty()) raise(Errc::bad_argument, "verify needs at least one dimension");
    for (std::size_t d : cfg.dims) {
        if (d < 1) raise(Errc::bad_argument, "dimensions must be positive");
        if (d * d > cfg.kron_cap)
            raise(Errc::size_limit, "dimension exceeds the Kronecker cap");
    }
    if (!(cfg.tol_factor > 0.0)) raise(Errc::invalid_tol, "tolerance factor must be positive");
    if (cfg.ensembles.empty()) cfg.ensembles = all_ensemble_pairs();
    if (cfg.jobs < 1) cfg.jobs = 1;

    VerifyResult out;
    out.config = cfg;
    out.records.resize(cfg.trials);

    if (cfg.jobs == 1) {
        for (std::size_t i = 0; i < cfg.trials; ++i)
            out.records[i] = detail::run_trial(cfg, i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        const std::size_t nw = std::min(cfg.jobs, cfg.trials);
        workers.reserve(nw);
        for (std::size_t wkr = 0; wkr < nw; ++wkr)
            workers.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= cfg.trials) return;
                    out.records[i] = detail::run_trial(cfg, i);
                }
            });
        for (auto& t : workers) t.join();
    }

    VerifySummary& s = out.summary;
    s.trials = cfg.trials;
    for (const auto& rec : out.records) {
        if (rec.error) {
            ++s.trial_errors;
            continue;
        }
        for (const auto& r : rec.reports) {
            auto& pb = s.per_bound[static_cast<std::size_t>(r.id)];
            ++pb.evaluated;
            ++s.bound_reports;
            if (r.error) {
                ++pb.errored;
            } else if (r.holds) {
                ++pb.held;
                pb.min_slack = std::min(pb.min_slack, r.min_slack);
            } else {
                ++pb.violated;
                ++s.violations;
                pb.min_slack = std::min(pb.min_slack, r.min_slack);
            }
        }
        if (rec.tightest_lower)
            ++s.per_bound[static_cast<std::size_t>(*rec.tightest_lower)].tightest_lower;
        if (rec.tightest_upper)
            ++s.per_bound[static_cast<std::size_t>(*rec.tightest_upper)].tightest_upper;
        for (const auto& eq : rec.equality) {
            ++s.equality_checks;
            if (eq.expected_consistent && !eq.report.consistent) {
                ++s.equality_failures;
                ++s.violations;
            }
        }
        if (rec.converse_half_candidate || rec.converse_quarter_candidate) {
            if (rec.converse_half_candidate) ++s.converse_half_candidates;
            if (rec.converse_quarter_candidate) ++s.converse_quarter_candidates;
            if (s.converse_trials.size() < 10) s.converse_trials.push_back(rec.trial_index);
        }
        const bool any_report_error =
            std::any_of(rec.reports.begin(), rec.reports.end(),
                        [](const BoundReport& r) { return r.error.has_value(); });
        if (any_report_error) ++s.trial_errors;
    }
    return out;
}

// --- report serialization ---

inline const char* equality_kind_name(EqualityKind::Kind k) {
    return k == EqualityKind::half_norm ? "EQUALITY_HALF" : "EQUALITY_QUARTER";
}

/// Fixed CSV columns; the leading comment carries the format version. No
/// timing data lands in the CSV, so the whole file is diffable.
inline void write_verify_csv(std::ostream& os, const VerifyResult& res) {
    os << "# format=tenrad-verify-csv-v1\n";
    os << "trial,ensemble_a,ensemble_b,dim_a,dim_b,bound_id,center,min_slack,holds\n";
    for (const auto& rec : res.records) {
        const std::string prefix = std::to_string(rec.trial_index) + ',' +
                                   ensemble_name(rec.ensemble_a) + ',' +
                                   ensemble_name(rec.ensemble_b) + ',' +
                                   std::to_string(rec.dim_a) + ',' + std::to_string(rec.dim_b) +
                                   ',';
        if (rec.error) {
            os << prefix << "TRIAL_ERROR,nan,nan,0\n";
            continue;
        }
        for (const auto& r : rec.reports) {
            if (r.error) {
                os << prefix << bound_id_name(r.id) << ",nan,nan,0\n";
            } else {
                os << prefix << bound_id_name(r.id) << ',' << format_number(r.center) << ','
                   << format_number(r.min_slack) << ',' << (r.holds ? 1 : 0) << '\n';
            }
        }
        for (const auto& eq : rec.equality) {
            const double dev =
                std::max(eq.report.max_deviation_plus, eq.report.max_deviation_minus);
            os << prefix << equality_kind_name(eq.report.kind) << ','
               << format_number(eq.report.reference) << ',' << format_number(-dev) << ','
               << (eq.report.consistent ? 1 : 0) << '\n';
        }
    }
}

inline nlohmann::ordered_json bound_report_to_json(const BoundReport& r) {
    nlohmann::ordered_json j;
    j["id"] = bound_id_name(r.id);
    if (r.error) {
        j["error"] = *r.error;
        return j;
    }
    j["center"] = r.center;
    j["center_is_squared"] = r.center_is_squared;
    auto terms = [](const std::vector<BoundTerm>& ts) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const auto& t : ts) a.push_back({{"name", t.name}, {"value", t.value}});
        return a;
    };
    j["lower_terms"] = terms(r.lower_terms);
    j["upper_terms"] = terms(r.upper_terms);
    j["info_terms"] = terms(r.info_terms);
    j["holds"] = r.holds;
    j["min_slack"] = r.min_slack;
    j["tol"] = r.tol;
    return j;
}

inline nlohmann::ordered_json equality_report_to_json(const EqualityReport& r) {
    nlohmann::ordered_json j;
    j["kind"] = equality_kind_name(r.kind);
    j["grid_size"] = r.grid_size;
    j["reference"] = r.reference;
    j["max_deviation_plus"] = r.max_deviation_plus;
    j["max_deviation_minus"] = r.max_deviation_minus;
    j["consistent"] = r.consistent;
    return j;
}

/// JSON mirror of the CSV with full per-bound detail. The "timing" object is
/// the only non-deterministic section; strip it before diffing reports.
inline nlohmann::ordered_json verify_to_json(const VerifyResult& res) {
    nlohmann::ordered_json j;
    j["format_version"] = "tenrad-verify-json-v1";

    nlohmann::ordered_json cfg;
    cfg["trials"] = res.config.trials;
    cfg["dims"] = res.config.dims;
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const auto& [a, b] : res.config.ensembles)
        pairs.push_back(ensemble_name(a) + ":" + ensemble_name(b));
    cfg["ensembles"] = std::move(pairs);
    cfg["master_seed"] = res.config.master_seed;
    cfg["tol_factor"] = res.config.tol_factor;
    cfg["equality_grid"] = res.config.equality_grid;
    j["config"] = std::move(cfg);

    nlohmann::ordered_json trials = nlohmann::ordered_json::array();
    for (const auto& rec : res.records) {
        nlohmann::ordered_json t;
        t["trial"] = rec.trial_index;
        t["ensemble_a"] = ensemble_name(rec.ensemble_a);
        t["ensemble_b"] = ensemble_name(rec.ensemble_b);
        t["dim_a"] = rec.dim_a;
        t["dim_b"] = rec.dim_b;
        t["seed_a"] = rec.seed_a;
        t["seed_b"] = rec.seed_b;
        if (rec.error) {
            t["error"] = *rec.error;
            trials.push_back(std::move(t));
            continue;
        }
        t["tol"] = rec.tol;
        nlohmann::ordered_json reports = nlohmann::ordered_json::array();
        for (const auto& r : rec.reports) reports.push_back(bound_report_to_json(r));
        t["bounds"] = std::move(reports);
        if (!rec.equality.empty()) {
            nlohmann::ordered_json eqs = nlohmann::ordered_json::array();
            for (const auto& eq : rec.equality) {
                auto ej = equality_report_to_json(eq.report);
                ej["expected_consistent"] = eq.expected_consistent;
                eqs.push_back(std::move(ej));
            }
            t["equality"] = std::move(eqs);
        }
        if (rec.tightest_lower) t["tightest_lower"] = bound_id_name(*rec.tightest_lower);
        if (rec.tightest_upper) t["tightest_upper"] = bound_id_name(*rec.tightest_upper);
        if (rec.converse_half_candidate) t["converse_half_candidate"] = true;
        if (rec.converse_quarter_candidate) t["converse_quarter_candidate"] = true;
        trials.push_back(std::move(t));
    }
    j["trials"] = std::move(trials);

    nlohmann::ordered_json sm;
    sm["trials"] = res.summary.trials;
    sm["bound_reports"] = res.summary.bound_reports;
    sm["violations"] = res.summary.violations;
    sm["trial_errors"] = res.summary.trial_errors;
    sm["equality_checks"] = res.summary.equality_checks;
    sm["equality_failures"] = res.summary.equality_failures;
    sm["converse_half_candidates"] = res.summary.converse_half_candidates;
    sm["converse_quarter_candidates"] = res.summary.converse_quarter_candidates;
    sm["converse_trials"] = res.summary.converse_trials;
    nlohmann::ordered_json per = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < kAllBoundIds.size(); ++k) {
        const auto& pb = res.summary.per_bound[k];
        nlohmann::ordered_json e;
        e["id"] = bound_id_name(kAllBoundIds[k]);
        e["evaluated"] = pb.evaluated;
        e["held"] = pb.held;
        e["violated"] = pb.violated;
        e["errored"] = pb.errored;
        e["tightest_lower"] = pb.tightest_lower;
        e["tightest_upper"] = pb.tightest_upper;
        if (pb.evaluated > pb.errored) e["min_slack"] = pb.min_slack;
        per.push_back(std::move(e));
    }
    sm["per_bound"] = std::move(per);
    j["summary"] = std::move(sm);

    nlohmann::ordered_json timing;
    double total = 0.0;
    nlohmann::ordered_json per_trial = nlohmann::ordered_json::array();
    for (const auto& rec : res.records) {
        total += rec.wall_time_ms;
        per_trial.push_back(rec.wall_time_ms);
    }
    timing["total_ms"] = total;
    timing["per_trial_ms"] = std::move(per_trial);
    j["timing"] = std::move(timing);
    return j;
}

} // namespace tenrad
