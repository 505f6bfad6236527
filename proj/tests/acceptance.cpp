// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Calibrated thresholds come from calibration/baselines.json,
// which is produced by hyperlab_calibrate with seeds disjoint from these.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "hyperlab/cli.hpp"
#include "hyperlab/experiments.hpp"
#include "hyperlab/rng.hpp"

using namespace hyperlab;
using json = nlohmann::json;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double time_limit_seconds;  // 0 means no limit
    std::function<Outcome()> body;
};

const unsigned kThreads = std::max(1u, std::thread::hardware_concurrency());

// Every hitting record produced anywhere in this binary.
std::uint64_t g_trials_seen = 0;
std::uint64_t g_order_violations = 0;

void audit(const std::vector<HittingRecord>& records) {
    for (const auto& r : records) {
        ++g_trials_seen;
        if (r.tau_i > r.tau_c) ++g_order_violations;
    }
}

json load_baselines() {
    std::ifstream in(HYPERLAB_BASELINES);
    if (!in) throw std::runtime_error("cannot read " + std::string(HYPERLAB_BASELINES));
    return json::parse(in);
}

double half_width(double successes, double trials) {
    const auto ci = wilson_interval(static_cast<std::uint64_t>(std::llround(successes)),
                                    static_cast<std::uint64_t>(trials));
    return (ci.high - ci.low) / 2.0;
}

Outcome oracle_equivalence() {
    Rng rng(20'240'601);
    std::uint64_t mismatches = 0, edges_total = 0;
    for (int inst = 0; inst < 1000; ++inst) {
        const auto k = static_cast<std::uint32_t>(3 + rng.below(2));
        const auto j = static_cast<std::uint32_t>(1 + rng.below(k - 1));
        const auto n = static_cast<std::uint32_t>(k + rng.below(12 - k + 1));
        const Params p{n, k, j};
        const std::uint64_t m = rng.below(p.edge_universe() + 1);
        const Hypergraph h = sample_uniform(p, m, rng.next_u64());
        ComponentTracker tracker(p);
        for (const Rank e : h.edge_ranks()) tracker.insert_edge_rank(e);
        if (!(tracker.component_partition() == bfs_j_components(h))) ++mismatches;
        edges_total += m;
    }
    return {mismatches == 0, fmt::format("1000 instances, {} edges in total, {} mismatches", edges_total, mismatches)};
}

Outcome coincidence_trend(const json& base) {
    const std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> series{{1, {16, 32, 64}},
                                                                                   {2, {12, 20, 32}}};
    bool ok = true;
    std::string detail;
    std::uint64_t seed = 1'000;
    for (const auto& [j, ns] : series) {
        const double baseline = base["coincidence"]["k3_j" + std::to_string(j)]["baseline"].get<double>();
        CoincidenceEstimate prev{};
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const auto records = run_hitting_trials(Params{ns[i], 3, j}, 400, seed, kThreads);
            seed += 400;
            audit(records);
            const auto est = summarize_coincidence(records);
            detail += fmt::format("j={} n={}: {:.4f} [{:.4f},{:.4f}]; ", j, ns[i], est.point, est.ci_low, est.ci_high);
            if (i > 0 && est.point < prev.ci_low) ok = false;
            if (i + 1 == ns.size()) {
                const bool above = est.point > baseline - 0.05;
                ok = ok && above;
                detail += fmt::format("baseline {:.4f} - 0.05 {}; ", baseline, above ? "cleared" : "NOT cleared");
            }
            prev = est;
        }
    }
    return {ok, detail};
}

Outcome exact_expectation() {
    const Params p{30, 3, 1};
    bool ok = true;
    std::string detail;
    for (std::uint32_t s = 0; s <= 2; ++s) {
        const auto rep = sample_degree_counts(p, {s, 0.0}, 10'000, 2'000'000 + 10'000 * s, kThreads);
        const double z = (rep.mean - rep.exact_expectation) / rep.std_error;
        ok = ok && std::abs(z) <= 4.0;
        detail += fmt::format("s={}: mean {:.4f} exact {:.4f} z={:+.2f}; ", s, rep.mean, rep.exact_expectation, z);
    }
    return {ok, detail};
}

Outcome poisson_proximity(const json& base) {
    const double baseline = base["poisson_tv"]["baseline"].get<double>();
    const auto rep = sample_degree_counts(Params{40, 3, 1}, {0, 0.0}, 5000, 3'000'000, kThreads);
    const double limit = baseline + 0.02;
    return {rep.tv_to_poisson <= limit,
            fmt::format("TV {:.4f} <= baseline {:.4f} + 0.02 = {:.4f}", rep.tv_to_poisson, baseline, limit)};
}

Outcome threshold_shape() {
    std::vector<double> grid;
    for (int c = -4; c <= 4; ++c) grid.push_back(c);
    const std::uint64_t trials = 500;
    const auto rows = threshold_sweep(Params{60, 3, 1}, grid, trials, 4'000'000, SweepModel::binomial, kThreads);
    bool ok = rows.front().frac_no_isolated <= 0.1 && rows.back().frac_no_isolated >= 0.9;
    std::string detail = fmt::format("no_isolated(-4)={:.3f} no_isolated(+4)={:.3f}; ", rows.front().frac_no_isolated,
                                     rows.back().frac_no_isolated);
    std::uint64_t order_breaks = 0, monotone_breaks = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].frac_connected > rows[i].frac_no_isolated) ++order_breaks;
        if (i == 0) continue;
        auto check = [&](double prev, double next) {
            const double slack = 2.0 * std::max(half_width(prev * trials, trials), half_width(next * trials, trials));
            if (next < prev - slack) ++monotone_breaks;
        };
        check(rows[i - 1].frac_no_isolated, rows[i].frac_no_isolated);
        check(rows[i - 1].frac_connected, rows[i].frac_connected);
    }
    ok = ok && order_breaks == 0 && monotone_breaks == 0;
    detail += fmt::format("rows with connected > no_isolated: {}; monotonicity breaks: {}; columns:", order_breaks,
                          monotone_breaks);
    for (const auto& r : rows) detail += fmt::format(" ({:+.0f}: {:.3f}/{:.3f})", r.c, r.frac_no_isolated, r.frac_connected);
    return {ok, detail};
}

Outcome model_transfer(const json& base) {
    const auto r = model_transfer_check(Params{60, 3, 1}, 0.0, 500, 5'000'000, kThreads);
    return {r.diff_connected <= 0.1,
            fmt::format("n=60 k=3 j=1 c=0 p={:.6f} M={}: binomial {:.3f} uniform {:.3f} |diff| {:.3f} <= 0.1 "
                        "(calibration diff {:.4f})",
                        r.p, r.m, r.binomial.frac_connected, r.uniform.frac_connected, r.diff_connected,
                        base["model_transfer"]["diff_connected"].get<double>())};
}

Outcome enumeration_bound(const json& base) {
    bool ok = true;
    std::string detail;
    for (const auto& entry : base["well_constructed"]) {
        const auto k = entry["k"].get<std::uint32_t>();
        const auto j = entry["j"].get<std::uint32_t>();
        const auto rows = enumerate_well_constructed(k, j, entry["max_jsize"].get<std::uint32_t>());
        const auto& committed = entry["counts"];
        bool reproduced = rows.size() == committed.size();
        bool bounded = true;
        std::string counts;
        for (const auto& row : rows) {
            bounded = bounded && row.within_bound();
            const auto key = std::to_string(row.jsize);
            reproduced = reproduced && committed.contains(key) && committed[key].get<std::uint64_t>() == row.count;
            counts += fmt::format("{}{}:{}", counts.empty() ? "" : " ", row.jsize, row.count);
        }
        ok = ok && bounded && reproduced;
        detail += fmt::format("(k={},j={}) {} [{}{}]; ", k, j, counts, bounded ? "within 2^(k s^2)" : "BOUND VIOLATED",
                              reproduced ? ", matches committed" : ", DIFFERS from committed");
    }
    return {ok, detail};
}

Outcome determinism() {
    const std::vector<std::vector<std::string>> commands{
        {"hyperlab", "hitting", "--n", "24", "--k", "3", "--j", "2", "--trials", "50", "--seed", "11"},
        {"hyperlab", "degree-dist", "--n", "30", "--k", "3", "--j", "1", "--s", "1", "--c", "0", "--trials", "200",
         "--seed", "12"},
        {"hyperlab", "sweep", "--n", "40", "--k", "3", "--j", "1", "--c-from", "-2", "--c-to", "2", "--c-step", "1",
         "--trials", "100", "--seed", "13", "--model", "uniform"},
        {"hyperlab", "oracle-check", "--instances", "50", "--seed", "14"},
        {"hyperlab", "enumerate-wc", "--k", "3", "--j", "2"},
        {"hyperlab", "component", "--n", "50", "--k", "3", "--j", "2", "--epsilon", "0.3", "--seed", "15"},
    };
    std::uint64_t identical = 0;
    for (const auto& cmd : commands) {
        std::vector<std::string> outputs;
        for (const char* threads : {"1", "4", "1"}) {
            auto args = cmd;
            if (cmd[1] != "enumerate-wc" && cmd[1] != "oracle-check") {
                args.insert(args.end(), {"--threads", threads});
            }
            std::ostringstream out, err;
            if (cli::run(args, out, err) != cli::kOk) return {false, fmt::format("{} failed: {}", cmd[1], err.str())};
            outputs.push_back(out.str());
        }
        if (outputs[0] == outputs[1] && outputs[1] == outputs[2]) ++identical;
    }
    return {identical == commands.size(),
            fmt::format("{}/{} commands byte-identical across 3 runs (threads 1, 4, 1)", identical, commands.size())};
}

}  // namespace

int main() {
    json base;
    try {
        base = load_baselines();
    } catch (const std::exception& e) {
        std::cout << "FAIL baselines: " << e.what() << '\n';
        return 1;
    }

    // Criterion 2 is evaluated last so it covers every trial run here.
    std::vector<Criterion> criteria{
        {1, "oracle equivalence", 60, oracle_equivalence},
        {3, "coincidence trend", 600, [&] { return coincidence_trend(base); }},
        {4, "exact expectation", 300, exact_expectation},
        {5, "Poisson proximity", 300, [&] { return poisson_proximity(base); }},
        {6, "sharp threshold shape", 600, threshold_shape},
        {7, "model transfer", 0, [&] { return model_transfer(base); }},
        {8, "well-constructed bound", 300, [&] { return enumeration_bound(base); }},
        {9, "determinism", 0, determinism},
        {2, "hitting-time order", 0, [] {
             audit(run_hitting_trials(Params{30, 4, 2}, 200, 6'000'000, kThreads));
             audit(run_hitting_trials(Params{15, 4, 3}, 200, 6'000'200, kThreads));
             return Outcome{g_order_violations == 0,
                            fmt::format("{} trials, {} with tau_i > tau_c", g_trials_seen, g_order_violations)};
         }},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit_seconds > 0 && secs >= c.time_limit_seconds) {
            o.pass = false;
            o.detail += fmt::format(" runtime limit {:.0f}s exceeded", c.time_limit_seconds);
        }
        if (!o.pass) ++failures;
        std::cout << fmt::format("{} [{}] {} ({:.2f}s): {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail);
    }
    std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
