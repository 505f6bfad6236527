// Produces calibration/baselines.json: finite-n reference values that the
// acceptance suite compares against. Seeds here start at 9'000'000 so they
// never overlap the acceptance runs.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <thread>

#include <nlohmann/json.hpp>

#include "hyperlab/experiments.hpp"
#include "hyperlab/rng.hpp"

using namespace hyperlab;
using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kSeedBase = 9'000'000;
constexpr std::uint64_t kCoincidenceTrials = 4000;
constexpr std::uint64_t kTvSamples = 5000;
constexpr std::uint64_t kTvReplicates = 20;
constexpr std::uint64_t kSweepTrials = 2000;

json interval(const CoincidenceEstimate& e) {
    return {{"trials", e.trials}, {"coincidences", e.coincidences}, {"point", e.point},
            {"ci_low", e.ci_low}, {"ci_high", e.ci_high}};
}

json coincidence(unsigned threads) {
    json out = json::object();
    const std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> series{{1, {16, 32, 64}},
                                                                                   {2, {12, 20, 32}}};
    std::uint64_t seed = kSeedBase;
    for (const auto& [j, ns] : series) {
        json rows = json::array();
        double largest_point = 0.0;
        for (const auto n : ns) {
            const auto est = estimate_coincidence(Params{n, 3, j}, kCoincidenceTrials, seed, threads);
            seed += kCoincidenceTrials;
            json row = interval(est);
            row["n"] = n;
            row["base_seed"] = seed - kCoincidenceTrials;
            rows.push_back(row);
            largest_point = est.point;
        }
        out["k3_j" + std::to_string(j)] = {{"rows", rows}, {"baseline", largest_point}};
    }
    return out;
}

json poisson_tv(unsigned threads) {
    const Params p{40, 3, 1};
    std::vector<double> values;
    for (std::uint64_t r = 0; r < kTvReplicates; ++r) {
        const std::uint64_t seed = kSeedBase + 100'000 + r * kTvSamples;
        values.push_back(sample_degree_counts(p, {0, 0.0}, kTvSamples, seed, threads).tv_to_poisson);
    }
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    double var = 0.0;
    for (const double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size() - 1);
    return {{"n", 40}, {"k", 3}, {"j", 1}, {"s", 0}, {"c", 0.0},
            {"samples", kTvSamples}, {"replicates", kTvReplicates},
            {"replicate_values", values},
            {"replicate_sd", std::sqrt(var)},
            {"baseline", mean}};
}

json sweep(unsigned threads) {
    const Params p{60, 3, 1};
    std::vector<double> grid;
    for (int c = -4; c <= 4; ++c) grid.push_back(c);
    json out = json::object();
    for (const auto model : {SweepModel::binomial, SweepModel::uniform}) {
        const auto rows = threshold_sweep(p, grid, kSweepTrials, kSeedBase + 200'000, model, threads);
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"c", r.c}, {"frac_no_isolated", r.frac_no_isolated},
                           {"frac_connected", r.frac_connected},
                           {"poisson_heuristic", std::exp(-std::exp(-r.c))}});
        }
        out[model == SweepModel::binomial ? "binomial" : "uniform"] = arr;
    }
    out["n"] = 60;
    out["k"] = 3;
    out["j"] = 1;
    out["trials"] = kSweepTrials;
    out["base_seed"] = kSeedBase + 200'000;
    return out;
}

json transfer(unsigned threads) {
    const auto r = model_transfer_check(Params{60, 3, 1}, 0.0, kSweepTrials, kSeedBase + 300'000, threads);
    return {{"n", 60}, {"k", 3}, {"j", 1}, {"c", 0.0}, {"trials", kSweepTrials},
            {"p", r.p}, {"m", r.m},
            {"binomial_connected", r.binomial.frac_connected},
            {"uniform_connected", r.uniform.frac_connected},
            {"diff_connected", r.diff_connected},
            {"diff_no_isolated", r.diff_no_isolated}};
}

json well_constructed() {
    json out = json::array();
    for (const auto [k, j] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {3, 2}, {4, 3}}) {
        json counts = json::object();
        for (const auto& row : enumerate_well_constructed(k, j, max_complete_jsize(k, j))) {
            counts[std::to_string(row.jsize)] = row.count;
        }
        out.push_back({{"k", k}, {"j", j}, {"vertex_budget", kDefaultVertexBudget},
                       {"max_jsize", max_complete_jsize(k, j)}, {"counts", counts}});
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    json doc;
    doc["generator"] = std::string(kGeneratorIdentity);
    doc["seed_base"] = kSeedBase;
    doc["coincidence"] = coincidence(threads);
    doc["poisson_tv"] = poisson_tv(threads);
    doc["sweep"] = sweep(threads);
    doc["model_transfer"] = transfer(threads);
    doc["well_constructed"] = well_constructed();

    if (argc > 1) {
        std::ofstream f(argv[1]);
        if (!f) {
            std::cerr << "cannot write " << argv[1] << '\n';
            return 1;
        }
        f << doc.dump(2) << '\n';
    } else {
        std::cout << doc.dump(2) << '\n';
    }
    return 0;
}
