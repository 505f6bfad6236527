#include "hyperlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "hyperlab/error.hpp"
#include "parallel.hpp"

namespace hyperlab {

HittingRecord run_hitting_trial(const Params& params, std::uint64_t seed, std::uint64_t memcap) {
    ComponentTracker tracker(params, memcap);
    EdgeStream stream(params, seed);
    HittingRecord rec;
    rec.seed = seed;
    while (auto edge = stream.next()) {
        tracker.insert_edge_rank(*edge);
        const std::uint64_t step = stream.emitted();
        if (rec.tau_i == 0 && tracker.isolated_count() == 0) rec.tau_i = step;
        if (tracker.is_j_connected()) {
            rec.tau_c = step;
            return rec;
        }
    }
    // The complete hypergraph is always j-connected.
    throw std::logic_error("hypergraph process exhausted without becoming j-connected");
}

std::vector<HittingRecord> run_hitting_trials(const Params& params, std::uint64_t trials,
                                              std::uint64_t base_seed, unsigned threads,
                                              std::uint64_t memcap) {
    params.validate();
    std::vector<HittingRecord> out(trials);
    detail::for_each_index(trials, threads, [&](std::uint64_t i) {
        out[i] = run_hitting_trial(params, base_seed + i, memcap);
    });
    return out;
}

CoincidenceEstimate summarize_coincidence(const std::vector<HittingRecord>& records) {
    if (records.empty()) throw InvalidInput("no hitting records to summarize");
    CoincidenceEstimate est;
    est.trials = records.size();
    est.coincidences = static_cast<std::uint64_t>(
        std::count_if(records.begin(), records.end(), [](const auto& r) { return r.tau_i == r.tau_c; }));
    const auto ci = wilson_interval(est.coincidences, est.trials);
    est.point = ci.point;
    est.ci_low = ci.low;
    est.ci_high = ci.high;
    return est;
}

CoincidenceEstimate estimate_coincidence(const Params& params, std::uint64_t trials,
                                         std::uint64_t base_seed, unsigned threads,
                                         std::uint64_t memcap) {
    if (trials == 0) throw InvalidInput("trials must be at least 1");
    return summarize_coincidence(run_hitting_trials(params, trials, base_seed, threads, memcap));
}

DegreeCountReport sample_degree_counts_at(const Params& params, Probability p, std::uint32_t s,
                                          std::uint64_t trials, std::uint64_t base_seed,
                                          unsigned threads, std::uint64_t memcap) {
    params.validate();
    if (trials == 0) throw InvalidInput("trials must be at least 1");
    DegreeCountReport rep;
    rep.p = p.value();
    rep.s = s;
    rep.exact_expectation = exact_expected_ds(params, p, s);
    rep.limit_lambda = std::numeric_limits<double>::quiet_NaN();
    rep.observations.resize(trials);
    detail::for_each_index(trials, threads, [&](std::uint64_t i) {
        const Hypergraph h = sample_binomial(params, p, base_seed + i);
        ComponentTracker tracker(params, memcap);
        for (const Rank e : h.edge_ranks()) tracker.insert_edge_rank(e);
        const auto hist = tracker.degree_histogram();
        rep.observations[i] = s < hist.size() ? hist[s] : 0;
    });

    const double nt = static_cast<double>(trials);
    double sum = 0.0;
    for (const auto x : rep.observations) sum += static_cast<double>(x);
    rep.mean = sum / nt;
    double ss = 0.0;
    for (const auto x : rep.observations) ss += (static_cast<double>(x) - rep.mean) * (static_cast<double>(x) - rep.mean);
    rep.std_error = trials > 1 ? std::sqrt(ss / (nt - 1.0) / nt) : 0.0;

    rep.empirical = empirical_pmf(rep.observations);
    rep.tv_to_poisson = tv_distance(rep.empirical, Pmf::poisson(rep.exact_expectation, rep.empirical.size()));
    return rep;
}

DegreeCountReport sample_degree_counts(const Params& params, CnParameterization cp,
                                       std::uint64_t trials, std::uint64_t base_seed,
                                       unsigned threads, std::uint64_t memcap) {
    const Probability p = p_from_c(params, cp);
    auto rep = sample_degree_counts_at(params, p, cp.s, trials, base_seed, threads, memcap);
    rep.limit_lambda = limiting_lambda(params.j, cp.s, cp.c);
    return rep;
}

std::uint64_t matched_edge_count(const Params& params, Probability p) {
    const double m = std::round(p.value() * static_cast<double>(params.edge_universe()));
    return std::min<std::uint64_t>(static_cast<std::uint64_t>(m), params.edge_universe());
}

SweepRow sweep_point(const Params& params, double c, std::uint64_t trials, std::uint64_t base_seed,
                     SweepModel model, unsigned threads, std::uint64_t memcap) {
    if (trials == 0) throw InvalidInput("trials must be at least 1");
    const Probability p = p_from_c(params, CnParameterization{0, c});
    const std::uint64_t m = matched_edge_count(params, p);
    struct Outcome {
        bool no_isolated = false;
        bool connected = false;
    };
    std::vector<Outcome> outcomes(trials);
    detail::for_each_index(trials, threads, [&](std::uint64_t i) {
        const Hypergraph h = model == SweepModel::binomial ? sample_binomial(params, p, base_seed + i)
                                                           : sample_uniform(params, m, base_seed + i);
        ComponentTracker tracker(params, memcap);
        for (const Rank e : h.edge_ranks()) tracker.insert_edge_rank(e);
        outcomes[i] = {tracker.isolated_count() == 0, tracker.is_j_connected()};
    });
    const auto no_iso = std::count_if(outcomes.begin(), outcomes.end(), [](auto o) { return o.no_isolated; });
    const auto conn = std::count_if(outcomes.begin(), outcomes.end(), [](auto o) { return o.connected; });
    const double nt = static_cast<double>(trials);
    return SweepRow{c, trials, static_cast<double>(no_iso) / nt, static_cast<double>(conn) / nt};
}

std::vector<SweepRow> threshold_sweep(const Params& params, const std::vector<double>& c_values,
                                      std::uint64_t trials, std::uint64_t base_seed,
                                      SweepModel model, unsigned threads, std::uint64_t memcap) {
    if (c_values.empty()) throw InvalidInput("c grid is empty");
    // Validate the whole grid before spending time on any point.
    for (const double c : c_values) (void)p_from_c(params, CnParameterization{0, c});
    std::vector<SweepRow> rows;
    rows.reserve(c_values.size());
    for (const double c : c_values) {
        rows.push_back(sweep_point(params, c, trials, base_seed, model, threads, memcap));
    }
    return rows;
}

ModelTransferResult model_transfer_check(const Params& params, double c, std::uint64_t trials,
                                         std::uint64_t base_seed, unsigned threads,
                                         std::uint64_t memcap) {
    ModelTransferResult res;
    const Probability p = p_from_c(params, CnParameterization{0, c});
    res.p = p.value();
    res.m = matched_edge_count(params, p);
    res.binomial = sweep_point(params, c, trials, base_seed, SweepModel::binomial, threads, memcap);
    res.uniform = sweep_point(params, c, trials, base_seed, SweepModel::uniform, threads, memcap);
    res.diff_connected = std::abs(res.binomial.frac_connected - res.uniform.frac_connected);
    res.diff_no_isolated = std::abs(res.binomial.frac_no_isolated - res.uniform.frac_no_isolated);
    return res;
}

Probability supercritical_density(const Params& params, double epsilon) {
    params.validate();
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw InvalidInput(fmt::format("epsilon = {} must lie in (0, 1)", epsilon));
    }
    const double constant = static_cast<double>(params.jsets_per_edge() - 1);
    const double choose = static_cast<double>(binom(params.n, params.k - params.j));
    const double p = (1.0 + epsilon) / (constant * choose);
    if (!(p > 0.0 && p <= 1.0)) {
        throw InvalidInput(fmt::format("p* = {} outside (0, 1] for epsilon = {}", p, epsilon));
    }
    return Probability(p);
}

SupercriticalReport supercritical_component(const Params& params, double epsilon,
                                            std::uint64_t seed, std::uint64_t memcap) {
    const Probability p = supercritical_density(params, epsilon);
    const Hypergraph h = sample_binomial(params, p, seed);
    ComponentTracker tracker(params, memcap);
    for (const Rank e : h.edge_ranks()) tracker.insert_edge_rank(e);

    SupercriticalReport rep;
    rep.epsilon = epsilon;
    rep.p_star = p.value();
    rep.seed = seed;
    rep.edges = h.edge_count();
    rep.jset_total = tracker.jset_count();
    rep.largest_jsize = tracker.largest_component_size();

    const std::uint32_t j = params.j;
    const std::uint64_t lower_sets = binom(params.n, j - 1);
    std::vector<std::uint64_t> coverage(lower_sets, 0);
    if (rep.largest_jsize > 0) {
        const auto partition = tracker.component_partition();
        const auto& largest = *std::max_element(
            partition.blocks.begin(), partition.blocks.end(),
            [](const auto& a, const auto& b) { return a.size() < b.size(); });
        if (j == 1) {
            coverage[0] = largest.size();
        } else {
            for (const Rank r : largest) {
                const VertexSet jset = unrank_set(SetRank{r, j, params.n});
                for (const auto& sub : sub_sets(jset, j - 1)) ++coverage[rank_set(sub, params.n).rank];
            }
        }
    }
    const auto [lo, hi] = std::minmax_element(coverage.begin(), coverage.end());
    rep.coverage_min = *lo;
    rep.coverage_max = *hi;
    rep.coverage_mean = static_cast<double>(std::accumulate(coverage.begin(), coverage.end(), std::uint64_t{0})) /
                        static_cast<double>(lower_sets);
    return rep;
}

}  // namespace hyperlab
