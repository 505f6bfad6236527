#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperlab/connectivity.hpp"
#include "hyperlab/model.hpp"
#include "hyperlab/statistics.hpp"

namespace hyperlab {

// Trial i of any batch uses seed base_seed + i; results are ordered by
// trial index whatever the thread count.

struct HittingRecord {
    std::uint64_t tau_i = 0;  // first step with no isolated j-set
    std::uint64_t tau_c = 0;  // first step at which the hypergraph is j-connected
    std::uint64_t seed = 0;
};

struct CoincidenceEstimate {
    std::uint64_t trials = 0;
    std::uint64_t coincidences = 0;
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

// Feeds one hypergraph process into a fresh tracker and stops at tau_c.
HittingRecord run_hitting_trial(const Params& params, std::uint64_t seed,
                                std::uint64_t memcap = kDefaultMemcap);

std::vector<HittingRecord> run_hitting_trials(const Params& params, std::uint64_t trials,
                                              std::uint64_t base_seed, unsigned threads = 1,
                                              std::uint64_t memcap = kDefaultMemcap);

CoincidenceEstimate summarize_coincidence(const std::vector<HittingRecord>& records);

CoincidenceEstimate estimate_coincidence(const Params& params, std::uint64_t trials,
                                         std::uint64_t base_seed, unsigned threads = 1,
                                         std::uint64_t memcap = kDefaultMemcap);

struct DegreeCountReport {
    double p = 0.0;
    std::uint32_t s = 0;
    std::vector<std::uint64_t> observations;  // D_s per trial
    Pmf empirical{{1.0}, 0.0};
    double mean = 0.0;
    double std_error = 0.0;
    double exact_expectation = 0.0;
    double limit_lambda = 0.0;  // NaN when p was given directly
    double tv_to_poisson = 0.0;
};

// Samples H^k(n,p) with p = p_from_c(params, cp) per trial and compares
// D_s with Po(E(D_s)).
DegreeCountReport sample_degree_counts(const Params& params, CnParameterization cp,
                                       std::uint64_t trials, std::uint64_t base_seed,
                                       unsigned threads = 1, std::uint64_t memcap = kDefaultMemcap);

// Same, at an explicit density.
DegreeCountReport sample_degree_counts_at(const Params& params, Probability p, std::uint32_t s,
                                          std::uint64_t trials, std::uint64_t base_seed,
                                          unsigned threads = 1,
                                          std::uint64_t memcap = kDefaultMemcap);

enum class SweepModel { binomial, uniform };

struct SweepRow {
    double c = 0.0;
    std::uint64_t trials = 0;
    double frac_no_isolated = 0.0;
    double frac_connected = 0.0;
};

// M = round(p * C(n,k)) for the uniform model.
std::uint64_t matched_edge_count(const Params& params, Probability p);

SweepRow sweep_point(const Params& params, double c, std::uint64_t trials, std::uint64_t base_seed,
                     SweepModel model, unsigned threads = 1, std::uint64_t memcap = kDefaultMemcap);

std::vector<SweepRow> threshold_sweep(const Params& params, const std::vector<double>& c_values,
                                      std::uint64_t trials, std::uint64_t base_seed,
                                      SweepModel model, unsigned threads = 1,
                                      std::uint64_t memcap = kDefaultMemcap);

struct ModelTransferResult {
    double p = 0.0;
    std::uint64_t m = 0;
    SweepRow binomial;
    SweepRow uniform;
    double diff_connected = 0.0;
    double diff_no_isolated = 0.0;
};

ModelTransferResult model_transfer_check(const Params& params, double c, std::uint64_t trials,
                                         std::uint64_t base_seed, unsigned threads = 1,
                                         std::uint64_t memcap = kDefaultMemcap);

// Isomorphism classes of well-constructed k-uniform hypergraphs by j-size.
struct WellConstructedCount {
    std::uint32_t k = 0;
    std::uint32_t j = 0;
    std::uint32_t jsize = 0;
    std::uint64_t count = 0;
    std::uint64_t bound_log2 = 0;  // bound = 2^(k * jsize^2)

    bool within_bound() const;
    std::string bound_string() const;
};

inline constexpr std::uint32_t kDefaultVertexBudget = 10;

// Largest j-size whose classes all fit in the edge budget implied by
// j + (k-j) * edges <= vertex_budget.
std::uint32_t max_complete_jsize(std::uint32_t k, std::uint32_t j,
                                 std::uint32_t vertex_budget = kDefaultVertexBudget);

// Rows for j-sizes C(k,j) .. max_jsize. Throws ResourceError when
// max_jsize exceeds max_complete_jsize or the budget exceeds 16 vertices.
std::vector<WellConstructedCount> enumerate_well_constructed(
    std::uint32_t k, std::uint32_t j, std::uint32_t max_jsize,
    std::uint32_t vertex_budget = kDefaultVertexBudget);

// Decimal expansion of 2^e.
std::string power_of_two_string(std::uint64_t e);

struct SupercriticalReport {
    double epsilon = 0.0;
    double p_star = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t edges = 0;
    std::uint64_t jset_total = 0;
    std::uint64_t largest_jsize = 0;
    // Over all (j-1)-sets T: number of j-sets of the largest component containing T.
    std::uint64_t coverage_min = 0;
    std::uint64_t coverage_max = 0;
    double coverage_mean = 0.0;
};

// p* = (1 + eps) / ((C(k,j) - 1) C(n, k-j)).
Probability supercritical_density(const Params& params, double epsilon);

SupercriticalReport supercritical_component(const Params& params, double epsilon,
                                            std::uint64_t seed,
                                            std::uint64_t memcap = kDefaultMemcap);

}  // namespace hyperlab
