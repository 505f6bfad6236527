#include "hyperlab/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "hyperlab/error.hpp"

namespace hyperlab {

namespace {
constexpr double kNormTolerance = 1e-9;
}

double density_from_c(double n, double choose, std::uint32_t j, std::uint32_t s, double c) {
    const double log_n = std::log(n);
    double numerator = j * log_n + c;
    if (s > 0) numerator += s * std::log(log_n);
    return numerator / choose;
}

Probability p_from_c(const Params& params, CnParameterization cp) {
    params.validate();
    if (cp.s > kMaxDegreeParameter) {
        throw InvalidInput(fmt::format("s = {} exceeds the limit {}", cp.s, kMaxDegreeParameter));
    }
    const double choose = static_cast<double>(binom(params.n, params.k - params.j));
    const double p = density_from_c(params.n, choose, params.j, cp.s, cp.c);
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidInput(fmt::format(
            "c = {} gives p = {} outside [0, 1] for n={} k={} j={} s={}",
            cp.c, p, params.n, params.k, params.j, cp.s));
    }
    return Probability(p);
}

Probability p_threshold(const Params& params) { return p_from_c(params, CnParameterization{0, 0.0}); }

double log_binom(double a, double b) {
    return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

double exact_expected_ds(const Params& params, Probability p, std::uint32_t s) {
    params.validate();
    const std::uint64_t degree_slots = binom(params.n - params.j, params.k - params.j);
    if (s > degree_slots) {
        throw InvalidInput(fmt::format("s = {} exceeds the maximum degree C(n-j,k-j) = {}", s, degree_slots));
    }
    const double jsets = static_cast<double>(params.jset_universe());
    const double pv = p.value();
    const double d = static_cast<double>(degree_slots);
    // Boundary probabilities put all mass on a single degree.
    if (pv == 0.0) return s == 0 ? jsets : 0.0;
    if (pv == 1.0) return s == degree_slots ? jsets : 0.0;
    const double log_term = log_binom(d, s) + s * std::log(pv) + (d - s) * std::log1p(-pv);
    return jsets * std::exp(log_term);
}

double limiting_lambda(std::uint32_t j, std::uint32_t s, double c) {
    return std::exp(s * std::log(static_cast<double>(j)) - c - std::lgamma(j + 1.0) -
                    std::lgamma(s + 1.0));
}

double poisson_pmf(double lambda, std::uint64_t i) {
    if (lambda < 0.0) throw InvalidInput(fmt::format("Poisson mean {} is negative", lambda));
    if (lambda == 0.0) return i == 0 ? 1.0 : 0.0;
    const double x = static_cast<double>(i);
    return std::exp(-lambda + x * std::log(lambda) - std::lgamma(x + 1.0));
}

Pmf::Pmf(std::vector<double> weights, double tail) : weights_(std::move(weights)), tail_(tail) {
    if (tail_ < 0.0 || std::any_of(weights_.begin(), weights_.end(), [](double w) { return !(w >= 0.0); })) {
        throw InvalidInput("pmf weights must be non-negative");
    }
}

Pmf Pmf::poisson(double lambda, std::size_t support) {
    std::vector<double> w(support);
    for (std::size_t i = 0; i < support; ++i) w[i] = poisson_pmf(lambda, i);
    // Sum smallest terms first; the tail is what is left.
    const double head = std::accumulate(w.rbegin(), w.rend(), 0.0);
    return Pmf(std::move(w), std::max(0.0, 1.0 - head));
}

double tv_distance(const Pmf& a, const Pmf& b) {
    for (const Pmf* x : {&a, &b}) {
        const double total = std::accumulate(x->weights().begin(), x->weights().end(), 0.0) + x->tail();
        if (std::abs(total - 1.0) > kNormTolerance) {
            throw InvalidInput(fmt::format("pmf is not normalized (total mass {})", total));
        }
    }
    const std::size_t common = std::min(a.size(), b.size());
    double l1 = 0.0;
    for (std::size_t i = 0; i < common; ++i) l1 += std::abs(a.at(i) - b.at(i));
    const Pmf& longer = a.size() >= b.size() ? a : b;
    const Pmf& shorter = a.size() >= b.size() ? b : a;
    double beyond = longer.tail();
    for (std::size_t i = common; i < longer.size(); ++i) beyond += longer.at(i);
    l1 += std::abs(beyond - shorter.tail());
    return std::clamp(0.5 * l1, 0.0, 1.0);
}

Pmf empirical_pmf(std::span<const std::uint64_t> samples) {
    if (samples.empty()) throw InvalidInput("empirical pmf needs at least one sample");
    const std::uint64_t top = *std::max_element(samples.begin(), samples.end());
    std::vector<std::uint64_t> counts(top + 1, 0);
    for (const auto x : samples) ++counts[x];
    std::vector<double> w(counts.size());
    const double total = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < counts.size(); ++i) w[i] = static_cast<double>(counts[i]) / total;
    return Pmf(std::move(w), 0.0);
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) throw InvalidInput("Wilson interval needs at least one trial");
    if (successes > trials) throw InvalidInput("more successes than trials");
    const double nt = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / nt;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nt;
    const double centre = (phat + z2 / (2.0 * nt)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt)) / denom;
    return WilsonInterval{phat, std::max(0.0, std::min(centre - half, phat)),
                          std::min(1.0, std::max(centre + half, phat))};
}

}  // namespace hyperlab
