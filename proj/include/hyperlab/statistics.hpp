#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hyperlab/model.hpp"

namespace hyperlab {

inline constexpr std::uint32_t kMaxDegreeParameter = 64;

// Degree s and additive shift c in p = (j ln n + s ln ln n + c) / C(n, k-j).
struct CnParameterization {
    std::uint32_t s = 0;
    double c = 0.0;
};

// Raw density (j ln n + s ln ln n + c) / choose, without range checks.
// Accepts real n so the formula can be evaluated off the integer grid.
double density_from_c(double n, double choose, std::uint32_t j, std::uint32_t s, double c);

// Throws InvalidInput naming c when the resulting p leaves [0, 1].
Probability p_from_c(const Params& params, CnParameterization cp);

// Sharp threshold j ln n / C(n, k-j); identical to p_from_c with s = c = 0.
Probability p_threshold(const Params& params);

// log C(a, b) via lgamma; exact-valued inputs up to double precision.
double log_binom(double a, double b);

// E(D_s) = C(n,j) C(D, s) p^s (1-p)^(D-s) with D = C(n-j, k-j),
// accumulated in the log domain.
double exact_expected_ds(const Params& params, Probability p, std::uint32_t s);

// j^s e^{-c} / (j! s!).
double limiting_lambda(std::uint32_t j, std::uint32_t s, double c);

double poisson_pmf(double lambda, std::uint64_t i);

// Probability table on {0, ..., size-1} plus the mass beyond it.
class Pmf {
public:
    Pmf(std::vector<double> weights, double tail);

    std::span<const double> weights() const { return weights_; }
    double tail() const { return tail_; }
    double at(std::size_t i) const { return i < weights_.size() ? weights_[i] : 0.0; }
    std::size_t size() const { return weights_.size(); }

    // Po(lambda) tabulated on [0, support) with the exact remaining tail.
    static Pmf poisson(double lambda, std::size_t support);

private:
    std::vector<double> weights_;
    double tail_;
};

// Half the L1 distance. Beyond the shorter table the two distributions are
// compared as lumped masses, which is exact whenever the shorter table's
// tail is zero (the empirical-vs-model case).
double tv_distance(const Pmf& a, const Pmf& b);

Pmf empirical_pmf(std::span<const std::uint64_t> samples);

// 95% Wilson score interval for a binomial proportion.
struct WilsonInterval {
    double point = 0.0;
    double low = 0.0;
    double high = 0.0;
};
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

}  // namespace hyperlab
