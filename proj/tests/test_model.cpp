#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "hyperlab/error.hpp"
#include "hyperlab/model.hpp"

using namespace hyperlab;

namespace {

// Pearson statistic against a uniform expectation over `cells` outcomes.
double chi_square_uniform(const std::map<std::vector<Rank>, std::uint64_t>& counts, std::uint64_t cells,
                          std::uint64_t draws) {
    const double expected = static_cast<double>(draws) / static_cast<double>(cells);
    double stat = 0.0;
    std::uint64_t seen = 0;
    for (const auto& [key, c] : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
        ++seen;
    }
    stat += static_cast<double>(cells - seen) * expected;  // cells never observed
    return stat;
}

// Loose upper critical value: mean + 4 standard deviations of chi^2(df).
double chi_square_limit(double df) { return df + 4.0 * std::sqrt(2.0 * df); }

}  // namespace

TEST_CASE("Params validation") {
    CHECK_NOTHROW((Params{4, 3, 2}).validate());
    CHECK_NOTHROW((Params{5, 2, 1}).validate());
    CHECK_THROWS_AS((Params{4, 1, 1}).validate(), InvalidInput);
    CHECK_THROWS_AS((Params{4, 3, 3}).validate(), InvalidInput);
    CHECK_THROWS_AS((Params{4, 3, 0}).validate(), InvalidInput);
    CHECK_THROWS_AS((Params{2, 3, 1}).validate(), InvalidInput);
}

TEST_CASE("Probability domain") {
    CHECK_NOTHROW(Probability(0.0));
    CHECK_NOTHROW(Probability(1.0));
    CHECK_THROWS_AS(Probability(-1e-12), InvalidInput);
    CHECK_THROWS_AS(Probability(1.5), InvalidInput);
    CHECK_THROWS_AS(Probability(std::nan("")), InvalidInput);
}

TEST_CASE("sample_binomial boundary probabilities") {
    const Params p{9, 3, 2};
    CHECK(sample_binomial(p, Probability(0.0), 5).edge_count() == 0);
    const auto full = sample_binomial(p, Probability(1.0), 5);
    CHECK(full.edge_count() == binom(9, 3));
}

TEST_CASE("sample_binomial mean edge count") {
    const Params p{20, 3, 1};
    const double trials = 1000;
    double sum = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        sum += static_cast<double>(sample_binomial(p, Probability(0.1), seed).edge_count());
    }
    const double mean = sum / trials;
    const double sd_of_mean = std::sqrt(1140 * 0.1 * 0.9 / trials);
    CHECK(std::abs(mean - 114.0) < 3 * sd_of_mean);
}

TEST_CASE("sample_binomial inclusion is uniform over ranks") {
    // Each rank is included with probability p; compare per-rank frequency.
    const Params p{7, 3, 1};
    const std::uint64_t universe = binom(7, 3);
    std::vector<double> hits(universe, 0.0);
    const int trials = 20000;
    for (int seed = 0; seed < trials; ++seed) {
        const auto h = sample_binomial(p, Probability(0.3), seed);
        for (const Rank r : h.edge_ranks()) hits[r] += 1;
    }
    const double sd = std::sqrt(0.3 * 0.7 / trials);
    for (const double h : hits) CHECK(std::abs(h / trials - 0.3) < 5 * sd);
}

TEST_CASE("sample_uniform sizes and errors") {
    const Params p{6, 3, 1};
    CHECK(sample_uniform(p, 0, 3).edge_count() == 0);
    CHECK(sample_uniform(p, 20, 3).edge_count() == 20);
    CHECK_THROWS_AS(sample_uniform(p, 21, 3), InvalidInput);
}

TEST_CASE("sample_uniform M=2 is uniform over edge pairs") {
    const Params p{6, 3, 1};
    const std::uint64_t draws = 100000;
    std::map<std::vector<Rank>, std::uint64_t> counts;
    for (std::uint64_t seed = 0; seed < draws; ++seed) {
        const auto h = sample_uniform(p, 2, seed);
        ++counts[{h.edge_ranks().begin(), h.edge_ranks().end()}];
    }
    const std::uint64_t cells = binom(20, 2);
    CHECK(counts.size() == cells);
    CHECK(chi_square_uniform(counts, cells, draws) < chi_square_limit(static_cast<double>(cells - 1)));
}

TEST_CASE("stream prefix of length 3 is uniform and equals sample_uniform") {
    const Params p{6, 3, 1};
    const std::uint64_t draws = 100000;
    std::map<std::vector<Rank>, std::uint64_t> counts;
    for (std::uint64_t seed = 0; seed < draws; ++seed) {
        EdgeStream s(p, seed);
        std::vector<Rank> prefix{*s.next(), *s.next(), *s.next()};
        std::sort(prefix.begin(), prefix.end());
        if (seed < 200) {
            const auto h = sample_uniform(p, 3, seed);
            CHECK(std::vector<Rank>(h.edge_ranks().begin(), h.edge_ranks().end()) == prefix);
        }
        ++counts[prefix];
    }
    const std::uint64_t cells = binom(20, 3);
    CHECK(chi_square_uniform(counts, cells, draws) < chi_square_limit(static_cast<double>(cells - 1)));
}

TEST_CASE("edge_stream with a single possible edge") {
    EdgeStream s(Params{3, 3, 2}, 11);
    const auto first = s.next_edge();
    REQUIRE(first.has_value());
    CHECK(*first == VertexSet{0, 1, 2});
    CHECK_FALSE(s.next().has_value());
    CHECK(s.emitted() == 1);
}

TEST_CASE("full stream is a permutation of all edges") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        EdgeStream s(Params{7, 3, 1}, seed);
        std::set<Rank> seen;
        while (auto r = s.next()) CHECK(seen.insert(*r).second);
        CHECK(seen.size() == binom(7, 3));
        CHECK(s.emitted() == binom(7, 3));
        CHECK_FALSE(s.next().has_value());
    }
}

TEST_CASE("every stream position is uniform, including the shuffle phase") {
    const Params p{5, 3, 1};  // 10 edges; positions 5..9 use the shuffle
    const std::uint64_t draws = 20000;
    std::vector<std::vector<double>> at(10, std::vector<double>(10, 0.0));
    for (std::uint64_t seed = 0; seed < draws; ++seed) {
        EdgeStream s(p, seed);
        for (int pos = 0; pos < 10; ++pos) at[pos][*s.next()] += 1;
    }
    const double expected = draws / 10.0;
    for (int pos = 0; pos < 10; ++pos) {
        double stat = 0;
        for (const double c : at[pos]) stat += (c - expected) * (c - expected) / expected;
        CHECK(stat < chi_square_limit(9));
    }
}

TEST_CASE("determinism under equal seeds") {
    const Params p{15, 4, 2};
    CHECK(sample_binomial(p, Probability(0.05), 42).edge_ranks().size() ==
          sample_binomial(p, Probability(0.05), 42).edge_ranks().size());
    const auto a = sample_binomial(p, Probability(0.05), 42);
    const auto b = sample_binomial(p, Probability(0.05), 42);
    CHECK(std::equal(a.edge_ranks().begin(), a.edge_ranks().end(), b.edge_ranks().begin(), b.edge_ranks().end()));
    EdgeStream s1(p, 9), s2(p, 9);
    for (int i = 0; i < 500; ++i) CHECK(s1.next() == s2.next());
    const auto c = sample_binomial(p, Probability(0.05), 43);
    CHECK_FALSE(std::equal(a.edge_ranks().begin(), a.edge_ranks().end(), c.edge_ranks().begin(), c.edge_ranks().end()));
}

TEST_CASE("Hypergraph rejects duplicates and out-of-range ranks") {
    const Params p{5, 3, 1};
    CHECK_THROWS_AS(Hypergraph(p, {1, 1}), InvalidInput);
    CHECK_THROWS_AS(Hypergraph(p, {10}), InvalidInput);
    const Hypergraph h(p, {4, 0});
    CHECK(h.edge_count() == 2);
    CHECK(h.edge(0) == VertexSet{0, 1, 2});
    CHECK(h.contains(4));
    CHECK_FALSE(h.contains(3));
}

TEST_CASE("text format is exact") {
    const Params p{5, 3, 2};
    const Hypergraph h(p, {rank_set({1, 3, 4}, 5).rank, rank_set({0, 1, 2}, 5).rank});
    std::ostringstream os;
    write_hypergraph(os, h);
    CHECK(os.str() == "5 3 2 2\n0 1 2\n1 3 4\n");

    std::istringstream is(os.str());
    const auto back = read_hypergraph(is);
    CHECK(back.params() == p);
    CHECK(std::equal(back.edge_ranks().begin(), back.edge_ranks().end(), h.edge_ranks().begin(), h.edge_ranks().end()));
}

TEST_CASE("text format errors") {
    auto parse = [](const std::string& text) {
        std::istringstream is(text);
        return read_hypergraph(is);
    };
    CHECK_THROWS_AS(parse(""), InvalidInput);
    CHECK_THROWS_AS(parse("5 3 2\n"), InvalidInput);
    CHECK_THROWS_AS(parse("5 3 2 2\n0 1 2\n"), InvalidInput);
    CHECK_THROWS_AS(parse("5 3 2 1\n0 1\n"), InvalidInput);
    CHECK_THROWS_AS(parse("5 3 2 1\n2 1 0\n"), InvalidInput);
    CHECK_THROWS_AS(parse("5 3 2 1\n0 1 x\n"), InvalidInput);
    CHECK_THROWS_AS(parse("5 3 2 2\n0 1 2\n0 1 2\n"), InvalidInput);
    CHECK(parse("5 3 2 0\n").edge_count() == 0);
}
