#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_set>
#include <vector>

#include "hyperlab/combinatorics.hpp"
#include "hyperlab/rng.hpp"

namespace hyperlab {

// Universe sizes for a k-uniform hypergraph on n vertices studied at
// connectivity order j. Requires k >= 2, 1 <= j <= k - 1, n >= k.
struct Params {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::uint32_t j = 0;

    void validate() const;
    std::uint64_t edge_universe() const { return binom(n, k); }   // C(n,k)
    std::uint64_t jset_universe() const { return binom(n, j); }   // C(n,j)
    std::uint64_t jsets_per_edge() const { return binom(k, j); }  // C(k,j)

    friend bool operator==(const Params&, const Params&) = default;
};

class Probability {
public:
    explicit Probability(double p);
    double value() const { return p_; }

private:
    double p_;
};

// Edge set stored as ascending colex ranks of k-sets.
class Hypergraph {
public:
    explicit Hypergraph(Params params);
    // Ranks may arrive in any order; duplicates and out-of-range ranks throw.
    Hypergraph(Params params, std::vector<Rank> edge_ranks);

    const Params& params() const { return params_; }
    std::span<const Rank> edge_ranks() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }
    VertexSet edge(std::size_t i) const;
    std::vector<VertexSet> edges() const;
    bool contains(Rank rank) const;

private:
    Params params_;
    std::vector<Rank> edges_;
};

// The hypergraph process: each next() yields a k-set chosen uniformly
// among those not yet emitted.
//
// While fewer than half of the C(n,k) edges have been emitted, ranks are
// drawn uniformly and rejected if already seen. Past the halfway mark the
// unseen ranks are materialised and drawn by a lazy Fisher-Yates shuffle,
// so exhausting the stream stays cheap at small n.
class EdgeStream {
public:
    EdgeStream(Params params, std::uint64_t seed);

    // std::nullopt once all C(n,k) edges have been emitted.
    std::optional<Rank> next();
    std::optional<VertexSet> next_edge();

    const Params& params() const { return params_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t emitted() const { return emitted_; }
    std::uint64_t universe() const { return universe_; }

private:
    void switch_to_shuffle();

    Params params_;
    std::uint64_t seed_;
    std::uint64_t universe_;
    std::uint64_t emitted_ = 0;
    Rng rng_;
    std::unordered_set<Rank> seen_;
    bool shuffling_ = false;
    std::vector<Rank> remaining_;
};

EdgeStream edge_stream(const Params& params, std::uint64_t seed);

// H^k(n,p): every k-set independently with probability p.
Hypergraph sample_binomial(const Params& params, Probability p, std::uint64_t seed);

// H^k(n,M): the first M edges of edge_stream(params, seed).
Hypergraph sample_uniform(const Params& params, std::uint64_t m, std::uint64_t seed);

// Text format: header "n k j m", then one edge per line as ascending
// space-separated vertex labels. Edges are written in ascending rank order.
void write_hypergraph(std::ostream& out, const Hypergraph& h);
Hypergraph read_hypergraph(std::istream& in);

}  // namespace hyperlab
