#include "hyperlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "hyperlab/error.hpp"

namespace hyperlab {

void Params::validate() const {
    if (k < 2) throw InvalidInput(fmt::format("k = {} must be at least 2", k));
    if (j < 1 || j > k - 1) {
        throw InvalidInput(fmt::format("j = {} must lie in [1, k-1] = [1, {}]", j, k - 1));
    }
    if (n < k) throw InvalidInput(fmt::format("n = {} must be at least k = {}", n, k));
    // Make sure both universes are representable.
    (void)edge_universe();
    (void)jset_universe();
}

Probability::Probability(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidInput(fmt::format("probability {} outside [0, 1]", p));
    }
}

Hypergraph::Hypergraph(Params params) : params_(params) { params_.validate(); }

Hypergraph::Hypergraph(Params params, std::vector<Rank> edge_ranks)
    : params_(params), edges_(std::move(edge_ranks)) {
    params_.validate();
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw InvalidInput("hypergraph has a duplicate edge");
    }
    if (!edges_.empty() && edges_.back() >= params_.edge_universe()) {
        throw InvalidInput(fmt::format("edge rank {} out of range", edges_.back()));
    }
}

VertexSet Hypergraph::edge(std::size_t i) const {
    return unrank_set(SetRank{edges_.at(i), params_.k, params_.n});
}

std::vector<VertexSet> Hypergraph::edges() const {
    std::vector<VertexSet> out;
    out.reserve(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) out.push_back(edge(i));
    return out;
}

bool Hypergraph::contains(Rank rank) const {
    return std::binary_search(edges_.begin(), edges_.end(), rank);
}

EdgeStream::EdgeStream(Params params, std::uint64_t seed)
    : params_(params), seed_(seed), universe_(0), rng_(seed) {
    params_.validate();
    universe_ = params_.edge_universe();
}

void EdgeStream::switch_to_shuffle() {
    remaining_.reserve(universe_ - emitted_);
    for (Rank r = 0; r < universe_; ++r) {
        if (!seen_.contains(r)) remaining_.push_back(r);
    }
    seen_.clear();
    shuffling_ = true;
}

std::optional<Rank> EdgeStream::next() {
    if (emitted_ >= universe_) return std::nullopt;
    if (!shuffling_ && 2 * emitted_ >= universe_) switch_to_shuffle();

    Rank out;
    if (shuffling_) {
        const std::uint64_t pick = rng_.below(remaining_.size());
        out = remaining_[pick];
        remaining_[pick] = remaining_.back();
        remaining_.pop_back();
    } else {
        do {
            out = rng_.below(universe_);
        } while (!seen_.insert(out).second);
    }
    ++emitted_;
    return out;
}

std::optional<VertexSet> EdgeStream::next_edge() {
    auto r = next();
    if (!r) return std::nullopt;
    return unrank_set(SetRank{*r, params_.k, params_.n});
}

EdgeStream edge_stream(const Params& params, std::uint64_t seed) {
    return EdgeStream(params, seed);
}

Hypergraph sample_binomial(const Params& params, Probability p, std::uint64_t seed) {
    params.validate();
    const std::uint64_t universe = params.edge_universe();
    std::vector<Rank> ranks;
    if (p.value() == 0.0) return Hypergraph(params);
    if (p.value() == 1.0) {
        ranks.resize(universe);
        for (Rank r = 0; r < universe; ++r) ranks[r] = r;
        return Hypergraph(params, std::move(ranks));
    }
    // Geometric skipping: the gap before the next included rank is
    // floor(log(U) / log(1 - p)) with U uniform on (0, 1].
    Rng rng(seed);
    const double log_q = std::log1p(-p.value());
    double pos = -1.0;
    for (;;) {
        const double u = 1.0 - rng.uniform01();
        pos += 1.0 + std::floor(std::log(u) / log_q);
        if (pos >= static_cast<double>(universe)) break;
        ranks.push_back(static_cast<Rank>(pos));
    }
    return Hypergraph(params, std::move(ranks));
}

Hypergraph sample_uniform(const Params& params, std::uint64_t m, std::uint64_t seed) {
    params.validate();
    const std::uint64_t universe = params.edge_universe();
    if (m > universe) {
        throw InvalidInput(fmt::format("M = {} exceeds C(n,k) = {}", m, universe));
    }
    EdgeStream stream(params, seed);
    std::vector<Rank> ranks;
    ranks.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) ranks.push_back(*stream.next());
    return Hypergraph(params, std::move(ranks));
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
    const auto& p = h.params();
    out << p.n << ' ' << p.k << ' ' << p.j << ' ' << h.edge_count() << '\n';
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        out << fmt::format("{}\n", fmt::join(h.edge(i).members(), " "));
    }
}

Hypergraph read_hypergraph(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("missing hypergraph header");
    std::istringstream header(line);
    Params p;
    std::uint64_t m = 0;
    if (!(header >> p.n >> p.k >> p.j >> m)) {
        throw InvalidInput("malformed header, expected \"n k j m\"");
    }
    p.validate();
    std::vector<Rank> ranks;
    ranks.reserve(m);
    for (std::uint64_t e = 0; e < m; ++e) {
        if (!std::getline(in, line)) {
            throw InvalidInput(fmt::format("expected {} edges, found {}", m, e));
        }
        std::istringstream row(line);
        std::vector<Vertex> members;
        Vertex v;
        while (row >> v) members.push_back(v);
        if (!row.eof()) throw InvalidInput(fmt::format("edge line {} is malformed", e + 1));
        if (members.size() != p.k) {
            throw InvalidInput(
                fmt::format("edge line {} has {} vertices, expected {}", e + 1, members.size(), p.k));
        }
        ranks.push_back(rank_set(VertexSet(std::move(members)), p.n).rank);
    }
    return Hypergraph(p, std::move(ranks));
}

}  // namespace hyperlab
