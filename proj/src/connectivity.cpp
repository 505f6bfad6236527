#include "hyperlab/connectivity.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "hyperlab/error.hpp"

namespace hyperlab {

std::uint64_t memcap_from_env() {
    if (const char* raw = std::getenv("HYPERLAB_MEMCAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(raw, &end, 10);
        if (end != raw && *end == '\0' && v > 0) return v;
    }
    return kDefaultMemcap;
}

void ComponentPartition::canonicalize() {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

void write_partition(std::ostream& out, const ComponentPartition& partition) {
    for (const auto& block : partition.blocks) out << fmt::format("{}\n", fmt::join(block, " "));
}

std::string format_partition(const ComponentPartition& partition) {
    std::ostringstream os;
    write_partition(os, partition);
    return os.str();
}

ComponentTracker::ComponentTracker(Params params, std::uint64_t memcap)
    : params_(params), choose_((params.validate(), params.n), params.j) {
    const std::uint64_t slots = params_.jset_universe();
    if (slots > memcap) {
        throw ResourceError(fmt::format(
            "C({}, {}) = {} j-set slots exceeds the table cap of {}; "
            "lower n or j, or raise the cap with HYPERLAB_MEMCAP / --memcap",
            params_.n, params_.j, slots, memcap));
    }
    if (slots > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max())) {
        throw ResourceError(fmt::format("C({}, {}) = {} j-sets exceeds the 2^31 slot limit",
                                        params_.n, params_.j, slots));
    }
    patterns_ = subset_patterns(params_.k, params_.j);
    link_.assign(slots, -1);
    degree_.assign(slots, 0);
    scratch_.resize(patterns_.size());
}

std::uint32_t ComponentTracker::root_of(std::uint32_t x) {
    // Path halving.
    while (link_[x] >= 0) {
        const auto parent = static_cast<std::uint32_t>(link_[x]);
        if (link_[parent] >= 0) link_[x] = link_[parent];
        x = static_cast<std::uint32_t>(link_[x]);
    }
    return x;
}

void ComponentTracker::unite(std::uint32_t a, std::uint32_t b) {
    a = root_of(a);
    b = root_of(b);
    if (a == b) return;
    if (link_[a] > link_[b]) std::swap(a, b);  // a is the larger class
    link_[a] += link_[b];
    link_[b] = static_cast<std::int32_t>(a);
    --components_;
    largest_ = std::max<std::uint64_t>(largest_, static_cast<std::uint64_t>(-link_[a]));
}

Rank ComponentTracker::find(Rank jset) {
    if (jset >= link_.size()) throw InvalidInput(fmt::format("j-set rank {} out of range", jset));
    return root_of(static_cast<std::uint32_t>(jset));
}

void ComponentTracker::insert_sorted(std::span<const Vertex> members) {
    const std::uint32_t j = params_.j;
    for (std::size_t t = 0; t < patterns_.size(); ++t) {
        Rank r = 0;
        for (std::uint32_t i = 0; i < j; ++i) r += choose_(members[patterns_[t][i]], i + 1);
        const auto slot = static_cast<std::uint32_t>(r);
        scratch_[t] = slot;
        if (degree_[slot]++ == 0) {
            ++covered_;
            ++components_;
            largest_ = std::max<std::uint64_t>(largest_, 1);
        }
    }
    for (std::size_t t = 1; t < scratch_.size(); ++t) unite(scratch_[0], scratch_[t]);
    ++edges_inserted_;
}

void ComponentTracker::insert_edge(const VertexSet& edge) {
    if (edge.size() != params_.k) {
        throw InvalidInput(fmt::format("edge has {} vertices, expected k = {}", edge.size(), params_.k));
    }
    if (edge.max() >= params_.n) {
        throw InvalidInput(fmt::format("vertex {} outside [0, {})", edge.max(), params_.n));
    }
    insert_sorted(edge.members());
}

void ComponentTracker::insert_edge_rank(Rank edge_rank) {
    insert_edge(unrank_set(SetRank{edge_rank, params_.k, params_.n}));
}

std::vector<std::uint64_t> ComponentTracker::degree_histogram() const {
    std::vector<std::uint64_t> hist(1, 0);
    for (const auto d : degree_) {
        if (d >= hist.size()) hist.resize(d + 1, 0);
        ++hist[d];
    }
    return hist;
}

ComponentPartition ComponentTracker::component_partition() {
    std::map<std::uint32_t, std::vector<Rank>> by_root;
    for (std::uint32_t x = 0; x < degree_.size(); ++x) {
        if (degree_[x] > 0) by_root[root_of(x)].push_back(x);
    }
    ComponentPartition out;
    out.blocks.reserve(by_root.size());
    for (auto& [root, members] : by_root) out.blocks.push_back(std::move(members));
    out.canonicalize();
    return out;
}

std::uint64_t j_size(const Hypergraph& h) {
    std::set<VertexSet> seen;
    for (const auto& e : h.edges()) {
        for (auto& s : sub_sets(e, h.params().j)) seen.insert(std::move(s));
    }
    return seen.size();
}

ComponentPartition bfs_j_components(const Hypergraph& h) {
    const auto edges = h.edges();
    const std::size_t m = edges.size();
    const std::uint32_t j = h.params().j;

    auto shares_j = [&](const VertexSet& a, const VertexSet& b) {
        std::vector<Vertex> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        return common.size() >= j;
    };

    std::vector<std::size_t> label(m, m);
    std::size_t next_label = 0;
    for (std::size_t start = 0; start < m; ++start) {
        if (label[start] != m) continue;
        std::queue<std::size_t> frontier;
        frontier.push(start);
        label[start] = next_label;
        while (!frontier.empty()) {
            const std::size_t cur = frontier.front();
            frontier.pop();
            for (std::size_t other = 0; other < m; ++other) {
                if (label[other] == m && shares_j(edges[cur], edges[other])) {
                    label[other] = next_label;
                    frontier.push(other);
                }
            }
        }
        ++next_label;
    }

    std::vector<std::set<Rank>> classes(next_label);
    for (std::size_t e = 0; e < m; ++e) {
        for (const auto& s : sub_sets(edges[e], j)) {
            classes[label[e]].insert(rank_set(s, h.params().n).rank);
        }
    }
    ComponentPartition out;
    for (auto& c : classes) out.blocks.emplace_back(c.begin(), c.end());
    out.canonicalize();
    return out;
}

}  // namespace hyperlab
