#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hyperlab/combinatorics.hpp"
#include "hyperlab/model.hpp"

namespace hyperlab {

// Default ceiling on C(n,j) table entries; HYPERLAB_MEMCAP overrides it.
inline constexpr std::uint64_t kDefaultMemcap = std::uint64_t{1} << 27;

// Reads HYPERLAB_MEMCAP if set and parseable, otherwise kDefaultMemcap.
std::uint64_t memcap_from_env();

// Classes of covered j-sets. Each block lists j-set ranks ascending and
// blocks are ordered by their smallest member, so equal partitions compare
// equal with ==.
struct ComponentPartition {
    std::vector<std::vector<Rank>> blocks;

    void canonicalize();
    friend bool operator==(const ComponentPartition&, const ComponentPartition&) = default;
};

// One block per line, ranks space-separated.
void write_partition(std::ostream& out, const ComponentPartition& partition);
std::string format_partition(const ComponentPartition& partition);

// Streaming j-connectivity of a growing hypergraph.
//
// Every j-set owns a slot indexed by its colex rank. A j-set joins the
// disjoint-set forest when its degree first becomes positive; inserting an
// edge unions all of its C(k,j) j-subsets. Uncovered j-sets are not counted
// as components.
//
// The caller guarantees edges are distinct. Re-inserting an edge bumps the
// degrees again and leaves the partition unchanged.
class ComponentTracker {
public:
    explicit ComponentTracker(Params params, std::uint64_t memcap = kDefaultMemcap);

    void insert_edge(const VertexSet& edge);
    void insert_edge_rank(Rank edge_rank);

    const Params& params() const { return params_; }
    std::uint64_t jset_count() const { return degree_.size(); }
    std::uint64_t covered_count() const { return covered_; }
    std::uint64_t isolated_count() const { return degree_.size() - covered_; }
    std::uint64_t component_count() const { return components_; }
    std::uint64_t largest_component_size() const { return largest_; }
    std::uint64_t edges_inserted() const { return edges_inserted_; }
    bool is_j_connected() const {
        return covered_ == degree_.size() && components_ == 1;
    }

    std::uint32_t degree(Rank jset) const { return degree_.at(jset); }
    // Representative of the class holding jset. Meaningful for covered j-sets.
    Rank find(Rank jset);

    // D_s for s = 0..max degree; entries sum to C(n,j).
    std::vector<std::uint64_t> degree_histogram() const;
    ComponentPartition component_partition();

private:
    void insert_sorted(std::span<const Vertex> members);
    std::uint32_t root_of(std::uint32_t x);
    void unite(std::uint32_t a, std::uint32_t b);

    Params params_;
    BinomialTable choose_;
    std::vector<std::vector<std::uint8_t>> patterns_;
    // Root: -(class size). Otherwise: parent index.
    std::vector<std::int32_t> link_;
    std::vector<std::uint32_t> degree_;
    std::uint64_t covered_ = 0;
    std::uint64_t components_ = 0;
    std::uint64_t largest_ = 0;
    std::uint64_t edges_inserted_ = 0;
    std::vector<std::uint32_t> scratch_;
};

// Number of distinct j-sets contained in edges of h.
std::uint64_t j_size(const Hypergraph& h);

// Definitional oracle. Two edges are adjacent when they share at least j
// vertices; each covered j-set takes the class of any edge containing it.
// Quadratic in the edge count; meant for small instances.
ComponentPartition bfs_j_components(const Hypergraph& h);

}  // namespace hyperlab
