#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hyperlab {

using Vertex = std::uint32_t;
using Rank = std::uint64_t;

// Exact C(n, r); 0 when r > n. Throws OverflowError if the result does not
// fit in 64 bits.
std::uint64_t binom(std::uint64_t n, std::uint64_t r);

// A non-empty, strictly increasing list of 0-based vertex labels.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::vector<Vertex> members);
    VertexSet(std::initializer_list<Vertex> members);

    // Sorts and validates; still rejects duplicates.
    static VertexSet from_unsorted(std::vector<Vertex> members);

    std::span<const Vertex> members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    Vertex operator[](std::size_t i) const { return members_[i]; }
    Vertex max() const { return members_.back(); }

    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    std::string to_string() const;

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
    friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

private:
    std::vector<Vertex> members_;
};

// Position of an r-subset of {0..n-1} in colexicographic order.
struct SetRank {
    Rank rank = 0;
    std::uint32_t r = 0;
    std::uint32_t n = 0;

    friend bool operator==(const SetRank&, const SetRank&) = default;
};

// rank = sum_i C(a_i, i) for members a_1 < ... < a_r (1-based i).
SetRank rank_set(const VertexSet& s, std::uint32_t n);
VertexSet unrank_set(SetRank rank);

// All r-subsets of s, in colex order.
std::vector<VertexSet> sub_sets(const VertexSet& s, std::size_t r);

// Dense C(v, i) lookup for v < rows, i <= cols. Used on hot paths where
// binom()'s overflow checks would dominate.
class BinomialTable {
public:
    BinomialTable(std::uint32_t rows, std::uint32_t cols);

    std::uint64_t operator()(std::uint32_t v, std::uint32_t i) const {
        return table_[static_cast<std::size_t>(v) * (cols_ + 1) + i];
    }
    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return cols_; }

private:
    std::uint32_t rows_;
    std::uint32_t cols_;
    std::vector<std::uint64_t> table_;
};

// Index patterns of every r-subset of {0..m-1}, colex order. Applying a
// pattern to the members of an m-set enumerates its r-subsets.
std::vector<std::vector<std::uint8_t>> subset_patterns(std::size_t m, std::size_t r);

}  // namespace hyperlab
