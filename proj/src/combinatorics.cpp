#include "hyperlab/combinatorics.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "hyperlab/error.hpp"

namespace hyperlab {

std::uint64_t binom(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    // After step i the accumulator equals C(n - r + i, i), so every
    // division is exact. The 128-bit product cannot overflow while the
    // accumulator itself fits in 64 bits.
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max()) {
            throw OverflowError(fmt::format("C({}, {}) exceeds 64 bits", n, r));
        }
    }
    return static_cast<std::uint64_t>(acc);
}

namespace {

void check_strictly_increasing(const std::vector<Vertex>& m) {
    if (m.empty()) throw InvalidInput("vertex set must be non-empty");
    for (std::size_t i = 1; i < m.size(); ++i) {
        if (m[i - 1] >= m[i]) {
            throw InvalidInput(
                fmt::format("vertex set must be strictly increasing (position {})", i));
        }
    }
}

}  // namespace

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
    check_strictly_increasing(members_);
}

VertexSet::VertexSet(std::initializer_list<Vertex> members)
    : VertexSet(std::vector<Vertex>(members)) {}

VertexSet VertexSet::from_unsorted(std::vector<Vertex> members) {
    std::sort(members.begin(), members.end());
    return VertexSet(std::move(members));
}

std::string VertexSet::to_string() const {
    return fmt::format("{{{}}}", fmt::join(members_, ","));
}

SetRank rank_set(const VertexSet& s, std::uint32_t n) {
    if (s.empty()) throw InvalidInput("cannot rank an empty set");
    if (s.max() >= n) {
        throw InvalidInput(fmt::format("vertex {} outside universe [0, {})", s.max(), n));
    }
    Rank rank = 0;
    for (std::size_t i = 0; i < s.size(); ++i) rank += binom(s[i], i + 1);
    return SetRank{rank, static_cast<std::uint32_t>(s.size()), n};
}

VertexSet unrank_set(SetRank sr) {
    if (sr.r == 0 || sr.r > sr.n) {
        throw InvalidInput(fmt::format("subset size {} invalid for n = {}", sr.r, sr.n));
    }
    const std::uint64_t total = binom(sr.n, sr.r);
    if (sr.rank >= total) {
        throw InvalidInput(fmt::format("rank {} out of range [0, {})", sr.rank, total));
    }
    std::vector<Vertex> members(sr.r);
    Rank rest = sr.rank;
    std::uint64_t candidate = sr.n - 1;
    for (std::uint32_t i = sr.r; i >= 1; --i) {
        // Largest a with C(a, i) <= rest; a >= i - 1 always qualifies.
        while (binom(candidate, i) > rest) --candidate;
        members[i - 1] = static_cast<Vertex>(candidate);
        rest -= binom(candidate, i);
        --candidate;
    }
    return VertexSet(std::move(members));
}

std::vector<std::vector<std::uint8_t>> subset_patterns(std::size_t m, std::size_t r) {
    if (r > m) throw InvalidInput(fmt::format("subset size {} exceeds set size {}", r, m));
    std::vector<std::vector<std::uint8_t>> out;
    if (r == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<std::uint8_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = static_cast<std::uint8_t>(i);
    for (;;) {
        out.push_back(idx);
        // Colex successor: bump the lowest position that has room.
        std::size_t i = 0;
        while (i < r && std::size_t{idx[i]} + 1 == (i + 1 < r ? std::size_t{idx[i + 1]} : m)) ++i;
        if (i == r) break;
        ++idx[i];
        for (std::size_t t = 0; t < i; ++t) idx[t] = static_cast<std::uint8_t>(t);
    }
    return out;
}

std::vector<VertexSet> sub_sets(const VertexSet& s, std::size_t r) {
    if (r == 0 || r > s.size()) {
        throw InvalidInput(
            fmt::format("cannot take {}-subsets of a {}-element set", r, s.size()));
    }
    std::vector<VertexSet> out;
    std::vector<Vertex> buf(r);
    for (const auto& pattern : subset_patterns(s.size(), r)) {
        for (std::size_t t = 0; t < r; ++t) buf[t] = s[pattern[t]];
        out.emplace_back(buf);
    }
    return out;
}

BinomialTable::BinomialTable(std::uint32_t rows, std::uint32_t cols)
    : rows_(rows), cols_(cols),
      table_(static_cast<std::size_t>(rows) * (cols + 1), 0) {
    for (std::uint32_t v = 0; v < rows; ++v) {
        for (std::uint32_t i = 0; i <= cols; ++i) {
            table_[static_cast<std::size_t>(v) * (cols + 1) + i] = binom(v, i);
        }
    }
}

}  // namespace hyperlab
