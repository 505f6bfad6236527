#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "hyperlab/error.hpp"
#include "hyperlab/experiments.hpp"

namespace hyperlab {

namespace {

// Vertices are bits of a 16-bit mask; an edge or a j-set is a mask.
using Mask = std::uint16_t;
using EdgeList = std::vector<Mask>;  // sorted

std::vector<Mask> subsets_of_size(Mask set, std::uint32_t r) {
    std::vector<Mask> out;
    // Walk all submasks and keep those of the right size.
    for (Mask sub = set;; sub = static_cast<Mask>((sub - 1) & set)) {
        if (static_cast<std::uint32_t>(std::popcount(static_cast<unsigned>(sub))) == r) out.push_back(sub);
        if (sub == 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::set<Mask> jsets_of(const EdgeList& edges, std::uint32_t j) {
    std::set<Mask> out;
    for (const Mask e : edges) {
        for (const Mask s : subsets_of_size(e, j)) out.insert(s);
    }
    return out;
}

std::uint32_t vertex_count(const EdgeList& edges) {
    Mask all = 0;
    for (const Mask e : edges) all |= e;
    return static_cast<std::uint32_t>(std::popcount(static_cast<unsigned>(all)));
}

EdgeList relabel(const EdgeList& edges, const std::vector<std::uint32_t>& position) {
    EdgeList out;
    out.reserve(edges.size());
    for (const Mask e : edges) {
        Mask m = 0;
        for (std::uint32_t v = 0; v < position.size(); ++v) {
            if (e & (1u << v)) m = static_cast<Mask>(m | (1u << position[v]));
        }
        out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Colour refinement: start from vertex degree, then repeatedly recolour
// each vertex by its old colour together with the multiset of colour
// multisets of its edges. Colours are ranks of signatures, so the result
// is invariant under relabelling.
std::vector<std::uint32_t> refine_colours(const EdgeList& edges, std::uint32_t nv) {
    std::vector<std::uint32_t> colour(nv, 0);
    for (const Mask e : edges) {
        for (std::uint32_t v = 0; v < nv; ++v) colour[v] += (e >> v) & 1u;
    }
    std::size_t classes = 0;
    for (;;) {
        using Signature = std::pair<std::uint32_t, std::vector<std::vector<std::uint32_t>>>;
        std::vector<Signature> sig(nv);
        for (std::uint32_t v = 0; v < nv; ++v) {
            sig[v].first = colour[v];
            for (const Mask e : edges) {
                if (!((e >> v) & 1u)) continue;
                std::vector<std::uint32_t> others;
                for (std::uint32_t u = 0; u < nv; ++u) {
                    if (u != v && ((e >> u) & 1u)) others.push_back(colour[u]);
                }
                std::sort(others.begin(), others.end());
                sig[v].second.push_back(std::move(others));
            }
            std::sort(sig[v].second.begin(), sig[v].second.end());
        }
        std::map<Signature, std::uint32_t> ids;
        for (const auto& s : sig) ids.emplace(s, 0);
        std::uint32_t next = 0;
        for (auto& [s, id] : ids) id = next++;
        for (std::uint32_t v = 0; v < nv; ++v) colour[v] = ids.at(sig[v]);
        if (ids.size() == classes) return colour;
        classes = ids.size();
    }
}

// Lexicographically least relabelled edge list over every vertex
// permutation that sends colour classes, in colour order, to consecutive
// label ranges. Isomorphisms preserve colours, so this equals the minimum
// over all permutations of any isomorphic copy.
EdgeList canonical_form(const EdgeList& edges) {
    const std::uint32_t nv = vertex_count(edges);
    const auto colour = refine_colours(edges, nv);
    std::uint32_t ncol = 0;
    for (const auto c : colour) ncol = std::max(ncol, c + 1);
    std::vector<std::vector<std::uint32_t>> cells(ncol);
    for (std::uint32_t v = 0; v < nv; ++v) cells[colour[v]].push_back(v);
    std::vector<std::uint32_t> offset(ncol, 0);
    for (std::uint32_t c = 1; c < ncol; ++c) offset[c] = offset[c - 1] + static_cast<std::uint32_t>(cells[c - 1].size());

    EdgeList best;
    bool have_best = false;
    std::vector<std::uint32_t> position(nv);
    // Odometer over the per-cell permutations.
    for (auto& cell : cells) std::sort(cell.begin(), cell.end());
    for (;;) {
        for (std::uint32_t c = 0; c < ncol; ++c) {
            for (std::uint32_t t = 0; t < cells[c].size(); ++t) position[cells[c][t]] = offset[c] + t;
        }
        EdgeList candidate = relabel(edges, position);
        if (!have_best || candidate < best) {
            best = std::move(candidate);
            have_best = true;
        }
        std::uint32_t c = 0;
        while (c < ncol && !std::next_permutation(cells[c].begin(), cells[c].end())) ++c;
        if (c == ncol) break;
    }
    return best;
}

}  // namespace

bool WellConstructedCount::within_bound() const {
    if (bound_log2 >= 64) return true;
    return count <= (std::uint64_t{1} << bound_log2);
}

std::string WellConstructedCount::bound_string() const { return power_of_two_string(bound_log2); }

std::string power_of_two_string(std::uint64_t e) {
    std::vector<std::uint32_t> digits{1};  // little-endian base 10
    for (std::uint64_t i = 0; i < e; ++i) {
        std::uint32_t carry = 0;
        for (auto& d : digits) {
            const std::uint32_t v = d * 2 + carry;
            d = v % 10;
            carry = v / 10;
        }
        if (carry) digits.push_back(carry);
    }
    std::string out;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) out.push_back(static_cast<char>('0' + *it));
    return out;
}

std::uint32_t max_complete_jsize(std::uint32_t k, std::uint32_t j, std::uint32_t vertex_budget) {
    Params{k, k, j}.validate();
    if (vertex_budget < k) return 0;
    const std::uint32_t max_edges = (vertex_budget - j) / (k - j);
    // Every edge after the first discovers at least one new j-set, so a
    // hypergraph of j-size s has at most s - C(k,j) + 1 edges.
    return max_edges + static_cast<std::uint32_t>(binom(k, j)) - 1;
}

std::vector<WellConstructedCount> enumerate_well_constructed(std::uint32_t k, std::uint32_t j,
                                                             std::uint32_t max_jsize,
                                                             std::uint32_t vertex_budget) {
    Params{k, k, j}.validate();
    if (vertex_budget > 16) {
        throw ResourceError(fmt::format("vertex budget {} exceeds the 16-vertex limit", vertex_budget));
    }
    const auto first_jsize = static_cast<std::uint32_t>(binom(k, j));
    const std::uint32_t complete = max_complete_jsize(k, j, vertex_budget);
    if (max_jsize > complete) {
        throw ResourceError(fmt::format(
            "j-size {} needs more than {} vertices; the largest complete j-size is {}",
            max_jsize, vertex_budget, complete));
    }
    std::map<std::uint32_t, std::uint64_t> counts;
    for (std::uint32_t s = first_jsize; s <= max_jsize; ++s) counts[s] = 0;

    if (max_jsize >= first_jsize) {
        const std::uint32_t max_edges = (vertex_budget - j) / (k - j);
        std::set<EdgeList> level{EdgeList{static_cast<Mask>((1u << k) - 1)}};
        for (std::uint32_t e = 1; !level.empty(); ++e) {
            std::set<EdgeList> next_level;
            for (const auto& edges : level) {
                const auto discovered = jsets_of(edges, j);
                ++counts[static_cast<std::uint32_t>(discovered.size())];
                if (e == max_edges) continue;
                const std::uint32_t nv = vertex_count(edges);
                const Mask existing = static_cast<Mask>((1u << nv) - 1);
                for (std::uint32_t fresh = 0; fresh <= k - j && nv + fresh <= vertex_budget; ++fresh) {
                    const Mask new_vertices = static_cast<Mask>(((1u << fresh) - 1) << nv);
                    for (const Mask old_part : subsets_of_size(existing, k - fresh)) {
                        const Mask edge = static_cast<Mask>(old_part | new_vertices);
                        if (std::binary_search(edges.begin(), edges.end(), edge)) continue;
                        bool touches_old = false;
                        bool adds_new = false;
                        for (const Mask s : subsets_of_size(edge, j)) {
                            (discovered.contains(s) ? touches_old : adds_new) = true;
                        }
                        if (!touches_old || !adds_new) continue;
                        EdgeList grown = edges;
                        grown.insert(std::upper_bound(grown.begin(), grown.end(), edge), edge);
                        if (jsets_of(grown, j).size() > max_jsize) continue;
                        next_level.insert(canonical_form(grown));
                    }
                }
            }
            level = std::move(next_level);
        }
    }

    std::vector<WellConstructedCount> rows;
    for (const auto& [s, count] : counts) {
        WellConstructedCount row;
        row.k = k;
        row.j = j;
        row.jsize = s;
        row.count = count;
        row.bound_log2 = static_cast<std::uint64_t>(k) * s * s;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hyperlab
