#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "zlift/core.hpp"

namespace zlift {

// Bipartite graph on A = {0..m-1}, B = {0..2m-1} with edges (a, a + sigma)
// for sigma in S, partitioned into matchings by the sum c = a + b. Two edges
// (a, a+s) and (a', a'+s') share a sum iff a - a' = (s' - s)/... — a cross
// edge closing a rectangle forces s + s' = 2*s'' in S, i.e. a 3-term
// progression, so when S is AP-free every sum class is an induced matching.
//
// Sums range over {1, ..., 3m-2}; matchings[i] holds the class c = i + 1.
// Empty classes are kept so the index arithmetic stays transparent.
inline MatchingFamily build_matching_family(std::int64_t m, const std::vector<std::int64_t>& s) {
    if (m < 1) throw std::invalid_argument("build_matching_family: m must be positive");
    if (s.empty()) throw std::invalid_argument("build_matching_family: S must be nonempty");
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 1 || s[i] > m)
            throw std::invalid_argument("build_matching_family: S must lie in {1..m}");
        if (i > 0 && s[i] <= s[i - 1])
            throw std::invalid_argument("build_matching_family: S must be sorted and distinct");
    }
    MatchingFamily f;
    f.graph = BipartiteGraph::make(m, 2 * m);
    f.matchings.assign(static_cast<std::size_t>(3 * m - 2), {});
    for (std::int64_t a = 0; a < m; ++a)
        for (auto sigma : s) {
            std::int64_t b = a + sigma;
            f.graph.adj[static_cast<std::size_t>(a)].set(b);
            f.matchings[static_cast<std::size_t>(a + b - 1)].push_back({a, b});
        }
    return f;
}

struct FamilyViolation {
    enum class Kind { structure, cross_edge } kind;
    std::string detail;                 // structure: what broke
    std::int64_t matching_index = -1;   // cross_edge: the class c - 1
    EdgeAB first{}, second{};           // cross_edge: pair with (first.a, second.b) in E
};

// Checks that the blocks are well-formed disjoint matchings covering E, then
// that each is induced: no edge of the graph joins two distinct edges of the
// same matching. First violation in scan order (by matching, then lex pairs).
inline std::optional<FamilyViolation> verify_induced_family(const MatchingFamily& f) {
    if (auto err = family_structure_error(f))
        return FamilyViolation{FamilyViolation::Kind::structure, *err, -1, {}, {}};
    for (std::size_t c = 0; c < f.matchings.size(); ++c) {
        const auto& match = f.matchings[c];
        for (std::size_t i = 0; i < match.size(); ++i)
            for (std::size_t j = 0; j < match.size(); ++j) {
                if (i == j) continue;
                if (f.graph.has_edge(match[i].first, match[j].second))
                    return FamilyViolation{FamilyViolation::Kind::cross_edge, "",
                                           static_cast<std::int64_t>(c), match[i], match[j]};
            }
    }
    return std::nullopt;
}

struct SortedSizes {
    std::vector<std::int64_t> sizes;        // nonincreasing
    std::vector<std::int64_t> permutation;  // sizes[i] == |matchings[permutation[i]]|
};

// matching sizes sorted nonincreasing; ties keep ascending original index
inline SortedSizes family_sizes_sorted(const MatchingFamily& f) {
    SortedSizes out;
    out.permutation.resize(f.matchings.size());
    std::iota(out.permutation.begin(), out.permutation.end(), 0);
    std::stable_sort(out.permutation.begin(), out.permutation.end(),
                     [&](std::int64_t a, std::int64_t b) {
                         return f.matchings[static_cast<std::size_t>(a)].size() >
                                f.matchings[static_cast<std::size_t>(b)].size();
                     });
    out.sizes.reserve(f.matchings.size());
    for (auto idx : out.permutation)
        out.sizes.push_back(
            static_cast<std::int64_t>(f.matchings[static_cast<std::size_t>(idx)].size()));
    return out;
}

}  // namespace zlift
