#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "zlift/core.hpp"
#include "zlift/rational.hpp"
#include "zlift/rsz.hpp"

namespace zlift {

// K(s_1,...,s_{r-2},s_{r-1},t) -> K(s_1,...,s_{r-2}*s_{r-1},t): one recursion
// step of the pattern. The product of the s_i is unchanged. The merged middle
// size may drop below t, so the relaxed constructor is required here.
inline ForbiddenPattern merge_pattern(const ForbiddenPattern& p) {
    if (p.r < 3) throw std::invalid_argument("merge_pattern: pattern must have at least 3 parts");
    std::vector<std::int64_t> sizes(p.sizes.begin(), p.sizes.end() - 2);
    sizes.push_back(checked_mul(p.sizes[p.sizes.size() - 2], p.sizes.back()));
    return ForbiddenPattern::make_relaxed(sizes, p.t);
}

// Assign the j-th largest degree the j-th largest matching; ties broken by
// ascending original index on both sides. Injective by construction.
inline std::vector<std::int64_t> pair_degrees_to_matchings(
    const std::vector<std::int64_t>& degrees, const MatchingFamily& f) {
    std::int64_t n = static_cast<std::int64_t>(degrees.size());
    SortedSizes sorted = family_sizes_sorted(f);
    if (static_cast<std::int64_t>(sorted.sizes.size()) < n)
        throw std::invalid_argument("pair_degrees_to_matchings: family has " +
                                    std::to_string(sorted.sizes.size()) +
                                    " matchings but needs " + std::to_string(n));
    std::vector<std::int64_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
        return degrees[static_cast<std::size_t>(a)] > degrees[static_cast<std::size_t>(b)];
    });
    std::vector<std::int64_t> sigma(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        sigma[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] =
            sorted.permutation[static_cast<std::size_t>(i)];
    return sigma;
}

// (sum degrees)(sum sizes)/n, exact. With both lists nonincreasing and paired
// in order, Chebyshev's sum inequality puts sum d_j * m_j at or above this.
inline Rational chebyshev_bound(const std::vector<std::int64_t>& degrees,
                                const std::vector<std::int64_t>& sizes, std::int64_t n) {
    if (static_cast<std::int64_t>(degrees.size()) != n ||
        static_cast<std::int64_t>(sizes.size()) != n)
        throw std::invalid_argument("chebyshev_bound: lists must have length n");
    if (n < 1) throw std::invalid_argument("chebyshev_bound: n must be positive");
    for (auto* v : {&degrees, &sizes})
        for (std::size_t i = 1; i < v->size(); ++i)
            if ((*v)[i] > (*v)[i - 1])
                throw std::invalid_argument("chebyshev_bound: input not nonincreasing");
    std::int64_t sum_d = 0, sum_m = 0;
    for (auto d : degrees) sum_d = checked_add(sum_d, d);
    for (auto m : sizes) sum_m = checked_add(sum_m, m);
    return rational_product_over(sum_d, sum_m, n);
}

struct LiftResult {
    PartiteHypergraph graph;
    std::int64_t edge_count = 0;
    Rational bound;  // Chebyshev lower bound on edge_count
    std::int64_t n_used = 0;
};

namespace detail {

// Expand middle vertex j of h into the edges of matching sigma[j]: each edge
// (x..., j, y) becomes (x..., a, b, y) for (a,b) in that matching. Used both
// by the sorted pairing and, in tests, with arbitrary injective assignments.
inline LiftResult expand_middle(const PartiteHypergraph& h, const MatchingFamily& f,
                                std::int64_t middle_part,
                                const std::vector<std::int64_t>& sigma) {
    std::int64_t n = h.part_sizes[static_cast<std::size_t>(middle_part)];
    std::vector<std::int64_t> parts(h.part_sizes.begin(),
                                    h.part_sizes.begin() + middle_part);
    parts.push_back(f.graph.n_a);
    parts.push_back(f.graph.n_b);
    parts.push_back(h.part_sizes.back());

    std::vector<Edge> edges;
    for (const auto& e : h.edges) {
        std::int64_t j = e[static_cast<std::size_t>(middle_part)];
        const auto& match = f.matchings[static_cast<std::size_t>(
            sigma[static_cast<std::size_t>(j)])];
        for (const auto& [a, b] : match) {
            Edge out(e.begin(), e.begin() + middle_part);
            out.push_back(a);
            out.push_back(b);
            out.push_back(e.back());
            edges.push_back(std::move(out));
        }
    }

    LiftResult res;
    res.graph = build_hypergraph(h.r + 1, parts, edges);
    res.n_used = n;

    // e(H) = sum_j d(j) |M_sigma(j)|, and matching disjointness plus injective
    // sigma make the expansion collision-free; any mismatch is a bug
    std::vector<std::int64_t> deg = degree_sequence(h, middle_part);
    std::int64_t expected = 0;
    for (std::int64_t j = 0; j < n; ++j)
        expected = checked_add(
            expected,
            checked_mul(deg[static_cast<std::size_t>(j)],
                        static_cast<std::int64_t>(
                            f.matchings[static_cast<std::size_t>(
                                            sigma[static_cast<std::size_t>(j)])]
                                .size())));
    res.edge_count = res.graph.edge_count();
    if (res.edge_count != expected)
        throw std::logic_error("lift: edge count does not match sum d(j)|M_sigma(j)|");
    return res;
}

}  // namespace detail

// One recursion step: replace each vertex of the middle part (index r-3,
// second to last) by an induced matching, largest matchings to the highest
// degrees. Output parts are (X..., A, B, Y). If h is free of the merged
// pattern, the output is free of the unmerged one in either (A,B) orientation.
inline LiftResult lift_once(const PartiteHypergraph& h, const MatchingFamily& f,
                            std::int64_t middle_part, bool skip_family_check = false) {
    if (middle_part != h.r - 2)
        throw std::invalid_argument("lift_once: middle part must be index r-3 (second to last)");
    if (!skip_family_check)
        if (auto v = verify_induced_family(f)) {
            std::string why = v->kind == FamilyViolation::Kind::structure
                                  ? v->detail
                                  : "matching " + std::to_string(v->matching_index + 1) +
                                        " is not induced";
            throw std::invalid_argument("lift_once: family rejected: " + why);
        }

    std::vector<std::int64_t> deg = degree_sequence(h, middle_part);
    std::vector<std::int64_t> sigma = pair_degrees_to_matchings(deg, f);
    LiftResult res = detail::expand_middle(h, f, middle_part, sigma);

    std::int64_t n = res.n_used;
    std::vector<std::int64_t> deg_sorted = deg;
    std::sort(deg_sorted.begin(), deg_sorted.end(), std::greater<>());
    SortedSizes sorted = family_sizes_sorted(f);
    std::vector<std::int64_t> top(sorted.sizes.begin(),
                                  sorted.sizes.begin() + n);
    res.bound = chebyshev_bound(deg_sorted, top, n);
    if (!int_geq_rational(res.edge_count, res.bound))
        throw std::logic_error("lift: Chebyshev bound exceeds realized edge count");
    return res;
}

// Test hook: same expansion under a caller-chosen injective assignment.
// Freeness of the output must not depend on which injective sigma is used.
inline LiftResult lift_with_assignment(const PartiteHypergraph& h, const MatchingFamily& f,
                                       std::int64_t middle_part,
                                       const std::vector<std::int64_t>& sigma) {
    if (middle_part != h.r - 2)
        throw std::invalid_argument("lift_with_assignment: middle part must be index r-3");
    std::int64_t n = h.part_sizes[static_cast<std::size_t>(middle_part)];
    if (static_cast<std::int64_t>(sigma.size()) != n)
        throw std::invalid_argument("lift_with_assignment: sigma must have one entry per vertex");
    std::vector<std::int64_t> seen = sigma;
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i] < 0 || seen[i] >= static_cast<std::int64_t>(f.matchings.size()))
            throw std::invalid_argument("lift_with_assignment: sigma index out of range");
        if (i > 0 && seen[i] == seen[i - 1])
            throw std::invalid_argument("lift_with_assignment: sigma must be injective");
    }
    return detail::expand_middle(h, f, middle_part, sigma);
}

}  // namespace zlift
