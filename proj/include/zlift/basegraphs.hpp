#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "zlift/core.hpp"
#include "zlift/field.hpp"

namespace zlift {

inline constexpr std::int64_t kDeskCap = std::int64_t{1} << 20;

// Point-line incidence graph of PG(2,q). Vertices on each side are the
// normalized homogeneous triples over F_q (first nonzero coordinate = 1),
// sorted lexicographically by element encoding; this fixes the numbering.
// Two points lie on exactly one common line, so the graph has no K(2,2).
inline BipartiteGraph projective_plane_incidence(std::int64_t q) {
    auto pk = factor_prime_power(q);
    if (!pk) throw std::invalid_argument("projective_plane_incidence: q must be a prime power");
    FiniteField f = FiniteField::make(pk->first, pk->second);
    std::vector<std::array<std::int64_t, 3>> triples;
    for (std::int64_t y = 0; y < q; ++y)
        for (std::int64_t z = 0; z < q; ++z) triples.push_back({1, y, z});
    for (std::int64_t z = 0; z < q; ++z) triples.push_back({0, 1, z});
    triples.push_back({0, 0, 1});
    std::sort(triples.begin(), triples.end());
    std::int64_t n = static_cast<std::int64_t>(triples.size());  // q^2 + q + 1
    BipartiteGraph g = BipartiteGraph::make(n, n);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j) {
            std::int64_t dot = 0;
            for (int c = 0; c < 3; ++c)
                dot = f.add(dot, f.mul(triples[static_cast<std::size_t>(i)][c],
                                       triples[static_cast<std::size_t>(j)][c]));
            if (dot == 0) g.adj[static_cast<std::size_t>(i)].set(j);
        }
    return g;
}

// Projective norm graph: both parts are F_{q^{s-1}} x F_q^*, and (X,x) ~ (Y,y)
// iff N(X+Y) = x*y where N(z) = z^((q^{s-1}-1)/(q-1)) is the norm down to F_q.
// Every vertex has degree q^{s-1}-1, and the graph has no K(s,(s-1)!+1), which
// is what qualifies it as a recursion floor for those patterns.
//
// Vertices are ordered by (X, x): X over all field encodings ascending, x over
// the nonzero subfield elements ascending. All arithmetic stays inside
// F_{q^{s-1}}; the subfield is cut out as the fixed points of z -> z^q.
inline BipartiteGraph ars_norm_graph(std::int64_t q, std::int64_t s) {
    if (s < 3) throw std::invalid_argument("ars_norm_graph: s must be at least 3");
    auto pk = factor_prime_power(q);
    if (!pk) throw std::invalid_argument("ars_norm_graph: q must be a prime power");
    std::int64_t big_q = 1;
    for (std::int64_t i = 0; i < s - 1; ++i) {
        big_q = checked_mul(big_q, q);
        if (big_q > kDeskCap) throw std::invalid_argument("ars_norm_graph: q^(s-1) above cap");
    }
    if (checked_mul(big_q, q - 1) > kDeskCap)
        throw std::invalid_argument("ars_norm_graph: part size above cap");
    FiniteField f = FiniteField::make(pk->first, pk->second * (s - 1));

    std::vector<std::int64_t> sub = f.subfield_elements(q);
    if (static_cast<std::int64_t>(sub.size()) != q)
        throw std::logic_error("ars_norm_graph: subfield has wrong order");
    sub.erase(sub.begin());  // drop 0 (encoding 0 is always first)

    std::int64_t norm_exp = (big_q - 1) / (q - 1);
    std::vector<std::int64_t> norm(static_cast<std::size_t>(big_q));
    for (std::int64_t z = 0; z < big_q; ++z)
        norm[static_cast<std::size_t>(z)] = f.pow(z, norm_exp);
    std::vector<std::vector<std::int64_t>> prod(sub.size(),
                                                std::vector<std::int64_t>(sub.size()));
    for (std::size_t i = 0; i < sub.size(); ++i)
        for (std::size_t j = 0; j < sub.size(); ++j) prod[i][j] = f.mul(sub[i], sub[j]);

    std::int64_t part = big_q * (q - 1);
    BipartiteGraph g = BipartiteGraph::make(part, part);
    for (std::int64_t bx = 0; bx < big_q; ++bx)
        for (std::int64_t by = 0; by < big_q; ++by) {
            std::int64_t nv = norm[static_cast<std::size_t>(f.add(bx, by))];
            for (std::size_t xi = 0; xi < sub.size(); ++xi)
                for (std::size_t yi = 0; yi < sub.size(); ++yi)
                    if (prod[xi][yi] == nv)
                        g.adj[static_cast<std::size_t>(bx * (q - 1)) + xi].set(
                            by * (q - 1) + static_cast<std::int64_t>(yi));
        }
    return g;
}

// (t-1)-regular circulant: a ~ a, a+1, ..., a+t-2 (mod n). Max degree t-1
// rules out K(1,t) outright, and (t-1)n edges is the optimum for that pattern.
inline BipartiteGraph circulant_base(std::int64_t n, std::int64_t t) {
    if (n < 1 || t < 1) throw std::invalid_argument("circulant_base: n and t must be positive");
    if (t - 1 > n) throw std::invalid_argument("circulant_base: t-1 exceeds n");
    BipartiteGraph g = BipartiteGraph::make(n, n);
    for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t j = 0; j < t - 1; ++j)
            g.adj[static_cast<std::size_t>(a)].set((a + j) % n);
    return g;
}

enum class BaseKind { circulant, pg, ars };

inline std::string base_kind_str(BaseKind k) {
    switch (k) {
        case BaseKind::circulant: return "circulant";
        case BaseKind::pg: return "pg";
        case BaseKind::ars: return "ars";
    }
    return "?";
}

struct BaseSelection {
    bool ok = false;
    BaseKind kind = BaseKind::circulant;
    std::string note;  // which freeness argument applies, or why none does
};

// Which bipartite construction certifies K(s,t)-freeness:
//   s=1 -> circulant; s=2, t>=2 -> projective plane; s>=3, t>=(s-1)!+1 -> norm
// graph. Anything else gets an honest refusal instead of an uncertified graph.
inline BaseSelection select_base(std::int64_t s, std::int64_t t) {
    if (s < 1 || t < 1) throw std::invalid_argument("select_base: sizes must be positive");
    if (s == 1)
        return {true, BaseKind::circulant, "max degree t-1 = " + std::to_string(t - 1) +
                                               " excludes K(1," + std::to_string(t) + ")"};
    if (s == 2) {
        if (t >= 2)
            return {true, BaseKind::pg,
                    "two points lie on exactly one common line: no K(2,2), hence no K(2," +
                        std::to_string(t) + ")"};
        return {false, BaseKind::pg, "no certified base for K(2,1)"};
    }
    std::int64_t threshold = 1;  // (s-1)! + 1
    for (std::int64_t i = 2; i < s; ++i) {
        bool over = false;
        if (__builtin_mul_overflow(threshold, i, &threshold)) over = true;
        if (over || threshold > (std::int64_t{1} << 62))
            return {false, BaseKind::ars,
                    "no certified base for K(" + std::to_string(s) + "," + std::to_string(t) +
                        "): threshold (s-1)!+1 overflows"};
    }
    threshold += 1;
    if (t >= threshold)
        return {true, BaseKind::ars,
                "norm graph is K(s,t)-free for t >= (s-1)!+1 = " + std::to_string(threshold)};
    return {false, BaseKind::ars,
            "no certified base for K(" + std::to_string(s) + "," + std::to_string(t) +
                "): requires t >= " + std::to_string(threshold)};
}

}  // namespace zlift
