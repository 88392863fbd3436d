#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "zlift/bitvec.hpp"
#include "zlift/core.hpp"
#include "zlift/rational.hpp"

namespace zlift {

// one vertex subset per part, in part order
using Witness = std::vector<std::vector<std::int64_t>>;

inline long double binomial_ld(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0.0L;
    long double out = 1.0L;
    for (std::int64_t i = 1; i <= k; ++i)
        out = out * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    return out;
}

namespace detail {

struct TupleHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (auto x : v) {
            h ^= static_cast<std::size_t>(x);
            h *= 1099511628211ULL;
        }
        return h;
    }
};

inline void check_sizes(const PartiteHypergraph& h, const std::vector<std::int64_t>& sizes) {
    if (static_cast<std::int64_t>(sizes.size()) != h.r)
        throw std::invalid_argument("verifier: sizes must list one entry per part");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1) throw std::invalid_argument("verifier: sizes must be positive");
        if (sizes[i] > h.part_sizes[i])
            throw std::invalid_argument("verifier: size exceeds part " + std::to_string(i));
    }
}

// hard internal check: a reported witness must be exact-size t-uples whose
// every transversal is an edge — anything else is a verifier bug
inline void recheck_witness(const PartiteHypergraph& h, const std::vector<std::int64_t>& sizes,
                            const Witness& w) {
    if (static_cast<std::int64_t>(w.size()) != h.r)
        throw std::logic_error("verifier: witness has wrong part count");
    for (std::size_t p = 0; p < w.size(); ++p) {
        if (static_cast<std::int64_t>(w[p].size()) != sizes[p])
            throw std::logic_error("verifier: witness subset has wrong size");
        for (std::size_t i = 0; i < w[p].size(); ++i) {
            if (w[p][i] < 0 || w[p][i] >= h.part_sizes[p])
                throw std::logic_error("verifier: witness vertex out of range");
            if (i > 0 && w[p][i] <= w[p][i - 1])
                throw std::logic_error("verifier: witness subset not sorted");
        }
    }
    std::unordered_set<Edge, TupleHash> eset(h.edges.begin(), h.edges.end());
    std::vector<std::size_t> idx(static_cast<std::size_t>(h.r), 0);
    Edge e(static_cast<std::size_t>(h.r));
    for (;;) {
        for (std::size_t p = 0; p < e.size(); ++p) e[p] = w[p][idx[p]];
        if (!eset.count(e)) throw std::logic_error("verifier: witness failed edge recheck");
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == w[pos].size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
    }
}

// State for the pruned search. Parts 0..r-2 are scanned cheapest-first
// (ascending C(n_p, s_p)); the last part is read off the running link.
struct CopySearch {
    const PartiteHypergraph& h;
    const std::vector<std::int64_t>& sizes;
    std::int64_t r, t, n_last, levels;
    std::vector<std::vector<BitVec>> shadow;  // [part][vertex]: union of links
    std::unordered_map<std::vector<std::int64_t>, BitVec, TupleHash> links;  // r >= 3
    std::vector<std::int64_t> order;
    std::vector<std::vector<std::int64_t>> chosen;  // by original part index
    std::optional<Witness> result;

    CopySearch(const PartiteHypergraph& hh, const std::vector<std::int64_t>& ss)
        : h(hh), sizes(ss), r(hh.r), t(ss.back()), n_last(hh.part_sizes.back()),
          levels(hh.r - 1) {
        shadow.resize(static_cast<std::size_t>(levels));
        for (std::int64_t p = 0; p < levels; ++p)
            shadow[static_cast<std::size_t>(p)].assign(
                static_cast<std::size_t>(h.part_sizes[static_cast<std::size_t>(p)]),
                BitVec(n_last));
        for (const auto& e : h.edges) {
            for (std::int64_t p = 0; p < levels; ++p)
                shadow[static_cast<std::size_t>(p)][static_cast<std::size_t>(
                                                        e[static_cast<std::size_t>(p)])]
                    .set(e.back());
            if (r > 2) {
                std::vector<std::int64_t> key(e.begin(), e.end() - 1);
                auto it = links.try_emplace(std::move(key), BitVec(n_last)).first;
                it->second.set(e.back());
            }
        }
        order.resize(static_cast<std::size_t>(levels));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
            return binomial_ld(h.part_sizes[static_cast<std::size_t>(a)],
                               sizes[static_cast<std::size_t>(a)]) <
                   binomial_ld(h.part_sizes[static_cast<std::size_t>(b)],
                               sizes[static_cast<std::size_t>(b)]);
        });
        chosen.resize(static_cast<std::size_t>(levels));
    }

    // exact common links of the final part's vertices against every
    // transversal of the already-chosen subsets (r >= 3 only)
    std::vector<BitVec> exact_links(std::int64_t part_f) {
        std::int64_t np = h.part_sizes[static_cast<std::size_t>(part_f)];
        std::vector<BitVec> g = shadow[static_cast<std::size_t>(part_f)];
        std::vector<std::int64_t> other;
        for (std::int64_t p = 0; p < levels; ++p)
            if (p != part_f) other.push_back(p);
        std::vector<std::size_t> idx(other.size(), 0);
        std::vector<std::int64_t> key(static_cast<std::size_t>(levels));
        for (;;) {
            for (std::size_t i = 0; i < other.size(); ++i)
                key[static_cast<std::size_t>(other[i])] =
                    chosen[static_cast<std::size_t>(other[i])][idx[i]];
            for (std::int64_t v = 0; v < np; ++v) {
                auto& gv = g[static_cast<std::size_t>(v)];
                if (!gv.any()) continue;
                key[static_cast<std::size_t>(part_f)] = v;
                auto it = links.find(key);
                if (it == links.end())
                    gv = BitVec(n_last);
                else
                    gv &= it->second;
            }
            std::size_t pos = 0;
            while (pos < idx.size() &&
                   ++idx[pos] == chosen[static_cast<std::size_t>(other[pos])].size())
                idx[pos++] = 0;
            if (pos == idx.size()) break;
        }
        return g;
    }

    bool level_scan(std::int64_t li, const BitVec& carried) {
        std::int64_t part = order[static_cast<std::size_t>(li)];
        bool last_level = (li == levels - 1);
        std::vector<BitVec> exact;
        const std::vector<BitVec>* vecs = &shadow[static_cast<std::size_t>(part)];
        if (last_level && r > 2) {
            exact = exact_links(part);
            vecs = &exact;
        }
        std::vector<std::int64_t> cur;
        return combo(li, part, sizes[static_cast<std::size_t>(part)], 0, carried, cur, *vecs,
                     last_level);
    }

    // lexicographic s-subsets of one part; every added vertex tightens the
    // running link, pruned the moment it cannot still hold t vertices
    bool combo(std::int64_t li, std::int64_t part, std::int64_t remaining, std::int64_t start,
               const BitVec& link, std::vector<std::int64_t>& cur,
               const std::vector<BitVec>& vecs, bool last_level) {
        if (remaining == 0) {
            chosen[static_cast<std::size_t>(part)] = cur;
            if (!last_level) return level_scan(li + 1, link);
            Witness w(static_cast<std::size_t>(r));
            for (std::int64_t p = 0; p < levels; ++p)
                w[static_cast<std::size_t>(p)] = chosen[static_cast<std::size_t>(p)];
            w.back() = link.lowest_bits(t);
            recheck_witness(h, sizes, w);
            result = std::move(w);
            return true;
        }
        std::int64_t np = h.part_sizes[static_cast<std::size_t>(part)];
        for (std::int64_t v = start; v <= np - remaining; ++v) {
            BitVec next = link;
            next &= vecs[static_cast<std::size_t>(v)];
            if (next.count() < t) continue;
            cur.push_back(v);
            if (combo(li, part, remaining - 1, v + 1, next, cur, vecs, last_level)) return true;
            cur.pop_back();
        }
        return false;
    }
};

}  // namespace detail

// Is there a partite-respecting copy of K(sizes) in h: subsets S_i of part i
// with |S_i| = sizes[i] whose every transversal is an edge? Returns the first
// witness in the fixed internal scan order (deterministic), none otherwise.
inline std::optional<Witness> contains_partite_copy(const PartiteHypergraph& h,
                                                    const std::vector<std::int64_t>& sizes) {
    detail::check_sizes(h, sizes);
    detail::CopySearch search(h, sizes);
    search.level_scan(0, BitVec::all_set(search.n_last));
    return search.result;
}

// Unpruned reference implementation: enumerate subsets of every part in
// natural order and test each transversal against an edge set. Kept dumb on
// purpose; the fast path must agree with it.
inline std::optional<Witness> naive_oracle(const PartiteHypergraph& h,
                                           const std::vector<std::int64_t>& sizes) {
    detail::check_sizes(h, sizes);
    long double work = 1.0L;
    for (std::size_t p = 0; p < sizes.size(); ++p)
        work *= binomial_ld(h.part_sizes[p], sizes[p]);
    if (work > 1e7L) throw std::invalid_argument("naive_oracle: instance too large");

    std::unordered_set<Edge, detail::TupleHash> eset(h.edges.begin(), h.edges.end());
    Witness w(static_cast<std::size_t>(h.r));

    auto all_edges = [&]() {
        std::vector<std::size_t> idx(static_cast<std::size_t>(h.r), 0);
        Edge e(static_cast<std::size_t>(h.r));
        for (;;) {
            for (std::size_t p = 0; p < e.size(); ++p) e[p] = w[p][idx[p]];
            if (!eset.count(e)) return false;
            std::size_t pos = 0;
            while (pos < idx.size() && ++idx[pos] == w[pos].size()) idx[pos++] = 0;
            if (pos == idx.size()) return true;
        }
    };

    auto choose_part = [&](auto&& self, std::int64_t p) -> bool {
        if (p == h.r) return all_edges();
        auto& cur = w[static_cast<std::size_t>(p)];
        cur.clear();
        std::int64_t np = h.part_sizes[static_cast<std::size_t>(p)];
        std::int64_t want = sizes[static_cast<std::size_t>(p)];
        auto rec = [&](auto&& inner, std::int64_t start, std::int64_t rem) -> bool {
            if (rem == 0) return self(self, p + 1);
            for (std::int64_t v = start; v <= np - rem; ++v) {
                cur.push_back(v);
                if (inner(inner, v + 1, rem - 1)) return true;
                cur.pop_back();
            }
            return false;
        };
        return rec(rec, 0, want);
    };

    if (choose_part(choose_part, 0)) return w;
    return std::nullopt;
}

// target exponent r - 1/s for z(n, K): the pattern's claimed growth rate
inline Rational kst_exponent(const ForbiddenPattern& p) {
    return Rational(checked_add(checked_mul(p.r, p.s), -1), p.s);
}

// upper estimate of the bit-vector word operations a full (unpruned) run of
// contains_partite_copy could need; used to enforce verification budgets
inline double estimate_verify_words(const PartiteHypergraph& h,
                                    const std::vector<std::int64_t>& sizes) {
    detail::check_sizes(h, sizes);
    long double w = 1.0L;
    for (std::int64_t p = 0; p < h.r - 1; ++p) {
        w *= binomial_ld(h.part_sizes[static_cast<std::size_t>(p)],
                         sizes[static_cast<std::size_t>(p)]);
        w *= static_cast<long double>(sizes[static_cast<std::size_t>(p)]);
    }
    w *= static_cast<long double>((h.part_sizes.back() + 63) / 64);
    return static_cast<double>(w);
}

}  // namespace zlift
