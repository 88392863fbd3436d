#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zlift/bitvec.hpp"
#include "zlift/rational.hpp"

namespace zlift {

using Vertex = std::int64_t;
using Edge = std::vector<Vertex>;           // one 0-based index per part
using EdgeAB = std::pair<Vertex, Vertex>;   // bipartite edge (a in A, b in B)
using Json = nlohmann::ordered_json;

struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// ForbiddenPattern: the complete r-partite target K(s_1,...,s_{r-1},t).
// Canonical patterns have nondecreasing sizes and t >= last(sizes); merging
// two middle parts can push the merged size past t, so merged patterns are
// built through the relaxed factory.
// ---------------------------------------------------------------------------
struct ForbiddenPattern {
    std::int64_t r = 2;                 // arity (number of parts, t-part included)
    std::vector<std::int64_t> sizes;    // s_1..s_{r-1}
    std::int64_t t = 1;
    std::int64_t s = 1;                 // product of sizes, overflow-checked

    static ForbiddenPattern make(std::vector<std::int64_t> sizes, std::int64_t t) {
        ForbiddenPattern p = make_relaxed(std::move(sizes), t);
        if (p.t < p.sizes.back())
            throw std::invalid_argument("pattern: t must be at least the largest middle size");
        return p;
    }

    // skips the t >= last(sizes) requirement; everything else still holds
    static ForbiddenPattern make_relaxed(std::vector<std::int64_t> sizes, std::int64_t t) {
        if (sizes.empty()) throw std::invalid_argument("pattern: needs at least one size");
        if (t < 1) throw std::invalid_argument("pattern: t must be positive");
        std::int64_t s = 1;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (sizes[i] < 1) throw std::invalid_argument("pattern: sizes must be positive");
            if (i > 0 && sizes[i] < sizes[i - 1])
                throw std::invalid_argument("pattern: sizes must be nondecreasing");
            s = checked_mul(s, sizes[i]);
        }
        ForbiddenPattern p;
        p.r = static_cast<std::int64_t>(sizes.size()) + 1;
        p.sizes = std::move(sizes);
        p.t = t;
        p.s = s;
        return p;
    }

    // sizes per host part, in part order: (s_1,...,s_{r-1},t)
    std::vector<std::int64_t> part_sizes() const {
        std::vector<std::int64_t> v = sizes;
        v.push_back(t);
        return v;
    }

    std::string str() const {
        std::string out = "K(";
        for (auto x : sizes) out += std::to_string(x) + ",";
        out += std::to_string(t) + ")";
        return out;
    }

    bool operator==(const ForbiddenPattern&) const = default;
};

// ---------------------------------------------------------------------------
// PartiteHypergraph: r-partite r-graph, vertices 0-based per part, edges
// deduplicated and kept in lexicographic order.
// ---------------------------------------------------------------------------
struct PartiteHypergraph {
    std::int64_t r = 2;
    std::vector<std::int64_t> part_sizes;
    std::vector<Edge> edges;  // canonical: sorted lexicographically, no duplicates

    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges.size()); }
    std::int64_t max_part_size() const {
        return *std::max_element(part_sizes.begin(), part_sizes.end());
    }

    bool operator==(const PartiteHypergraph&) const = default;
};

namespace detail {
inline void check_edge_shape(const Edge& e, std::int64_t r,
                             const std::vector<std::int64_t>& part_sizes) {
    if (static_cast<std::int64_t>(e.size()) != r)
        throw std::invalid_argument("edge arity mismatch");
    for (std::int64_t i = 0; i < r; ++i)
        if (e[static_cast<std::size_t>(i)] < 0 ||
            e[static_cast<std::size_t>(i)] >= part_sizes[static_cast<std::size_t>(i)])
            throw std::invalid_argument("edge index out of range");
}
}  // namespace detail

// Constructor convenience: silently dedups, sorts into canonical order.
inline PartiteHypergraph build_hypergraph(std::int64_t r,
                                          std::vector<std::int64_t> part_sizes,
                                          std::vector<Edge> edges) {
    if (r < 2) throw std::invalid_argument("hypergraph: r must be at least 2");
    if (static_cast<std::int64_t>(part_sizes.size()) != r)
        throw std::invalid_argument("hypergraph: part_sizes length differs from r");
    for (auto n : part_sizes)
        if (n < 1) throw std::invalid_argument("hypergraph: part sizes must be positive");
    for (const auto& e : edges) detail::check_edge_shape(e, r, part_sizes);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    PartiteHypergraph h;
    h.r = r;
    h.part_sizes = std::move(part_sizes);
    h.edges = std::move(edges);
    return h;
}

// Per-vertex edge counts for one part; entries sum to the edge count.
inline std::vector<std::int64_t> degree_sequence(const PartiteHypergraph& h, std::int64_t part) {
    if (part < 0 || part >= h.r) throw std::invalid_argument("degree_sequence: part out of range");
    std::vector<std::int64_t> deg(
        static_cast<std::size_t>(h.part_sizes[static_cast<std::size_t>(part)]), 0);
    for (const auto& e : h.edges) ++deg[static_cast<std::size_t>(e[static_cast<std::size_t>(part)])];
    return deg;
}

// ---------------------------------------------------------------------------
// BipartiteGraph: two parts, adjacency stored as one bit-vector over B per
// A-vertex.
// ---------------------------------------------------------------------------
struct BipartiteGraph {
    std::int64_t n_a = 0;
    std::int64_t n_b = 0;
    std::vector<BitVec> adj;  // n_a rows over B

    static BipartiteGraph make(std::int64_t n_a, std::int64_t n_b,
                               const std::vector<EdgeAB>& edges = {}) {
        if (n_a < 1 || n_b < 1) throw std::invalid_argument("bipartite: parts must be nonempty");
        BipartiteGraph g;
        g.n_a = n_a;
        g.n_b = n_b;
        g.adj.assign(static_cast<std::size_t>(n_a), BitVec(n_b));
        for (auto [a, b] : edges) {
            if (a < 0 || a >= n_a || b < 0 || b >= n_b)
                throw std::invalid_argument("bipartite: edge index out of range");
            g.adj[static_cast<std::size_t>(a)].set(b);
        }
        return g;
    }

    bool has_edge(Vertex a, Vertex b) const { return adj[static_cast<std::size_t>(a)].test(b); }
    std::int64_t degree(Vertex a) const { return adj[static_cast<std::size_t>(a)].count(); }

    std::int64_t edge_count() const {
        std::int64_t c = 0;
        for (const auto& row : adj) c += row.count();
        return c;
    }

    // canonical edge list (lexicographic)
    std::vector<EdgeAB> edge_list() const {
        std::vector<EdgeAB> out;
        for (std::int64_t a = 0; a < n_a; ++a)
            for (auto b : adj[static_cast<std::size_t>(a)].to_indices()) out.emplace_back(a, b);
        return out;
    }

    PartiteHypergraph to_hypergraph() const {
        std::vector<Edge> edges;
        for (auto [a, b] : edge_list()) edges.push_back({a, b});
        return build_hypergraph(2, {n_a, n_b}, std::move(edges));
    }

    static BipartiteGraph from_hypergraph(const PartiteHypergraph& h) {
        if (h.r != 2) throw std::invalid_argument("bipartite: hypergraph arity is not 2");
        std::vector<EdgeAB> edges;
        edges.reserve(h.edges.size());
        for (const auto& e : h.edges) edges.emplace_back(e[0], e[1]);
        return make(h.part_sizes[0], h.part_sizes[1], edges);
    }

    bool operator==(const BipartiteGraph&) const = default;
};

// ---------------------------------------------------------------------------
// MatchingFamily: a bipartite graph plus a partition of its edge set into
// labeled matchings. Empty matchings are legal and kept.
// ---------------------------------------------------------------------------
struct MatchingFamily {
    BipartiteGraph graph;
    std::vector<std::vector<EdgeAB>> matchings;  // each sorted lexicographically

    std::int64_t matching_count() const { return static_cast<std::int64_t>(matchings.size()); }

    bool operator==(const MatchingFamily&) const = default;
};

// Structural invariants: every block is a matching over in-range vertices,
// blocks are pairwise disjoint, and together they cover the edge set exactly.
// Returns an explanation for the first breach, nullopt if valid.
inline std::optional<std::string> family_structure_error(const MatchingFamily& f) {
    const auto& g = f.graph;
    std::vector<EdgeAB> all;
    std::vector<char> seen_a(static_cast<std::size_t>(g.n_a));
    std::vector<char> seen_b(static_cast<std::size_t>(g.n_b));
    for (std::size_t c = 0; c < f.matchings.size(); ++c) {
        std::fill(seen_a.begin(), seen_a.end(), 0);
        std::fill(seen_b.begin(), seen_b.end(), 0);
        for (auto [a, b] : f.matchings[c]) {
            if (a < 0 || a >= g.n_a || b < 0 || b >= g.n_b)
                return "matching " + std::to_string(c) + ": edge index out of range";
            if (!g.has_edge(a, b))
                return "matching " + std::to_string(c) + ": edge not in graph";
            if (seen_a[static_cast<std::size_t>(a)] || seen_b[static_cast<std::size_t>(b)])
                return "matching " + std::to_string(c) + ": repeated vertex";
            seen_a[static_cast<std::size_t>(a)] = seen_b[static_cast<std::size_t>(b)] = 1;
            all.emplace_back(a, b);
        }
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        return "edge appears in more than one matching";
    if (static_cast<std::int64_t>(all.size()) != g.edge_count())
        return "matchings do not cover the edge set";
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Serialization. Canonical form: edges sorted lexicographically, matchings
// sorted within each block, compact JSON with fixed key order.
// ---------------------------------------------------------------------------
inline Json to_json(const PartiteHypergraph& h) {
    Json j;
    j["r"] = h.r;
    j["part_sizes"] = h.part_sizes;
    Json edges = Json::array();
    for (const auto& e : h.edges) edges.push_back(e);
    j["edges"] = std::move(edges);
    return j;
}

inline std::string encode(const PartiteHypergraph& h) { return to_json(h).dump(); }

inline Json to_json(const MatchingFamily& f) {
    Json j = to_json(f.graph.to_hypergraph());
    Json ms = Json::array();
    for (const auto& m : f.matchings) {
        Json block = Json::array();
        for (auto [a, b] : m) block.push_back(Json::array({a, b}));
        ms.push_back(std::move(block));
    }
    j["matchings"] = std::move(ms);
    return j;
}

inline std::string encode(const MatchingFamily& f) { return to_json(f).dump(); }

namespace detail {

inline Json parse_document(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DecodeError(std::string("malformed JSON: ") + e.what());
    }
}

inline std::int64_t get_int(const Json& j, const char* key) {
    if (!j.contains(key)) throw DecodeError(std::string("missing key: ") + key);
    if (!j[key].is_number_integer()) throw DecodeError(std::string("not an integer: ") + key);
    return j[key].get<std::int64_t>();
}

inline PartiteHypergraph hypergraph_from_json(const Json& j) {
    std::int64_t r = get_int(j, "r");
    if (r < 2) throw DecodeError("r must be at least 2");
    if (!j.contains("part_sizes") || !j["part_sizes"].is_array())
        throw DecodeError("missing part_sizes");
    std::vector<std::int64_t> part_sizes;
    for (const auto& x : j["part_sizes"]) {
        if (!x.is_number_integer()) throw DecodeError("part_sizes entries must be integers");
        part_sizes.push_back(x.get<std::int64_t>());
        if (part_sizes.back() < 1) throw DecodeError("part sizes must be positive");
    }
    if (static_cast<std::int64_t>(part_sizes.size()) != r)
        throw DecodeError("part_sizes length differs from r");
    if (!j.contains("edges") || !j["edges"].is_array()) throw DecodeError("missing edges");
    std::vector<Edge> edges;
    for (const auto& ej : j["edges"]) {
        if (!ej.is_array()) throw DecodeError("edge must be an array");
        Edge e;
        for (const auto& x : ej) {
            if (!x.is_number_integer()) throw DecodeError("edge entries must be integers");
            e.push_back(x.get<std::int64_t>());
        }
        try {
            check_edge_shape(e, r, part_sizes);
        } catch (const std::invalid_argument& ex) {
            throw DecodeError(ex.what());
        }
        edges.push_back(std::move(e));
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw DecodeError("duplicate edge");  // files are contracts, dedup is for builders
    PartiteHypergraph h;
    h.r = r;
    h.part_sizes = std::move(part_sizes);
    h.edges = std::move(edges);
    return h;
}

}  // namespace detail

inline PartiteHypergraph decode_hypergraph(const std::string& text) {
    return detail::hypergraph_from_json(detail::parse_document(text));
}

inline MatchingFamily decode_family(const std::string& text) {
    Json j = detail::parse_document(text);
    PartiteHypergraph h = detail::hypergraph_from_json(j);
    if (h.r != 2) throw DecodeError("matching family graph must be bipartite");
    MatchingFamily f;
    f.graph = BipartiteGraph::from_hypergraph(h);
    if (!j.contains("matchings") || !j["matchings"].is_array())
        throw DecodeError("missing matchings");
    for (const auto& mj : j["matchings"]) {
        if (!mj.is_array()) throw DecodeError("matching must be an array");
        std::vector<EdgeAB> block;
        for (const auto& ej : mj) {
            if (!ej.is_array() || ej.size() != 2 || !ej[0].is_number_integer() ||
                !ej[1].is_number_integer())
                throw DecodeError("matching edge must be a pair of integers");
            block.emplace_back(ej[0].get<std::int64_t>(), ej[1].get<std::int64_t>());
        }
        std::sort(block.begin(), block.end());
        f.matchings.push_back(std::move(block));
    }
    if (auto err = family_structure_error(f)) throw DecodeError(*err);
    return f;
}

}  // namespace zlift
