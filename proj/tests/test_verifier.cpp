#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"

using namespace zlift;

namespace {
// cross-check a claimed witness by hand: shapes, ranges, and all transversals
void check_witness_by_hand(const PartiteHypergraph& h, const std::vector<std::int64_t>& sizes,
                           const Witness& w) {
    REQUIRE(w.size() == static_cast<std::size_t>(h.r));
    for (std::size_t p = 0; p < w.size(); ++p) {
        CHECK(static_cast<std::int64_t>(w[p].size()) == sizes[p]);
        CHECK(std::is_sorted(w[p].begin(), w[p].end()));
        for (auto v : w[p]) {
            CHECK(v >= 0);
            CHECK(v < h.part_sizes[p]);
        }
    }
    std::vector<std::size_t> idx(w.size(), 0);
    for (;;) {
        Edge e;
        for (std::size_t p = 0; p < w.size(); ++p) e.push_back(w[p][idx[p]]);
        CHECK(std::binary_search(h.edges.begin(), h.edges.end(), e));
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == w[pos].size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
    }
}

PartiteHypergraph complete_partite(const std::vector<std::int64_t>& parts) {
    std::vector<Edge> edges;
    std::vector<std::int64_t> idx(parts.size(), 0);
    for (;;) {
        edges.push_back(Edge(idx.begin(), idx.end()));
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == parts[pos]) idx[pos++] = 0;
        if (pos == idx.size()) break;
    }
    return build_hypergraph(static_cast<std::int64_t>(parts.size()), parts, edges);
}
}  // namespace

TEST_CASE("binomial_ld on known values") {
    CHECK(binomial_ld(5, 2) == 10.0L);
    CHECK(binomial_ld(54, 2) == 1431.0L);
    CHECK(binomial_ld(4, 0) == 1.0L);
    CHECK(binomial_ld(4, 4) == 1.0L);
    CHECK(binomial_ld(3, 4) == 0.0L);
}

TEST_CASE("complete bipartite graph yields the least witness") {
    auto h = complete_partite({2, 2});
    auto w = contains_partite_copy(h, {2, 2});
    REQUIRE(w.has_value());
    CHECK(*w == Witness{{0, 1}, {0, 1}});
    check_witness_by_hand(h, {2, 2}, *w);

    auto big = complete_partite({4, 5});
    w = contains_partite_copy(big, {2, 3});
    REQUIRE(w.has_value());
    CHECK(*w == Witness{{0, 1}, {0, 1, 2}});
}

TEST_CASE("the Fano plane has no K(2,2)") {
    auto h = projective_plane_incidence(2).to_hypergraph();
    CHECK_FALSE(contains_partite_copy(h, {2, 2}).has_value());
    CHECK(contains_partite_copy(h, {1, 3}).has_value());  // lines have 3 points
    CHECK_FALSE(contains_partite_copy(h, {1, 4}).has_value());
}

TEST_CASE("three-partite copies are found and rechecked") {
    auto h = complete_partite({2, 2, 2});
    auto w = contains_partite_copy(h, {2, 2, 2});
    REQUIRE(w.has_value());
    CHECK(*w == Witness{{0, 1}, {0, 1}, {0, 1}});

    // removing any single edge kills the full copy
    for (const auto& gone : h.edges) {
        auto edges = h.edges;
        edges.erase(std::find(edges.begin(), edges.end(), gone));
        auto damaged = build_hypergraph(3, {2, 2, 2}, edges);
        CHECK_FALSE(contains_partite_copy(damaged, {2, 2, 2}).has_value());
        CHECK(contains_partite_copy(damaged, {1, 2, 2}).has_value());
    }
}

TEST_CASE("singleton sizes degenerate to edge search") {
    auto h = build_hypergraph(3, {3, 3, 3}, {{1, 2, 0}, {2, 0, 1}});
    auto w = contains_partite_copy(h, {1, 1, 1});
    REQUIRE(w.has_value());
    CHECK(*w == Witness{{1}, {2}, {0}});  // lex-least edge
    CHECK_FALSE(contains_partite_copy(build_hypergraph(2, {2, 2}, {}), {1, 1}).has_value());
}

TEST_CASE("size validation") {
    auto h = complete_partite({2, 3});
    CHECK_THROWS_AS(contains_partite_copy(h, {2}), std::invalid_argument);
    CHECK_THROWS_AS(contains_partite_copy(h, {2, 4}), std::invalid_argument);
    CHECK_THROWS_AS(contains_partite_copy(h, {0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(contains_partite_copy(h, {3, 3}), std::invalid_argument);
    CHECK_THROWS_AS(naive_oracle(h, {2, 4}), std::invalid_argument);
}

TEST_CASE("naive oracle refuses oversized instances") {
    auto h = complete_partite({40, 40});
    CHECK_THROWS_WITH(naive_oracle(h, {15, 15}),
                      Catch::Matchers::ContainsSubstring("too large"));
}

TEST_CASE("fast search agrees with the naive oracle on random instances") {
    th::Rng rng(47);
    int found = 0, missing = 0;
    for (int it = 0; it < 250; ++it) {
        std::int64_t r = th::rand_int(rng, 2, 3);
        std::vector<std::int64_t> parts, sizes;
        for (std::int64_t i = 0; i < r; ++i) {
            parts.push_back(th::rand_int(rng, 1, 6));
            sizes.push_back(th::rand_int(rng, 1, parts.back()));
        }
        auto h = th::random_hypergraph(rng, parts, 0.55);
        auto fast = contains_partite_copy(h, sizes);
        auto slow = naive_oracle(h, sizes);
        CHECK(fast.has_value() == slow.has_value());
        if (fast) {
            check_witness_by_hand(h, sizes, *fast);
            ++found;
        } else {
            ++missing;
        }
    }
    // the sweep must exercise both outcomes to mean anything
    CHECK(found > 20);
    CHECK(missing > 20);
}

TEST_CASE("shrinking the requested sizes preserves existence") {
    th::Rng rng(53);
    for (int it = 0; it < 80; ++it) {
        std::vector<std::int64_t> parts{th::rand_int(rng, 2, 6), th::rand_int(rng, 2, 6)};
        auto h = th::random_hypergraph(rng, parts, 0.6);
        std::vector<std::int64_t> sizes{th::rand_int(rng, 1, parts[0]),
                                        th::rand_int(rng, 1, parts[1])};
        if (!contains_partite_copy(h, sizes)) continue;
        for (std::int64_t ds = 0; ds < sizes[0]; ++ds)
            for (std::int64_t dt = 0; dt < sizes[1]; ++dt)
                CHECK(contains_partite_copy(h, {sizes[0] - ds, sizes[1] - dt}).has_value());
    }
}

TEST_CASE("deletion helper really produces pattern-free graphs") {
    th::Rng rng(59);
    for (int it = 0; it < 30; ++it) {
        std::vector<std::int64_t> parts{th::rand_int(rng, 3, 7), th::rand_int(rng, 3, 7)};
        auto h = th::random_hypergraph(rng, parts, 0.7);
        th::make_free_by_deletion(h, {2, 2});
        CHECK_FALSE(contains_partite_copy(h, {2, 2}).has_value());
        CHECK_FALSE(naive_oracle(h, {2, 2}).has_value());
    }
}

TEST_CASE("kst_exponent computes r - 1/s") {
    CHECK(kst_exponent(ForbiddenPattern::make({2, 2}, 7)) == Rational(11, 4));
    CHECK(kst_exponent(ForbiddenPattern::make({4}, 7)) == Rational(7, 4));
    CHECK(kst_exponent(ForbiddenPattern::make({1}, 3)) == Rational(1));
    CHECK(kst_exponent(ForbiddenPattern::make({2}, 2)) == Rational(3, 2));
    CHECK(kst_exponent(ForbiddenPattern::make({1, 1, 1}, 3)) == Rational(3));
}

TEST_CASE("estimate_verify_words matches the hand formula") {
    auto h = complete_partite({19, 38, 54});
    // C(19,2)*2 * C(38,2)*2 * words(54)
    double expect = 171.0 * 2 * 703.0 * 2 * 1;
    CHECK(estimate_verify_words(h, {2, 2, 7}) == Catch::Approx(expect));
    auto g = complete_partite({57, 57});
    CHECK(estimate_verify_words(g, {2, 2}) == Catch::Approx(1596.0 * 2 * 1));
    CHECK_THROWS_AS(estimate_verify_words(g, {2, 58}), std::invalid_argument);
}
