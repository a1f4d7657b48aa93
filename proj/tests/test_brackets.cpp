#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "listcol/brackets.hpp"

using namespace listcol;

TEST_CASE("bracket count per subtree size") {
    CHECK(bracket_params(1).M == 1);
    CHECK(bracket_params(3).M == 1);
    CHECK(bracket_params(4).M == 1);
    CHECK(bracket_params(8).M == 1);
    CHECK(bracket_params(9).M == 2);
    CHECK(bracket_params(32).M == 2);
    CHECK(bracket_params(33).M == 3);
    CHECK(bracket_params(512).M == 3);
    CHECK(bracket_params(513).M == 4);
    CHECK(bracket_params(1024).M == 4);
    CHECK_THROWS_AS(bracket_params(0), Error);
}

TEST_CASE("tiny subtrees keep a usable residual interval") {
    // an n_v=3 star has one light leaf, so the residual must reach it;
    // n_v <= 2 has no light subtrees and the interval collapses to empty
    CHECK(bracket_interval(bracket_params(3), 1) == std::pair{1LL, 2LL});
    CHECK(bracket_index(bracket_params(3), 1) == 1);
    CHECK(bracket_interval(bracket_params(2), 1) == std::pair{1LL, 1LL});
    CHECK(bracket_interval(bracket_params(1), 1) == std::pair{1LL, 1LL});
    CHECK_THROWS_AS(bracket_index(bracket_params(2), 1), Error);
}

TEST_CASE("intervals for a 1024-vertex subtree") {
    auto bp = bracket_params(1024);
    REQUIRE(bp.M == 4);
    CHECK(bracket_interval(bp, 1) == std::pair{256LL, 512LL});
    CHECK(bracket_interval(bp, 2) == std::pair{64LL, 256LL});
    CHECK(bracket_interval(bp, 3) == std::pair{4LL, 64LL});
    CHECK(bracket_interval(bp, 4) == std::pair{1LL, 4LL});

    CHECK(bracket_index(bp, 300) == 1);
    CHECK(bracket_index(bp, 100) == 2);
    CHECK(bracket_index(bp, 4) == 3);
    CHECK(bracket_index(bp, 2) == 4);
    CHECK_THROWS_AS(bracket_index(bp, 0), Error);
    CHECK_THROWS_AS(bracket_index(bp, 512), Error);  // beyond (n_v-1)/2
}

TEST_CASE("every light size falls in exactly one interval") {
    for (long long n_v = 1; n_v <= 4096; ++n_v) {
        auto bp = bracket_params(n_v);
        // intervals tile [1, ceil(n_v/2)) without gaps
        CHECK(bracket_interval(bp, bp.M).first == 1);
        for (int j = 1; j < bp.M; ++j)
            CHECK(bracket_interval(bp, j).first == bracket_interval(bp, j + 1).second);
        for (long long size = 1; 2 * size <= n_v - 1; ++size) {
            int j = bracket_index(bp, size);
            auto [lo, hi] = bracket_interval(bp, j);
            CHECK(lo <= size);
            CHECK(size < hi);
        }
    }
}

TEST_CASE("few light subtrees live in the large brackets") {
    // sizes in brackets 1..j are >= n_v/2^(2^j), so at most 2^(2^j) of them fit
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto inst = random_instance(150, 0, seed);
        auto t = RootedTree::from_graph(inst.graph);
        TreeIndex idx(t);
        for (int v = 1; v <= t.n; ++v) {
            auto bp = bracket_params(idx.size[v]);
            for (int j = 1; j < bp.M; ++j) {
                long long count = 0;
                for (int u : t.kids[v])
                    if (u != idx.heavy[v] && bracket_index(bp, idx.size[u]) <= j) ++count;
                CHECK(count <= bracket_pow(j));
            }
        }
    }
}

TEST_CASE("position code shape") {
    PosCode code{1, 1, 2};
    CHECK(code.length() == 4);
    CHECK(code.bits() == "0100");
    PosCode residual{2, 3, 5};
    CHECK(residual.bits() == "00100010");
}

TEST_CASE("first heavy-path vertex encodes to itself") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto inst = random_instance(100, 0, seed);
        auto t = RootedTree::from_graph(inst.graph);
        TreeIndex idx(t);
        for (int v = 1; v <= t.n; ++v) {
            auto code = encode_pos(idx, v, 1);
            CHECK(decode_pos(idx, v, code) == v);
        }
    }
}

TEST_CASE("codes are a bijection along every heavy path") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto inst = random_instance(200, 0, seed);
        auto t = RootedTree::from_graph(inst.graph);
        TreeIndex idx(t);
        for (int v = 1; v <= t.n; ++v) {
            auto bp = bracket_params(idx.size[v]);
            std::set<std::string> seen;
            for (int i = 1;; ++i) {
                int w;
                try {
                    w = heavy_path_vertex(idx, v, i);
                } catch (const Error&) {
                    break;
                }
                auto code = encode_pos(idx, v, i);
                CHECK(decode_pos(idx, v, code) == w);
                CHECK(seen.insert(code.bits()).second);  // no two (v,i) collide
                if (code.j < bp.M)
                    CHECK(code.length() == code.j + 1 + (1 << code.j));
                else  // residual rank field is one bit wider than the others
                    CHECK(code.length() == bp.M + 1 + (1 << bp.M) + 1);
            }
        }
        CHECK_THROWS_AS(encode_pos(idx, 1, t.n + 1), Error);
    }
}

TEST_CASE("a path is all residual bracket") {
    Graph g;
    g.n = 8;
    for (int v = 2; v <= 8; ++v) g.edges.emplace_back(v - 1, v);
    auto t = RootedTree::from_graph(g);
    TreeIndex idx(t);
    auto bp = bracket_params(8);
    REQUIRE(bp.M == 1);
    for (int i = 1; i <= 8; ++i) {
        auto code = encode_pos(idx, 1, i);
        CHECK(code.j == 1);
        CHECK(code.rank == i);  // ranks climb past 2^(2^1), hence the wider field
        CHECK(decode_pos(idx, 1, code) == i);
    }
}
