#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "listcol/oracles.hpp"
#include "listcol/solver_log2.hpp"

using namespace listcol;

TEST_CASE("two forced vertices clash") {
    auto inst = parse_instance_text("2 1\n1 2\n1 1\n1 1\n");
    WorkspaceMeter meter(2);
    CHECK(!solve_log2(inst, meter));
}

TEST_CASE("leaf base cases through the subtree entry point") {
    auto inst = parse_instance_text("1 0\n1 1\n");
    auto t = RootedTree::from_graph(inst.graph);
    TreeIndex idx(t);
    WorkspaceMeter meter(1);
    CHECK(!solve_log2_subtree(inst, t, idx, 1, 1, meter));   // the only colour is banned
    CHECK(solve_log2_subtree(inst, t, idx, 1, -1, meter));
    CHECK(solve_log2_subtree(inst, t, idx, 1, 0, meter));
    CHECK_THROWS_AS(solve_log2_subtree(inst, t, idx, 1, 2, meter), Error);

    // a leaf with a two-colour list always keeps the colour the ban spares
    auto wide = parse_instance_text("2 1\n1 2\n2 1 2\n2 1 2\n");
    auto tw = RootedTree::from_graph(wide.graph);
    TreeIndex idxw(tw);
    CHECK(solve_log2_subtree(wide, tw, idxw, 2, 1, meter));
    CHECK(solve_log2_subtree(wide, tw, idxw, 2, 2, meter));
}

TEST_CASE("agrees with brute force across the oracle corpus") {
    for (std::uint64_t s = 1; s <= 10000; ++s) {
        auto inst = oracle_corpus_instance(s);
        WorkspaceMeter meter(inst.graph.n);
        bool expected = brute_force_solve(inst).has_value();
        CHECK(solve_log2(inst, meter) == expected);
    }
}

TEST_CASE("subtree decisions match the exhaustive oracle for every constraint") {
    for (std::uint64_t s = 1; s <= 200; ++s) {
        auto inst = random_instance(1 + s % 8, 1 + s % 4, s);
        auto t = RootedTree::from_graph(inst.graph);
        TreeIndex idx(t);
        WorkspaceMeter meter(inst.graph.n);
        for (int v = 1; v <= inst.graph.n; ++v)
            for (int p = -1; p <= static_cast<int>(inst.lists[v].size()); ++p) {
                int avoid = p >= 1 ? inst.lists[v][p - 1] : 0;
                CHECK(solve_log2_subtree(inst, t, idx, v, p, meter) ==
                      brute_force_subtree(inst, t, v, avoid));
            }
    }
}

TEST_CASE("a bare path runs in a single reused frame") {
    Instance inst;
    inst.graph.n = 1024;
    for (int v = 2; v <= inst.graph.n; ++v) inst.graph.edges.emplace_back(v - 1, v);
    inst.lists.assign(inst.graph.n + 1, {1, 2});
    inst.lists[0] = {};
    WorkspaceMeter meter(inst.graph.n);
    meter.watch("log2.call");
    int pushes = 0;
    meter.trace = [&](const std::string& e) { pushes += e.rfind("push", 0) == 0; };
    CHECK(solve_log2(inst, meter));
    CHECK(pushes == 1);  // heavy descent reuses the frame instead of stacking
    CHECK(meter.watched_peak("log2.call") == 6 * bits_for_max(1024) + 2);
}

TEST_CASE("light recursion depth stays under log2 n") {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        int n = 2048;
        auto inst = random_instance(n, 4, s, 1);
        WorkspaceMeter meter(n);
        Log2Stats stats;
        solve_log2(inst, meter, &stats);
        CHECK(stats.max_depth <= static_cast<int>(std::log2(n)));
    }
}

TEST_CASE("peak space is a small multiple of log squared") {
    for (int n : {256, 1024, 4096}) {
        for (std::uint64_t s = 1; s <= 5; ++s) {
            auto inst = random_instance(n, 4, s, 1);
            WorkspaceMeter meter(n);
            solve_log2(inst, meter);
            long long b = bits_for_max(n);
            CHECK(meter.peak_persistent() <= 10 * b * b);
            CHECK(!meter.violated());
        }
    }
}
