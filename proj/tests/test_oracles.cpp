#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "listcol/oracles.hpp"

using namespace listcol;

TEST_CASE("forced conflicts and forced witnesses on two vertices") {
    auto clash = parse_instance_text("2 1\n1 2\n1 1\n1 1\n");
    CHECK(!brute_force_solve(clash).has_value());

    auto forced = parse_instance_text("2 1\n1 2\n1 1\n2 1 2\n");
    auto w = brute_force_solve(forced);
    REQUIRE(w.has_value());
    CHECK((*w)[1] == 1);
    CHECK((*w)[2] == 2);
    validate_colouring(forced, *w);
}

TEST_CASE("empty list means no colouring") {
    auto inst = parse_instance_text("1 0\n0\n");
    CHECK(!brute_force_solve(inst).has_value());
    CHECK(!dp_solve(inst).has_value());
}

TEST_CASE("oracle budget is enforced and raisable") {
    // a 30-vertex path with 3-colour lists: the raw product is ~2*10^14
    Instance inst;
    inst.graph.n = 30;
    for (int v = 2; v <= 30; ++v) inst.graph.edges.emplace_back(v - 1, v);
    inst.lists.assign(31, {1, 2, 3});
    inst.lists[0] = {};
    CHECK_THROWS_WITH_AS(brute_force_solve(inst), doctest::Contains("too large"), Error);
    auto w = brute_force_solve(inst, 1e15);  // pruning makes this instant
    REQUIRE(w.has_value());
    validate_colouring(inst, *w);
}

TEST_CASE("dp walks the textbook example") {
    auto inst = parse_instance_text("3 2\n1 2\n2 3\n1 1\n2 1 2\n1 1\n");
    auto w = dp_solve(inst);
    REQUIRE(w.has_value());
    CHECK((*w)[1] == 1);
    CHECK((*w)[2] == 2);
    CHECK((*w)[3] == 1);
}

TEST_CASE("star with identical singleton lists fails") {
    auto inst = parse_instance_text("4 3\n1 2\n1 3\n1 4\n1 1\n1 1\n1 1\n1 1\n");
    CHECK(!dp_solve(inst).has_value());
    CHECK(!brute_force_solve(inst).has_value());
}

TEST_CASE("dp rejects non-trees") {
    Instance inst;
    inst.graph.n = 3;
    inst.graph.edges = {{1, 2}, {2, 3}, {1, 3}};
    inst.lists = {{}, {1}, {2}, {3}};
    CHECK_THROWS_AS(dp_solve(inst), Error);
    CHECK(brute_force_solve(inst).has_value());  // the exhaustive oracle still runs
}

TEST_CASE("dp agrees with brute force across the oracle corpus") {
    int yes = 0;
    for (std::uint64_t s = 1; s <= 10000; ++s) {
        auto inst = oracle_corpus_instance(s);
        auto brute = brute_force_solve(inst);
        auto dp = dp_solve(inst);
        REQUIRE(brute.has_value() == dp.has_value());
        if (dp) {
            validate_colouring(inst, *dp);
            validate_colouring(inst, *brute);
            ++yes;
        }
    }
    CHECK(yes > 1000);  // corpus is not degenerate
    CHECK(yes < 10000);
}

TEST_CASE("subtree oracles agree on every vertex and constraint") {
    for (std::uint64_t s = 1; s <= 200; ++s) {
        auto inst = random_instance(1 + s % 8, 1 + s % 4, s);
        auto t = RootedTree::from_graph(inst.graph);
        for (int v = 1; v <= inst.graph.n; ++v)
            for (int avoid = 0; avoid <= inst.graph.n; ++avoid)
                CHECK(brute_force_subtree(inst, t, v, avoid) ==
                      dp_subtree(inst, t, v, avoid));
    }
}

TEST_CASE("dp scales to a million vertices") {
    auto inst = random_instance(1000000, 4, 11, 1);
    auto w = dp_solve(inst);
    if (w) validate_colouring(inst, *w);
}
