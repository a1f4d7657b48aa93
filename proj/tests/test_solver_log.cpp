#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "ladder_oracle.hpp"
#include "listcol/brackets.hpp"
#include "listcol/oracles.hpp"
#include "listcol/solver_log.hpp"

using namespace listcol;

TEST_CASE("two forced vertices clash") {
    auto inst = parse_instance_text("2 1\n1 2\n1 1\n1 1\n");
    WorkspaceMeter meter(2);
    CHECK(!solve_log(inst, meter));
}

TEST_CASE("leaf base cases through the subtree entry point") {
    auto inst = parse_instance_text("2 1\n1 2\n2 1 2\n1 1\n");
    auto t = RootedTree::from_graph(inst.graph);
    TreeIndex idx(t);
    WorkspaceMeter meter(2);

    CHECK(solve_log_subtree(inst, t, idx, 2, LogConstraint::nothing(), meter) == Probe::yes);
    CHECK(solve_log_subtree(inst, t, idx, 2, LogConstraint::avoid(1), meter) == Probe::no);
    CHECK(solve_log_subtree(inst, t, idx, 2, LogConstraint::avoid(2), meter) == Probe::yes);

    // positional constraints against the parent's two-colour list
    CHECK(solve_log_subtree(inst, t, idx, 2, LogConstraint::at(1, 1, 2), meter) == Probe::no);
    CHECK(solve_log_subtree(inst, t, idx, 2, LogConstraint::at(1, 2, 2), meter) == Probe::yes);
    CHECK(solve_log_subtree(inst, t, idx, 2, LogConstraint::at(1, 3, 2), meter) ==
          Probe::phantom);

    auto empty = parse_instance_text("1 0\n0\n");
    auto te = RootedTree::from_graph(empty.graph);
    TreeIndex idxe(te);
    CHECK(solve_log_subtree(empty, te, idxe, 1, LogConstraint::nothing(), meter) == Probe::no);
    CHECK(solve_log_subtree(empty, te, idxe, 1, LogConstraint::avoid(7), meter) == Probe::no);

    // a leaf with two colours answers yes whatever the constraint names
    auto wide = parse_instance_text("2 1\n1 2\n2 1 2\n2 1 2\n");
    auto tw = RootedTree::from_graph(wide.graph);
    TreeIndex idxw(tw);
    CHECK(solve_log_subtree(wide, tw, idxw, 2, LogConstraint::avoid(1), meter) == Probe::yes);
    CHECK(solve_log_subtree(wide, tw, idxw, 2, LogConstraint::at(1, 3, 2), meter) ==
          Probe::yes);
}

TEST_CASE("entry validation rejects malformed constraints") {
    auto inst = parse_instance_text("2 1\n1 2\n2 1 2\n1 1\n");
    auto t = RootedTree::from_graph(inst.graph);
    TreeIndex idx(t);
    WorkspaceMeter meter(2);
    CHECK_THROWS_AS(solve_log_subtree(inst, t, idx, 0, LogConstraint::nothing(), meter), Error);
    CHECK_THROWS_AS(solve_log_subtree(inst, t, idx, 3, LogConstraint::nothing(), meter), Error);
    CHECK_THROWS_AS(solve_log_subtree(inst, t, idx, 1, LogConstraint::at(0, 1, 2), meter),
                    Error);  // the root has no parent list
    CHECK_THROWS_AS(solve_log_subtree(inst, t, idx, 2, LogConstraint::at(2, 1, 2), meter),
                    Error);  // level above the parent's ladder
    CHECK_THROWS_AS(solve_log_subtree(inst, t, idx, 2, LogConstraint::at(1, 3, 1), meter),
                    Error);  // declared width cannot hold the position
}

// A ten-colour root, one forced five-vertex path per of the first two
// colours, and one forced leaf per remaining colour. The heavy path kills
// colour 1, the light path kills colour 2, the leaves kill the rest: the
// root is critical on colour 1, and the heavy path then clashes. A solver
// that folds "position past the list end" into a plain no walks eight
// phantom positions here and bails out to non-critical instead.
static Instance critical_gadget() {
    Instance inst;
    inst.graph.n = 19;
    auto edge = [&](int u, int v) { inst.graph.edges.emplace_back(u, v); };
    edge(1, 2), edge(2, 3), edge(3, 4), edge(4, 5), edge(5, 6);
    edge(1, 7), edge(7, 8), edge(8, 9), edge(9, 10), edge(10, 11);
    for (int v = 12; v <= 19; ++v) edge(1, v);
    inst.lists.assign(20, {});
    inst.lists[1] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    inst.lists[2] = {1, 11};
    inst.lists[3] = {11};
    inst.lists[4] = {12};
    inst.lists[5] = {13};
    inst.lists[6] = {14};
    inst.lists[7] = {2, 15};
    inst.lists[8] = {15};
    inst.lists[9] = {16};
    inst.lists[10] = {17};
    inst.lists[11] = {18};
    for (int v = 12; v <= 19; ++v) inst.lists[v] = {v - 9};
    return inst;
}

TEST_CASE("phantom positions stay distinguishable from refusals") {
    auto inst = critical_gadget();
    CHECK(!brute_force_solve(inst).has_value());

    auto t = RootedTree::from_graph(inst.graph);
    TreeIndex idx(t);
    CHECK(idx.heavy[1] == 2);

    WorkspaceMeter meter(inst.graph.n);
    LogStats stats;
    CHECK(!solve_log(inst, meter, &stats));

    auto c = classify_log(inst, t, idx, 1, LogConstraint::nothing(), meter);
    CHECK(c.kind == Trichotomy::critical);
    CHECK(c.p0 == 1);
    CHECK(expected_classification(inst, t, idx, 1, LogConstraint::nothing()).kind ==
          Trichotomy::critical);
}

// A root with twenty forced leaves and all twenty colours listed. The
// second usable colour is hunted across nineteen refused positions, past
// the bailout threshold of the residual bracket; bailing out there would
// report three usable colours where there is one. The scan must instead
// run into the end of the list and conclude the root is critical.
static Instance saturated_star() {
    Instance inst;
    inst.graph.n = 21;
    inst.lists.assign(22, {});
    for (int v = 2; v <= 21; ++v) {
        inst.graph.edges.emplace_back(1, v);
        inst.lists[v] = {v - 1};
    }
    for (int c = 1; c <= 20; ++c) inst.lists[1].push_back(c);
    return inst;
}

TEST_CASE("the residual bracket never uses the bailout") {
    auto inst = saturated_star();
    CHECK(!brute_force_solve(inst).has_value());

    auto t = RootedTree::from_graph(inst.graph);
    TreeIndex idx(t);
    CHECK(noncritical_threshold(bracket_params(idx.size[1]).M) <
          static_cast<long long>(inst.lists[1].size()));

    WorkspaceMeter meter(inst.graph.n);
    CHECK(!solve_log(inst, meter));

    auto c = classify_log(inst, t, idx, 1, LogConstraint::nothing(), meter);
    CHECK(c.kind == Trichotomy::critical);
    CHECK(c.p0 == 1);
}

TEST_CASE("agrees with brute force across the oracle corpus") {
    for (std::uint64_t s = 1; s <= 10000; ++s) {
        auto inst = oracle_corpus_instance(s);
        WorkspaceMeter meter(inst.graph.n);
        LogStats stats;
        bool expected = brute_force_solve(inst).has_value();
        CHECK(solve_log(inst, meter, &stats) == expected);
        if (inst.graph.n >= 2)
            CHECK(stats.max_r <= static_cast<int>(std::log2(inst.graph.n)));
        else
            CHECK(stats.max_r == 0);
        CHECK(!meter.violated());
    }
}

TEST_CASE("subtree probes and classifications match the oracle everywhere") {
    for (std::uint64_t s = 1; s <= 200; ++s) {
        auto inst = random_instance(1 + s % 8, 1 + s % 4, s);
        auto t = RootedTree::from_graph(inst.graph);
        TreeIndex idx(t);
        WorkspaceMeter meter(inst.graph.n);

        std::vector<LogConstraint> shared = {LogConstraint::nothing()};
        for (int c = 1; c <= inst.graph.n + 1; ++c) shared.push_back(LogConstraint::avoid(c));

        for (int v = 1; v <= inst.graph.n; ++v) {
            std::vector<LogConstraint> qs = shared;
            if (int vp = t.parent[v]; vp != 0) {
                int levels = bracket_params(idx.size[vp]).M;
                long long span = static_cast<long long>(inst.lists[vp].size()) + 2;
                for (int level = 0; level <= levels; ++level)
                    for (long long pos = 1; pos <= span; ++pos)
                        qs.push_back(LogConstraint::at(level, pos, bits_for_max(span)));
            }
            for (const auto& q : qs) {
                int forbidden = resolve_forbidden(inst, t, idx, v, q);
                Probe got = solve_log_subtree(inst, t, idx, v, q, meter);
                if (forbidden >= 0) {
                    // a real constraint gets the exact answer, never a phantom
                    bool can = brute_force_subtree(inst, t, v, forbidden);
                    CHECK(got == (can ? Probe::yes : Probe::no));
                } else {
                    // phantom constraint: either flagged, or decided purely by
                    // the subtree itself; never a wrong flat answer
                    if (got == Probe::no) CHECK(!brute_force_subtree(inst, t, v, 0));
                    if (got == Probe::yes) CHECK(brute_force_subtree(inst, t, v, 0));
                }

                Trichotomy want = expected_classification(inst, t, idx, v, q);
                Trichotomy have = classify_log(inst, t, idx, v, q, meter);
                CHECK(have.kind == want.kind);
                if (want.kind == Trichotomy::critical) CHECK(have.p0 == want.p0);
            }
        }
        CHECK(!meter.violated());
    }
}

TEST_CASE("a bare path resolves every vertex non-critically in place") {
    Instance inst;
    inst.graph.n = 1024;
    for (int v = 2; v <= inst.graph.n; ++v) inst.graph.edges.emplace_back(v - 1, v);
    inst.lists.assign(inst.graph.n + 1, {1, 2});
    inst.lists[0] = {};
    WorkspaceMeter meter(inst.graph.n);
    int noncritical = 0, other = 0;
    auto trace = [&](const std::string& e) {
        (e.rfind("noncritical", 0) == 0 ? noncritical : other) += 1;
    };
    LogStats stats;
    CHECK(solve_log(inst, meter, &stats, trace));
    CHECK(noncritical == 1023);  // every internal vertex, leaf answers directly
    CHECK(other == 0);
    CHECK(stats.max_r == 0);  // one activation walks the whole path
}

TEST_CASE("workspace stays within the logarithmic budget") {
    for (int n : {256, 1024}) {
        for (std::uint64_t s = 1; s <= 3; ++s) {
            auto inst = random_instance(n, 4, s, 1);
            WorkspaceMeter meter(n);
            LogStats stats;
            solve_log(inst, meter, &stats);
            CHECK(meter.peak_persistent() <= 1000 * static_cast<long long>(std::log2(n)));
            CHECK(stats.max_r <= static_cast<int>(std::log2(n)));
            CHECK(stats.max_same_depth <= bracket_params(n).M);
            CHECK(stats.max_aux_ratio <= 50.0);
            CHECK(!meter.violated());
        }
    }
}
