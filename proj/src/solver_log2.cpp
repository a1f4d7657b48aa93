#include "listcol/solver_log2.hpp"

#include <algorithm>

namespace listcol {

namespace {

struct Log2Run {
    const Instance& inst;
    const RootedTree& t;
    const TreeIndex& idx;
    WorkspaceMeter& meter;
    Log2Stats* stats;
    long long frame_bits;
    int depth = 0;

    // 1-based position of colour in L(u), 0 when absent (= no constraint)
    int translate(int colour, int u) const {
        if (colour == 0) return 0;
        const auto& lst = inst.lists[u];
        for (size_t i = 0; i < lst.size(); ++i)
            if (lst[i] == colour) return static_cast<int>(i) + 1;
        return 0;
    }

    // enumerate non-largest children by (subtree size, vertex index); cur = 0
    // starts the scan, returns 0 when exhausted
    int next_light(int v, int cur) const {
        int best = 0;
        for (int u : t.kids[v]) {
            if (u == idx.heavy[v]) continue;
            if (cur != 0 && (idx.size[u] < idx.size[cur] ||
                             (idx.size[u] == idx.size[cur] && u <= cur)))
                continue;
            if (best == 0 || idx.size[u] < idx.size[best] ||
                (idx.size[u] == idx.size[best] && u < best))
                best = u;
        }
        return best;
    }

    bool recurse(int u, int p) {
        ++depth;
        if (stats) stats->max_depth = std::max(stats->max_depth, depth);
        bool answer = solve(u, p);
        --depth;
        return answer;
    }

    bool solve(int v, int p) {
        // registers of this call: v, p, first workable colour, colour cursor,
        // child cursor, translation temp, plus two flags
        MeterFrame frame(meter, "log2.call", frame_bits);
        meter.enter_call();
        bool answer = body(v, p);
        meter.exit_call();
        return answer;
    }

    bool body(int v, int p) {
        while (true) {
            const auto& lst = inst.lists[v];
            int c = p >= 1 ? lst[p - 1] : 0;
            int usable = static_cast<int>(lst.size()) - (c != 0 ? 1 : 0);
            int heavy = idx.heavy[v];

            if (usable > static_cast<int>(t.kids[v].size())) {
                // more colours than children: some colour survives iff every
                // child subtree is colourable on its own
                for (int u = next_light(v, 0); u != 0; u = next_light(v, u))
                    if (!recurse(u, -1)) return false;
                if (heavy == 0) return true;
                v = heavy;
                p = -1;
                continue;
            }

            for (int u = next_light(v, 0); u != 0; u = next_light(v, u))
                if (!recurse(u, -1)) return false;

            int first = 0;  // first colour that all light children tolerate
            bool two = false;
            for (size_t ai = 0; ai < lst.size() && !two; ++ai) {
                int a = lst[ai];
                if (a == c) continue;
                bool ok = true;
                for (int u = next_light(v, 0); u != 0 && ok; u = next_light(v, u))
                    ok = recurse(u, translate(a, u));
                if (!ok) continue;
                if (first == 0) first = a;
                else two = true;
            }
            if (two) {
                // two workable colours at v: the largest child is free
                v = heavy;
                p = -1;
                continue;
            }
            if (first == 0) return false;
            // v is critical: it must take `first`, the largest child avoids it
            p = translate(first, heavy);
            v = heavy;
        }
    }
};

Log2Run make_run(const Instance& inst, const RootedTree& t, const TreeIndex& idx,
                 WorkspaceMeter& meter, Log2Stats* stats) {
    return {inst, t, idx, meter, stats, 6 * bits_for_max(inst.graph.n) + 2, 0};
}

}  // namespace

bool solve_log2(const Instance& inst, WorkspaceMeter& meter, Log2Stats* stats) {
    validate_instance(inst);
    auto t = RootedTree::from_graph(inst.graph);
    TreeIndex idx(t);
    auto run = make_run(inst, t, idx, meter, stats);
    return run.solve(t.root(), -1);
}

bool solve_log2_subtree(const Instance& inst, const RootedTree& t, const TreeIndex& idx,
                        int v, int p, WorkspaceMeter& meter, Log2Stats* stats) {
    if (p > static_cast<int>(inst.lists[v].size()))
        throw Error("constraint position beyond the list of vertex " + std::to_string(v));
    auto run = make_run(inst, t, idx, meter, stats);
    return run.solve(v, p);
}

}  // namespace listcol
