#pragma once

#include <vector>

#include "listcol/brackets.hpp"
#include "listcol/oracles.hpp"
#include "listcol/solver_log.hpp"
#include "listcol/tree.hpp"

namespace listcol {

// Independent ground truth, written before the solver and kept dumb on
// purpose: list positions of v surviving all light brackets strictly above
// `level`, each survival decided by the exhaustive subtree oracle. Level 0
// is the exact usable set of the slice; level M is the raw list.
inline std::vector<long long> ladder_positions(const Instance& inst, const RootedTree& t,
                                               const TreeIndex& idx, int v, int level) {
    auto params = bracket_params(idx.size[v]);
    std::vector<long long> out;
    for (long long p = 1; p <= static_cast<long long>(inst.lists[v].size()); ++p) {
        int c = inst.lists[v][p - 1];
        bool ok = true;
        for (int u : t.kids[v]) {
            if (u == idx.heavy[v]) continue;
            if (bracket_index(params, idx.size[u]) <= level) continue;
            if (!brute_force_subtree(inst, t, u, c)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(p);
    }
    return out;
}

// forbidden colour named by a constraint; 0 when none, -1 when the
// positional form points past the end of the referenced implicit list
inline int resolve_forbidden(const Instance& inst, const RootedTree& t, const TreeIndex& idx,
                             int v, const LogConstraint& q) {
    switch (q.kind) {
        case LogConstraint::none:
            return 0;
        case LogConstraint::literal:
            return q.colour;
        case LogConstraint::positional: {
            int vp = t.parent[v];
            auto live = ladder_positions(inst, t, idx, vp, q.level);
            if (q.pos > static_cast<long long>(live.size())) return -1;
            return inst.lists[vp][live[q.pos - 1] - 1];
        }
    }
    return 0;
}

inline Trichotomy expected_classification(const Instance& inst, const RootedTree& t,
                                          const TreeIndex& idx, int v,
                                          const LogConstraint& q) {
    auto usable = ladder_positions(inst, t, idx, v, 0);
    int forbidden = resolve_forbidden(inst, t, idx, v, q);
    if (forbidden == -1) {
        // phantom constraint: three or more usable colours still decide the
        // vertex, fewer leave nothing to compare the position against
        if (usable.empty()) return {Trichotomy::rejected, 0};
        if (usable.size() >= 3) return {Trichotomy::noncritical, 0};
        return {Trichotomy::phantom, 0};
    }
    int survivors = 0, rank = 0;
    for (size_t i = 0; i < usable.size(); ++i)
        if (inst.lists[v][usable[i] - 1] != forbidden) {
            ++survivors;
            if (survivors == 1) rank = static_cast<int>(i) + 1;
        }
    if (survivors == 0) return {Trichotomy::rejected, 0};
    if (survivors >= 2) return {Trichotomy::noncritical, 0};
    return {Trichotomy::critical, rank};
}

}  // namespace listcol
