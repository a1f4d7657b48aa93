#include "listcol/tree.hpp"

#include <algorithm>

namespace listcol {

RootedTree RootedTree::from_graph(const Graph& g) {
    validate_graph(g);
    if (!g.is_tree()) throw Error("graph is not a tree");
    RootedTree t;
    t.n = g.n;
    std::vector<std::vector<int>> adj(g.n + 1);
    for (auto [u, v] : g.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    t.parent.assign(g.n + 1, 0);
    t.kids.assign(g.n + 1, {});
    t.kid_rank.assign(g.n + 1, 0);
    std::vector<char> seen(g.n + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                t.parent[w] = v;
                stack.push_back(w);
            }
    }
    for (int v = 2; v <= g.n; ++v) t.kids[t.parent[v]].push_back(v);
    for (int v = 1; v <= g.n; ++v) {
        std::sort(t.kids[v].begin(), t.kids[v].end());
        for (size_t i = 0; i < t.kids[v].size(); ++i) t.kid_rank[t.kids[v][i]] = static_cast<int>(i);
    }
    return t;
}

std::optional<TraversalState> traversal_step(const RootedTree& t, TraversalState s) {
    switch (s.mode) {
        case WalkMode::down:
            if (!t.kids[s.current].empty()) return TraversalState{t.kids[s.current][0], WalkMode::down};
            return TraversalState{s.current, WalkMode::next};
        case WalkMode::next: {
            int par = t.parent[s.current];
            if (par != 0) {
                size_t r = static_cast<size_t>(t.kid_rank[s.current]);
                if (r + 1 < t.kids[par].size())
                    return TraversalState{t.kids[par][r + 1], WalkMode::down};
            }
            return TraversalState{s.current, WalkMode::up};
        }
        case WalkMode::up:
            if (s.current == t.root()) return std::nullopt;  // walk complete
            return TraversalState{t.parent[s.current], WalkMode::next};
    }
    throw Error("bad traversal state");
}

int subtree_size(const RootedTree& t, int v, WorkspaceMeter* meter) {
    // one counter plus the walk cursor; everything else is read from the tree
    if (meter)
        meter->charge_scratch(2 * bits_for_max(t.n) + 2, "subtree size walk");
    int count = 0;
    TraversalState s{v, WalkMode::down};
    while (true) {
        if (s.mode == WalkMode::down) ++count;
        auto nxt = traversal_step(t, s);
        if (!nxt) break;
        s = *nxt;
        if (s.current == v && s.mode != WalkMode::down) break;  // left the subtree walk
    }
    if (meter) meter->release_scratch(2 * bits_for_max(t.n) + 2);
    return count;
}

int heavy_child(const RootedTree& t, int v) {
    int best = 0, best_size = 0;
    for (int u : t.kids[v]) {
        int s = subtree_size(t, u);
        if (s > best_size) {
            best = u;
            best_size = s;
        }
    }
    return best;
}

TreeIndex::TreeIndex(const RootedTree& t) : tree(&t) {
    size.assign(t.n + 1, 1);
    heavy.assign(t.n + 1, 0);
    post.reserve(t.n);
    // children-first order without host recursion
    std::vector<std::pair<int, size_t>> stack{{t.root(), 0}};
    while (!stack.empty()) {
        auto& [v, next_kid] = stack.back();
        if (next_kid < t.kids[v].size()) {
            int u = t.kids[v][next_kid++];
            stack.emplace_back(u, 0);
            continue;
        }
        post.push_back(v);
        stack.pop_back();
    }
    for (int v : post)
        for (int u : tree->kids[v]) {  // ascending, so ties keep the first maximum
            size[v] += size[u];
            if (heavy[v] == 0 || size[u] > size[heavy[v]]) heavy[v] = u;
        }
}

}  // namespace listcol
