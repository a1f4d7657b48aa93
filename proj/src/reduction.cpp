#include "listcol/reduction.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace listcol {

MulticolouredCliqueInstance random_multicoloured_clique(int k, int class_size,
                                                        std::uint64_t seed) {
    if (k < 2 || class_size < 1) throw Error("random_multicoloured_clique: bad shape");
    std::mt19937_64 rng(seed);
    MulticolouredCliqueInstance mc;
    mc.graph.n = k * class_size;
    mc.classes.resize(k);
    std::vector<int> class_of(mc.graph.n + 1);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < class_size; ++j) {
            int v = i * class_size + j + 1;
            mc.classes[i].push_back(v);
            class_of[v] = i;
        }
    for (int u = 1; u <= mc.graph.n; ++u)
        for (int v = u + 1; v <= mc.graph.n; ++v)
            if (class_of[u] != class_of[v] && rng() % 2 == 0)
                mc.graph.edges.emplace_back(u, v);
    return mc;
}

ReductionResult reduce_multicoloured_clique(const MulticolouredCliqueInstance& mc) {
    validate_multicoloured_clique(mc);
    int n_g = mc.graph.n;
    int k = static_cast<int>(mc.classes.size());
    std::vector<int> class_of(n_g + 1, 0);
    for (int i = 0; i < k; ++i)
        for (int v : mc.classes[i]) class_of[v] = i;

    std::set<std::pair<int, int>> g_edges(mc.graph.edges.begin(), mc.graph.edges.end());

    ReductionResult out;
    Instance& h = out.instance;
    h.lists.assign(k + 1, {});
    for (int i = 0; i < k; ++i) {
        h.lists[i + 1] = mc.classes[i];
        std::sort(h.lists[i + 1].begin(), h.lists[i + 1].end());
    }

    int next_vertex = k;
    std::set<std::pair<int, int>> h_edges;
    for (int u = 1; u <= n_g; ++u)
        for (int v = u + 1; v <= n_g; ++v) {
            if (g_edges.count({u, v})) continue;
            int x = ++next_vertex;
            h.lists.push_back({u, v});
            h_edges.insert({std::min(x, class_of[u] + 1), std::max(x, class_of[u] + 1)});
            h_edges.insert({std::min(x, class_of[v] + 1), std::max(x, class_of[v] + 1)});
        }

    // colours are source-graph vertex ids, so pad until they fit in {1..n}
    while (next_vertex < n_g) {
        ++next_vertex;
        h.lists.push_back({1});
    }
    h.graph.n = next_vertex;
    h.graph.edges.assign(h_edges.begin(), h_edges.end());

    TreePartition& tp = out.partition;
    tp.bags.resize(2);
    for (int i = 1; i <= k; ++i) tp.bags[1].push_back(i);
    for (int x = k + 1; x <= h.graph.n; ++x) {
        tp.bags.push_back({x});
        tp.shape_edges.emplace_back(1, static_cast<int>(tp.bags.size()) - 1);
    }
    return out;
}

bool has_multicoloured_clique(const MulticolouredCliqueInstance& mc) {
    validate_multicoloured_clique(mc);
    int k = static_cast<int>(mc.classes.size());
    std::set<std::pair<int, int>> edges(mc.graph.edges.begin(), mc.graph.edges.end());
    auto adjacent = [&](int u, int v) {
        return edges.count({std::min(u, v), std::max(u, v)}) > 0;
    };
    std::vector<int> pick(k, 0);  // index into each class
    while (true) {
        bool ok = true;
        for (int i = 0; i < k && ok; ++i)
            for (int j = i + 1; j < k && ok; ++j)
                ok = adjacent(mc.classes[i][pick[i]], mc.classes[j][pick[j]]);
        if (ok) return true;
        int i = k - 1;
        while (i >= 0 && pick[i] + 1 == static_cast<int>(mc.classes[i].size())) pick[i--] = 0;
        if (i < 0) return false;
        ++pick[i];
    }
}

}  // namespace listcol
