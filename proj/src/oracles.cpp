#include "listcol/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace listcol {

namespace {

std::vector<std::vector<int>> adjacency(const Graph& g) {
    std::vector<std::vector<int>> adj(g.n + 1);
    for (auto [u, v] : g.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

void check_budget(const ColourLists& lists, const std::vector<int>& verts, double budget) {
    double log_product = 0;
    for (int v : verts) {
        if (lists[v].empty()) return;  // zero assignments, search is free
        log_product += std::log2(static_cast<double>(lists[v].size()));
    }
    if (log_product > std::log2(budget)) throw Error("instance too large for oracle");
}

// lexicographically first proper assignment over verts (in the given order),
// with an optional forbidden colour at verts[0]
bool backtrack(const ColourLists& lists, const std::vector<std::vector<int>>& adj,
               const std::vector<int>& verts, int avoid_at_first, Colouring& colour) {
    size_t depth = 0;
    std::vector<int> pos(verts.size(), 0);  // next position to try, 0-based
    while (true) {
        if (depth == verts.size()) return true;
        int v = verts[depth];
        bool placed = false;
        for (int& p = pos[depth]; p < static_cast<int>(lists[v].size()); ++p) {
            int c = lists[v][p];
            if (depth == 0 && c == avoid_at_first) continue;
            bool clash = false;
            for (int u : adj[v])
                if (colour[u] == c) {  // unassigned vertices read as colour 0
                    clash = true;
                    break;
                }
            if (!clash) {
                colour[v] = c;
                ++p;
                placed = true;
                break;
            }
        }
        if (placed) {
            ++depth;
            if (depth < verts.size()) pos[depth] = 0;
        } else {
            colour[v] = 0;
            if (depth == 0) return false;
            --depth;
            colour[verts[depth]] = 0;
        }
    }
}

std::vector<int> subtree_vertices(const RootedTree& t, int v) {
    std::vector<int> verts;
    std::vector<int> stack{v};
    while (!stack.empty()) {
        int w = stack.back();
        stack.pop_back();
        verts.push_back(w);
        for (int u : t.kids[w]) stack.push_back(u);
    }
    return verts;
}

// feasible list positions per subtree vertex, children first
std::vector<std::vector<int>> feasible_positions(const Instance& inst, const RootedTree& t,
                                                 int root) {
    std::vector<std::vector<int>> feasible(inst.graph.n + 1);
    auto order = subtree_vertices(t, root);        // parents before children
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        bool dead_child = false;
        std::unordered_set<int> forced;            // colours of single-option children
        for (int u : t.kids[v]) {
            if (feasible[u].empty()) dead_child = true;
            else if (feasible[u].size() == 1) forced.insert(inst.lists[u][feasible[u][0]]);
        }
        if (dead_child) continue;
        for (int p = 0; p < static_cast<int>(inst.lists[v].size()); ++p)
            if (!forced.count(inst.lists[v][p])) feasible[v].push_back(p);
    }
    return feasible;
}

}  // namespace

void validate_colouring(const Instance& inst, const Colouring& c) {
    int n = inst.graph.n;
    if (static_cast<int>(c.size()) != n + 1) throw Error("colouring has wrong size");
    for (int v = 1; v <= n; ++v)
        if (std::find(inst.lists[v].begin(), inst.lists[v].end(), c[v]) == inst.lists[v].end())
            throw Error("vertex " + std::to_string(v) + " coloured outside its list");
    for (auto [u, v] : inst.graph.edges)
        if (c[u] == c[v])
            throw Error("edge " + std::to_string(u) + "-" + std::to_string(v) +
                        " is monochromatic");
}

bool is_valid_colouring(const Instance& inst, const Colouring& c) {
    try {
        validate_colouring(inst, c);
        return true;
    } catch (const Error&) {
        return false;
    }
}

std::optional<Colouring> brute_force_solve(const Instance& inst, double budget) {
    validate_instance(inst);
    std::vector<int> verts(inst.graph.n);
    for (int v = 1; v <= inst.graph.n; ++v) {
        if (inst.lists[v].empty()) return std::nullopt;
        verts[v - 1] = v;
    }
    check_budget(inst.lists, verts, budget);
    auto adj = adjacency(inst.graph);
    Colouring colour(inst.graph.n + 1, 0);
    if (backtrack(inst.lists, adj, verts, 0, colour)) return colour;
    return std::nullopt;
}

std::optional<Colouring> dp_solve(const Instance& inst) {
    validate_instance(inst);
    if (!inst.graph.is_tree()) throw Error("dp solver needs a tree");
    auto t = RootedTree::from_graph(inst.graph);
    auto feasible = feasible_positions(inst, t, t.root());
    if (feasible[t.root()].empty()) return std::nullopt;

    Colouring colour(inst.graph.n + 1, 0);
    std::vector<int> stack{t.root()};
    colour[t.root()] = inst.lists[t.root()][feasible[t.root()][0]];
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : t.kids[v]) {
            for (int p : feasible[u])
                if (inst.lists[u][p] != colour[v]) {
                    colour[u] = inst.lists[u][p];
                    break;
                }
            stack.push_back(u);
        }
    }
    return colour;
}

bool brute_force_subtree(const Instance& inst, const RootedTree& t, int v, int avoid_colour,
                         double budget) {
    auto verts = subtree_vertices(t, v);  // v first: the avoid constraint applies there
    for (int w : verts)
        if (inst.lists[w].empty()) return false;
    check_budget(inst.lists, verts, budget);
    auto adj = adjacency(inst.graph);
    // restrict adjacency checks to the subtree by scoping inside backtrack
    Colouring colour(inst.graph.n + 1, 0);
    return backtrack(inst.lists, adj, verts, avoid_colour, colour);
}

bool dp_subtree(const Instance& inst, const RootedTree& t, int v, int avoid_colour) {
    auto feasible = feasible_positions(inst, t, v);
    for (int p : feasible[v])
        if (inst.lists[v][p] != avoid_colour) return true;
    return false;
}

}  // namespace listcol
