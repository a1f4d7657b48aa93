#pragma once

#include <optional>
#include <vector>

#include "listcol/instance.hpp"
#include "listcol/meter.hpp"

namespace listcol {

// canonical rooting at vertex 1, children kept in ascending vertex order
struct RootedTree {
    int n = 0;
    std::vector<int> parent;             // parent[v], 0 at the root
    std::vector<std::vector<int>> kids;  // ascending
    std::vector<int> kid_rank;           // position of v within kids[parent[v]]

    static RootedTree from_graph(const Graph& g);  // rejects non-trees
    int root() const { return 1; }
};

enum class WalkMode { down, next, up };

struct TraversalState {
    int current = 1;
    WalkMode mode = WalkMode::down;

    bool operator==(const TraversalState&) const = default;
};

// One move of the three-state walk: down tries the first child, next tries
// the following sibling, up climbs to the parent. Returns nullopt when the
// walk halts (root reached in state up).
std::optional<TraversalState> traversal_step(const RootedTree& t, TraversalState s);

// |T_v| by walking the subtree with one counter; scratch is metered
int subtree_size(const RootedTree& t, int v, WorkspaceMeter* meter = nullptr);

// minimum-index child of maximum subtree size; 0 iff v is a leaf
int heavy_child(const RootedTree& t, int v);

// Precomputed sizes and heavy children for the time-sensitive callers. The
// walking forms above stay the audited reference; both are cross-checked.
struct TreeIndex {
    const RootedTree* tree = nullptr;
    std::vector<int> size;       // size[v] = |T_v|
    std::vector<int> heavy;      // heavy[v], 0 at leaves
    std::vector<int> post;       // post-order of vertices (children before parent)

    explicit TreeIndex(const RootedTree& t);
};

}  // namespace listcol
