#pragma once

#include "listcol/meter.hpp"
#include "listcol/tree.hpp"

namespace listcol {

struct Log2Stats {
    int max_depth = 0;  // deepest nesting of light-child recursions
};

// Deterministic polynomial-time tree solver in O(log^2 n) metered space.
// Light children are probed by recursive calls (one saved frame each); the
// largest child is descended iteratively, so frames never pile up along a
// heavy path.
bool solve_log2(const Instance& inst, WorkspaceMeter& meter, Log2Stats* stats = nullptr);

// Can T_v be coloured with v avoiding the p-th colour of L(v)?
// p = -1 or 0 means unconstrained; p must not exceed |L(v)|.
bool solve_log2_subtree(const Instance& inst, const RootedTree& t, const TreeIndex& idx,
                        int v, int p, WorkspaceMeter& meter, Log2Stats* stats = nullptr);

}  // namespace listcol
