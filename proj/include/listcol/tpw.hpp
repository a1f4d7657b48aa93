#pragma once

#include <cstdint>
#include <utility>

#include "listcol/instance.hpp"
#include "listcol/meter.hpp"

namespace listcol {

struct TpwStats {
    int width = 0;              // validated width of the partition
    int max_depth = 0;          // deepest light-probe recursion
    long long max_table_bits = 0;  // widest per-bag tuple table
    long long probe_calls = 0;
    long long dropped_vertices = 0;  // established non-critical, projected out
};

struct TpwConfig {
    // a width-k bag needs a (3k)^k-bit tuple table in the worst case; runs
    // that would exceed this are refused up front
    long long table_budget_bits = 20736;  // (3*4)^4: widths up to 4
};

// Decision for list colouring a graph given a tree-partition, in metered
// O(k log k log n) space. Bags are processed like the tree solver's
// vertices: heavy shape children are descended iteratively, light shape
// subtrees are probed recursively, and the per-bag state is a bit table
// over the bag's colour tuples instead of a single position.
bool solve_tpw(const Instance& inst, const TreePartition& tp, WorkspaceMeter& meter,
               TpwStats* stats = nullptr, const TpwConfig& config = {});

// every vertex its own bag, shape = the tree edges; width 1
TreePartition singleton_partition(const Instance& inst);

// Random connected width-k test instance: a random shape tree of `bags`
// bags holding `width` vertices each, intra-bag and adjacent-bag edges
// added with fixed density, lists uniform in {1..max_list} colours.
// Deterministic in seed.
std::pair<Instance, TreePartition> random_partitioned_instance(int bags, int width,
                                                               int max_list,
                                                               std::uint64_t seed);

}  // namespace listcol
