#pragma once

#include <optional>
#include <vector>

#include "listcol/instance.hpp"
#include "listcol/tree.hpp"

namespace listcol {

// colour per vertex, index 0 unused
using Colouring = std::vector<int>;

// totality, list membership, properness on every edge
void validate_colouring(const Instance& inst, const Colouring& c);
bool is_valid_colouring(const Instance& inst, const Colouring& c);

// Exhaustive search in lexicographic order over list positions, any graph.
// The budget bounds the worst case (the product of list sizes); conflict
// pruning keeps structured instances far below it.
std::optional<Colouring> brute_force_solve(const Instance& inst, double budget = 1e7);

// Linear-time bottom-up feasibility over list positions on trees, witness
// rebuilt top-down. Rejects non-tree graphs.
std::optional<Colouring> dp_solve(const Instance& inst);

// Can T_v be coloured with v avoiding avoid_colour (0 = no constraint)?
// Ground truth for the solvers' internal subtree questions.
bool brute_force_subtree(const Instance& inst, const RootedTree& t, int v, int avoid_colour,
                         double budget = 1e7);
bool dp_subtree(const Instance& inst, const RootedTree& t, int v, int avoid_colour);

}  // namespace listcol
