#pragma once

#include "listcol/instance.hpp"

namespace listcol {

// Random Multicoloured Clique instance: k classes of class_size vertices,
// each cross-class pair is an edge with probability 1/2.
MulticolouredCliqueInstance random_multicoloured_clique(int k, int class_size,
                                                        std::uint64_t seed);

struct ReductionResult {
    Instance instance;
    TreePartition partition;
};

// The hardness construction: class-selector vertices v_1..v_k plus one
// conflict vertex per complement edge, arranged as a star partition of
// width k. Pads with isolated {1}-list vertices so every colour stays
// within {1..n} of the produced instance.
ReductionResult reduce_multicoloured_clique(const MulticolouredCliqueInstance& mc);

// exhaustive search for a clique with one vertex per class
bool has_multicoloured_clique(const MulticolouredCliqueInstance& mc);

}  // namespace listcol
