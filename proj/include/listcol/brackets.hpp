#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "listcol/tree.hpp"

namespace listcol {

// Light subtrees of a subtree with n_v vertices are classified into M
// doubly-exponentially shrinking size intervals. Defined for n_v >= 1 with
// M floored at 1, so every vertex has a residual interval; for n_v <= 2 the
// intervals are empty and only the position codes remain meaningful.
struct BracketParams {
    long long n_v = 0;
    int M = 0;
};

BracketParams bracket_params(long long n_v);

// 2^(2^j), safe for the j that brackets can produce
long long bracket_pow(int j);

// the unique j in {1..M} whose interval contains size; M is the residual
// interval reaching down to 1
int bracket_index(const BracketParams& bp, long long size);

// integer endpoints [lo, hi) of the j-th interval
std::pair<long long, long long> bracket_interval(const BracketParams& bp, int j);

// size of L_j(v) at which v is declared non-critical: 2^(2^j) + 3
long long noncritical_threshold(int j);

// Heavy-path address of h(v,i) relative to a level root v: j zeros, a one,
// then the rank (x-1) of h(v,i) among heavy-path vertices whose largest
// light subtree falls in bracket j. Rank width is 2^j bits, except the
// residual bracket M which needs 2^M+1 bits so that ranks can reach n_v.
struct PosCode {
    int j = 0;
    long long rank = 0;  // 1-based x
    int rank_bits = 0;

    int length() const { return j + 1 + rank_bits; }
    std::string bits() const;
};

// largest non-heavy-child subtree size at w, or 0 if w has at most one child
long long largest_light_size(const TreeIndex& idx, int w);

// the i-th heavy path vertex: h(v,1) = v, h(v,i+1) = heavy child of h(v,i)
int heavy_path_vertex(const TreeIndex& idx, int v, int i);

PosCode encode_pos(const TreeIndex& idx, int v, int i);
int decode_pos(const TreeIndex& idx, int v, const PosCode& code);

}  // namespace listcol
