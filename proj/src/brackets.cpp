#include "listcol/brackets.hpp"

#include <limits>

namespace listcol {

namespace {

// 2^e saturating, avoiding undefined shifts
long long pow2_cap(long long e) {
    if (e >= 62) return std::numeric_limits<long long>::max();
    return 1LL << e;
}

}  // namespace

long long bracket_pow(int j) { return pow2_cap(pow2_cap(j)); }

long long noncritical_threshold(int j) { return bracket_pow(j) + 3; }

BracketParams bracket_params(long long n_v) {
    if (n_v < 1)
        throw Error("brackets are undefined for subtree size " + std::to_string(n_v));
    int M = 1;
    while (pow2_cap((1LL << M) + 1) < n_v) ++M;
    return {n_v, M};
}

int bracket_index(const BracketParams& bp, long long size) {
    if (size < 1 || 2 * size > bp.n_v - 1)
        throw Error("size " + std::to_string(size) + " is not a light subtree size for n_v=" +
                    std::to_string(bp.n_v));
    for (int j = 1; j < bp.M; ++j)
        if (static_cast<__int128>(size) * bracket_pow(j) >= bp.n_v) return j;
    return bp.M;
}

std::pair<long long, long long> bracket_interval(const BracketParams& bp, int j) {
    if (j < 1 || j > bp.M) throw Error("bracket index out of range");
    auto ceil_div = [](long long a, long long b) { return (a + b - 1) / b; };
    long long hi = ceil_div(bp.n_v, bracket_pow(j - 1));
    long long lo = j == bp.M ? 1 : ceil_div(bp.n_v, bracket_pow(j));
    return {lo, hi};
}

std::string PosCode::bits() const {
    std::string out(j, '0');
    out += '1';
    for (int b = rank_bits - 1; b >= 0; --b) out += ((rank - 1) >> b) & 1 ? '1' : '0';
    return out;
}

long long largest_light_size(const TreeIndex& idx, int w) {
    int h = idx.heavy[w];
    long long best = 0;
    for (int u : idx.tree->kids[w])
        if (u != h) best = std::max<long long>(best, idx.size[u]);
    return best;
}

int heavy_path_vertex(const TreeIndex& idx, int v, int i) {
    if (i < 1) throw Error("heavy path index must be positive");
    int w = v;
    for (int step = 1; step < i; ++step) {
        w = idx.heavy[w];
        if (w == 0) throw Error("heavy path of " + std::to_string(v) + " has no vertex " +
                                std::to_string(i));
    }
    return w;
}

namespace {

int bracket_of_vertex(const TreeIndex& idx, const BracketParams& bp, int w) {
    long long t = largest_light_size(idx, w);
    return t == 0 ? bp.M : bracket_index(bp, t);
}

}  // namespace

PosCode encode_pos(const TreeIndex& idx, int v, int i) {
    auto bp = bracket_params(idx.size[v]);
    int target = heavy_path_vertex(idx, v, i);
    int j = bracket_of_vertex(idx, bp, target);
    // rank = position of h(v,i) among heavy-path vertices sharing bracket j
    long long x = 0;
    for (int s = 1, u = v; s <= i; ++s, u = idx.heavy[u])
        if (bracket_of_vertex(idx, bp, u) == j) ++x;
    PosCode code;
    code.j = j;
    code.rank = x;
    code.rank_bits = j < bp.M ? (1 << j) : (1 << bp.M) + 1;
    return code;
}

int decode_pos(const TreeIndex& idx, int v, const PosCode& code) {
    auto bp = bracket_params(idx.size[v]);
    if (code.j < 1 || code.j > bp.M || code.rank < 1)
        throw Error("malformed position code");
    long long seen = 0;
    int w = v;
    while (true) {
        if (bracket_of_vertex(idx, bp, w) == code.j && ++seen == code.rank) return w;
        w = idx.heavy[w];
        if (w == 0) throw Error("position code does not address a vertex");
    }
}

}  // namespace listcol
