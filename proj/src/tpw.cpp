#include "listcol/tpw.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "listcol/brackets.hpp"
#include "listcol/tree.hpp"

namespace listcol {

namespace {

// The bag machine mirrors the tree solver's shape one level up: bags play
// the role of vertices, the heavy shape child (largest contained-vertex
// count) is descended iteratively while lighter shape subtrees are probed
// recursively, and the per-bag register is a bit table over the bag's
// colour tuples recording which tuples extend to everything resolved so
// far. Tuples stand in for single colours, so the exact survivor table
// replaces the position ladder; it is budget-capped because the method is
// exponential in the width by design.
struct Ctx {
    const Instance& inst;
    WorkspaceMeter& meter;
    TpwStats* stats;
    const TpwConfig& config;
    int k = 0;

    RootedTree shape;
    std::vector<long long> weight;      // contained vertices per shape subtree
    std::vector<int> heavy;             // heavy shape child by weight, 0 at leaves
    std::vector<std::vector<int>> bag;  // sorted vertices per bag
    std::vector<long long> cap;         // usable list prefix per vertex
    std::vector<std::pair<int, int>> edges;  // sorted for lookup

    bool has_edge(int u, int v) const {
        auto key = std::minmax(u, v);
        return std::binary_search(edges.begin(), edges.end(),
                                  std::pair<int, int>(key.first, key.second));
    }
};

// survivor table of one bag along the heavy descent; `verts` shrinks when a
// vertex is established non-critical and projected out
struct Stage {
    std::vector<int> verts;
    std::vector<char> mask;
    long long count = 0;  // tuple space size, product of vertex caps
};

long long tuple_space(const Ctx& ctx, const std::vector<int>& verts, long long limit) {
    long long prod = 1;
    for (int v : verts) {
        prod *= ctx.cap[v];
        if (prod == 0 || prod > limit) return prod;
    }
    return prod;
}

// colour of v under the tuple with the given lexicographic index; the first
// vertex in natural order is the most significant coordinate
int tuple_colour(const Ctx& ctx, const Stage& st, long long index, int v) {
    long long radix = 1;
    for (auto it = st.verts.rbegin(); it != st.verts.rend(); ++it) {
        if (*it == v) return ctx.inst.lists[v][(index / radix) % ctx.cap[v]];
        radix *= ctx.cap[*it];
    }
    throw Error("vertex not in bag");
}

bool intra_proper(const Ctx& ctx, const Stage& st, long long index) {
    for (size_t i = 0; i < st.verts.size(); ++i)
        for (size_t j = i + 1; j < st.verts.size(); ++j)
            if (ctx.has_edge(st.verts[i], st.verts[j]) &&
                tuple_colour(ctx, st, index, st.verts[i]) ==
                    tuple_colour(ctx, st, index, st.verts[j]))
                return false;
    return true;
}

// cross-bag properness between a fixed partial assignment and a tuple
bool cross_proper(const Ctx& ctx, const std::vector<std::pair<int, int>>& fixed,
                  const Stage& st, long long index) {
    for (auto [u, c] : fixed)
        for (int v : st.verts)
            if (ctx.has_edge(u, v) && tuple_colour(ctx, st, index, v) == c) return false;
    return true;
}

// the tuple restricted to vertices with an edge into bag d
std::vector<std::pair<int, int>> boundary_assignment(const Ctx& ctx, const Stage& st,
                                                     long long index, int d) {
    std::vector<std::pair<int, int>> out;
    for (int u : st.verts) {
        bool touches = false;
        for (int v : ctx.bag[d])
            if (ctx.has_edge(u, v)) {
                touches = true;
                break;
            }
        if (touches) out.emplace_back(u, tuple_colour(ctx, st, index, u));
    }
    return out;
}

// table plus one lexicographic tuple cursor plus per-vertex critical flags
long long frame_bits(const Ctx& ctx, long long count) {
    return count + ctx.k * bits_for_max(count) + ctx.k;
}

long long checked_space(const Ctx& ctx, const std::vector<int>& verts) {
    long long count = tuple_space(ctx, verts, ctx.config.table_budget_bits);
    if (count > ctx.config.table_budget_bits)
        throw Error("tuple table for a bag needs " + std::to_string(count) +
                    " bits; configured budget is " +
                    std::to_string(ctx.config.table_budget_bits));
    if (ctx.stats) ctx.stats->max_table_bits = std::max(ctx.stats->max_table_bits, count);
    return count;
}

// Project out one vertex: a reduced tuple survives if any choice for v did.
void project_out(const Ctx& ctx, Stage& st, int v) {
    long long low = 1;
    auto it = st.verts.rbegin();
    for (; *it != v; ++it) low *= ctx.cap[*it];
    long long cv = ctx.cap[v];
    long long reduced = st.count / cv;
    std::vector<char> next(static_cast<size_t>(reduced), 0);
    for (long long i = 0; i < st.count; ++i)
        if (st.mask[i]) next[(i / (low * cv)) * low + i % low] = 1;
    st.verts.erase(std::find(st.verts.begin(), st.verts.end(), v));
    st.mask.swap(next);
    st.count = reduced;
}

// Can the shape subtree at `anchor` be coloured given the fixed colours of
// the boundary vertices in its parent bag? One metered frame per recursion
// level; the heavy descent below reuses it.
bool probe_bag(Ctx& ctx, int r, int anchor, const std::vector<std::pair<int, int>>& entry) {
    if (ctx.stats) {
        ctx.stats->probe_calls += 1;
        ctx.stats->max_depth = std::max(ctx.stats->max_depth, r);
    }
    int s = anchor;
    Stage st;
    st.verts = ctx.bag[s];
    st.count = checked_space(ctx, st.verts);
    MeterFrame frame(ctx.meter, "tpw.L" + std::to_string(r) + ".bag",
                     frame_bits(ctx, st.count));
    CallScope call(ctx.meter);
    call.charge(8LL * bits_for_max(ctx.inst.graph.n), "tuple decoding registers");

    st.mask.assign(static_cast<size_t>(st.count), 0);
    for (long long i = 0; i < st.count; ++i)
        st.mask[i] = intra_proper(ctx, st, i) && cross_proper(ctx, entry, st, i);

    while (true) {
        // lighter shape subtrees filter the table, smallest first to mirror
        // the tree machine's sweep; every surviving tuple must extend into
        // each subtree, and tuples with equal boundaries share one probe
        std::vector<int> light;
        for (int d : ctx.shape.kids[s])
            if (d != ctx.heavy[s]) light.push_back(d);
        std::stable_sort(light.begin(), light.end(),
                         [&](int a, int b) { return ctx.weight[a] < ctx.weight[b]; });
        for (int d : light) {
            bool any = false;
            for (long long i = 0; i < st.count; ++i) {
                if (!st.mask[i]) continue;
                auto rho = boundary_assignment(ctx, st, i, d);
                bool seen = false;
                for (long long j = 0; j < i && !seen; ++j)
                    seen = st.mask[j] && boundary_assignment(ctx, st, j, d) == rho;
                if (seen) {  // an earlier equal boundary survived its probe
                    any = true;
                    continue;
                }
                if (probe_bag(ctx, r + 1, d, rho))
                    any = true;
                else
                    for (long long j = i; j < st.count; ++j)
                        if (st.mask[j] && boundary_assignment(ctx, st, j, d) == rho)
                            st.mask[j] = 0;
            }
            if (!any) return false;
        }

        bool any = false;
        for (long long i = 0; i < st.count; ++i) any = any || st.mask[i];
        if (!any) return false;

        int h = ctx.heavy[s];
        if (h == 0) return true;

        // Criticality: a bag vertex whose surviving colour set is large is
        // never the obstacle later, provided every reduced tuple leaves it
        // more options than its neighbours in the heavy bag can block; such
        // vertices are projected out so only critical coordinates persist.
        std::vector<int> snapshot = st.verts;
        for (int v : snapshot) {
            long long low = 1;
            for (auto it = st.verts.rbegin(); *it != v; ++it) low *= ctx.cap[*it];
            long long cv = ctx.cap[v];
            long long survivors = 0;
            for (long long p = 0; p < cv; ++p)
                for (long long i = 0; i < st.count / cv; ++i) {
                    long long base = (i / low) * (low * cv) + i % low;
                    if (st.mask[base + p * low]) {
                        survivors += 1;
                        break;
                    }
                }
            bool critical = survivors <= 3LL * ctx.k;
            if (critical) continue;
            long long blockers = 0;
            for (int u : ctx.bag[h]) blockers += ctx.has_edge(v, u) ? 1 : 0;
            bool droppable = true;
            for (long long i = 0; i < st.count / cv && droppable; ++i) {
                long long base = (i / low) * (low * cv) + i % low;
                long long fibre = 0;
                for (long long p = 0; p < cv; ++p) fibre += st.mask[base + p * low];
                droppable = fibre == 0 || fibre > blockers;
            }
            if (!droppable) continue;
            if (ctx.stats) ctx.stats->dropped_vertices += 1;
            frame.resize(frame_bits(ctx, st.count) + st.count / cv);
            project_out(ctx, st, v);
            frame.resize(frame_bits(ctx, st.count));
        }

        // convert the survivor table into the heavy child's allowance table;
        // both live in the frame while the conversion runs
        Stage hs;
        hs.verts = ctx.bag[h];
        hs.count = checked_space(ctx, hs.verts);
        frame.resize(frame_bits(ctx, st.count) + frame_bits(ctx, hs.count));
        hs.mask.assign(static_cast<size_t>(hs.count), 0);
        for (long long j = 0; j < hs.count; ++j) {
            if (!intra_proper(ctx, hs, j)) continue;
            for (long long i = 0; i < st.count && !hs.mask[j]; ++i) {
                if (!st.mask[i]) continue;
                auto rho = boundary_assignment(ctx, st, i, h);
                hs.mask[j] = cross_proper(ctx, rho, hs, j);
            }
        }
        st = std::move(hs);
        s = h;
        frame.resize(frame_bits(ctx, st.count));
    }
}

}  // namespace

bool solve_tpw(const Instance& inst, const TreePartition& tp, WorkspaceMeter& meter,
               TpwStats* stats, const TpwConfig& config) {
    validate_instance(inst);
    int k = validate_tree_partition(inst.graph, tp);
    if (stats) {
        *stats = {};
        stats->width = k;
    }

    // the worst-case table is (3k)^k bits; refuse widths whose tables cannot
    // fit the budget instead of thrashing — the method is exponential in k
    long long worst = 1;
    for (int i = 0; i < k && worst <= (1LL << 40); ++i) worst *= 3LL * k;
    if (worst > config.table_budget_bits)
        throw Error("width " + std::to_string(k) + " needs up to " +
                    std::to_string(worst) + "-bit tuple tables; configured budget is " +
                    std::to_string(config.table_budget_bits) + " bits");

    Ctx ctx{inst, meter, stats, config, k, {}, {}, {}, {}, {}, {}};

    int b = static_cast<int>(tp.bags.size()) - 1;
    Graph sg;
    sg.n = b;
    sg.edges = tp.shape_edges;
    for (auto& e : sg.edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(sg.edges.begin(), sg.edges.end());
    ctx.shape = RootedTree::from_graph(sg);

    ctx.bag.assign(b + 1, {});
    for (int t = 1; t <= b; ++t) {
        ctx.bag[t] = tp.bags[t];
        std::sort(ctx.bag[t].begin(), ctx.bag[t].end());
    }

    TreeIndex sidx(ctx.shape);
    ctx.weight.assign(b + 1, 0);
    for (int t : sidx.post) {
        ctx.weight[t] = static_cast<long long>(ctx.bag[t].size());
        for (int d : ctx.shape.kids[t]) ctx.weight[t] += ctx.weight[d];
    }
    ctx.heavy.assign(b + 1, 0);
    for (int t = 1; t <= b; ++t) {
        int best = 0;
        for (int d : ctx.shape.kids[t])
            if (best == 0 || ctx.weight[d] > ctx.weight[best]) best = d;
        ctx.heavy[t] = best;
    }

    // only a list prefix can matter: a vertex offered more colours than it
    // has neighbours always finds a free one, whatever the rest chooses
    std::vector<int> degree(inst.graph.n + 1, 0);
    for (auto [u, v] : inst.graph.edges) {
        degree[u] += 1;
        degree[v] += 1;
    }
    ctx.cap.assign(inst.graph.n + 1, 0);
    for (int v = 1; v <= inst.graph.n; ++v)
        ctx.cap[v] = std::min<long long>(static_cast<long long>(inst.lists[v].size()),
                                         degree[v] + 1);

    ctx.edges = inst.graph.edges;
    std::sort(ctx.edges.begin(), ctx.edges.end());

    return probe_bag(ctx, 0, ctx.shape.root(), {});
}

TreePartition singleton_partition(const Instance& inst) {
    TreePartition tp;
    tp.bags.assign(inst.graph.n + 1, {});
    for (int v = 1; v <= inst.graph.n; ++v) tp.bags[v] = {v};
    tp.shape_edges = inst.graph.edges;
    return tp;
}

std::pair<Instance, TreePartition> random_partitioned_instance(int bags, int width,
                                                               int max_list,
                                                               std::uint64_t seed) {
    if (bags < 1 || width < 1 || max_list < 1)
        throw Error("degenerate partition parameters");
    std::mt19937_64 rng(seed);
    int n = bags * width;
    Instance inst;
    inst.graph.n = n;
    TreePartition tp;
    tp.bags.assign(bags + 1, {});
    for (int t = 1; t <= bags; ++t)
        for (int i = 0; i < width; ++i) tp.bags[t].push_back((t - 1) * width + i + 1);

    std::vector<int> parent(bags + 1, 0);
    for (int t = 2; t <= bags; ++t) {
        parent[t] = 1 + static_cast<int>(rng() % (t - 1));
        tp.shape_edges.emplace_back(parent[t], t);
    }

    std::set<std::pair<int, int>> chosen;
    auto toss = [&](int u, int v) {
        if (rng() % 2 == 0) chosen.insert(std::minmax(u, v));
    };
    for (int t = 1; t <= bags; ++t) {
        for (size_t i = 0; i < tp.bags[t].size(); ++i)
            for (size_t j = i + 1; j < tp.bags[t].size(); ++j)
                toss(tp.bags[t][i], tp.bags[t][j]);
        if (parent[t] != 0)
            for (int u : tp.bags[parent[t]])
                for (int v : tp.bags[t]) toss(u, v);
    }
    inst.graph.edges.assign(chosen.begin(), chosen.end());

    inst.lists.assign(n + 1, {});
    for (int v = 1; v <= n; ++v) {
        int len = 1 + static_cast<int>(rng() % max_list);
        std::set<int> pick;
        while (static_cast<int>(pick.size()) < std::min(len, n))
            pick.insert(1 + static_cast<int>(rng() % n));
        inst.lists[v].assign(pick.begin(), pick.end());
    }
    return {inst, tp};
}

}  // namespace listcol
