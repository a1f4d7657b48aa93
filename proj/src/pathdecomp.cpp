#include "listcol/pathdecomp.hpp"

#include <algorithm>
#include <set>

namespace listcol {

PathDecompStream::PathDecompStream(const TreeIndex& idx) : idx_(&idx) {}

int PathDecompStream::next_kid(int v, int cur) const {
    // children ordered by (subtree size, vertex index), smallest first
    const auto& t = *idx_->tree;
    int best = 0;
    for (int u : t.kids[v]) {
        if (cur != 0 && (idx_->size[u] < idx_->size[cur] ||
                         (idx_->size[u] == idx_->size[cur] && u <= cur)))
            continue;
        if (best == 0 || idx_->size[u] < idx_->size[best] ||
            (idx_->size[u] == idx_->size[best] && u < best))
            best = u;
    }
    return best;
}

bool PathDecompStream::advance() {
    if (!started_) {
        started_ = true;
        pending_.push_back({true, idx_->tree->root()});
        stack_.push_back({idx_->tree->root(), 0});
        return true;
    }
    if (stack_.empty()) return false;
    auto& top = stack_.back();
    int nxt = next_kid(top.v, top.kid_cursor);
    if (nxt == 0) {
        // a leaf forgets itself; an inner vertex was already forgotten when
        // its last child was introduced
        if (idx_->tree->kids[top.v].empty()) pending_.push_back({false, top.v});
        stack_.pop_back();
        return true;
    }
    top.kid_cursor = nxt;
    pending_.push_back({true, nxt});
    if (next_kid(top.v, nxt) == 0) pending_.push_back({false, top.v});
    stack_.push_back({nxt, 0});
    return true;
}

std::optional<PdEvent> PathDecompStream::next() {
    while (pending_.empty())
        if (!advance()) return std::nullopt;
    PdEvent e = pending_.front();
    pending_.erase(pending_.begin());
    return e;
}

std::vector<PdEvent> build_path_decomposition(const TreeIndex& idx) {
    std::vector<PdEvent> events;
    events.reserve(2 * idx.tree->n);
    PathDecompStream stream(idx);
    while (auto e = stream.next()) events.push_back(*e);
    return events;
}

int validate_nice_path_decomposition(const Graph& g, const std::vector<PdEvent>& events) {
    std::vector<char> alive(g.n + 1, 0), done(g.n + 1, 0);
    int live = 0, max_live = 0;
    for (const auto& e : events) {
        if (e.v < 1 || e.v > g.n) throw Error("event names vertex out of range");
        if (e.introduce) {
            if (alive[e.v] || done[e.v])
                throw Error("vertex " + std::to_string(e.v) + " introduced twice");
            alive[e.v] = 1;
            max_live = std::max(max_live, ++live);
        } else {
            if (!alive[e.v])
                throw Error("vertex " + std::to_string(e.v) + " forgotten while not live");
            alive[e.v] = 0;
            done[e.v] = 1;
            --live;
        }
    }
    if (live != 0) throw Error("decomposition ends with live vertices");
    for (int v = 1; v <= g.n; ++v)
        if (!done[v]) throw Error("vertex " + std::to_string(v) + " never introduced");

    // an edge is inside some bag iff its endpoints are live simultaneously,
    // which happens iff the earlier-forgotten endpoint sees the other live
    std::fill(alive.begin(), alive.end(), 0);
    std::set<std::pair<int, int>> uncovered(g.edges.begin(), g.edges.end());
    for (const auto& e : events) {
        if (e.introduce) {
            alive[e.v] = 1;
            continue;
        }
        for (auto it = uncovered.begin(); it != uncovered.end();) {
            auto [a, b] = *it;
            if ((a == e.v && alive[b]) || (b == e.v && alive[a]))
                it = uncovered.erase(it);
            else
                ++it;
        }
        alive[e.v] = 0;
    }
    if (!uncovered.empty()) {
        auto [a, b] = *uncovered.begin();
        throw Error("edge " + std::to_string(a) + "-" + std::to_string(b) +
                    " is in no bag");
    }
    return max_live;
}

int validate_path_decomposition(const Graph& g, const PathDecomposition& pd) {
    std::vector<int> first(g.n + 1, -1), last(g.n + 1, -1);
    int max_bag = 0;
    for (size_t i = 0; i < pd.size(); ++i) {
        max_bag = std::max(max_bag, static_cast<int>(pd[i].size()));
        std::set<int> distinct;
        for (int v : pd[i]) {
            if (v < 1 || v > g.n) throw Error("bag vertex out of range");
            if (!distinct.insert(v).second) throw Error("bag repeats a vertex");
            if (first[v] < 0) first[v] = static_cast<int>(i);
            last[v] = static_cast<int>(i);
        }
    }
    for (int v = 1; v <= g.n; ++v) {
        if (first[v] < 0) throw Error("vertex " + std::to_string(v) + " is in no bag");
        for (int i = first[v]; i <= last[v]; ++i)
            if (std::find(pd[i].begin(), pd[i].end(), v) == pd[i].end())
                throw Error("occurrences of vertex " + std::to_string(v) +
                            " are not contiguous");
    }
    for (auto [a, b] : g.edges) {
        bool covered = false;
        for (const auto& bag : pd) {
            bool has_a = std::find(bag.begin(), bag.end(), a) != bag.end();
            bool has_b = std::find(bag.begin(), bag.end(), b) != bag.end();
            if (has_a && has_b) {
                covered = true;
                break;
            }
        }
        if (!covered)
            throw Error("edge " + std::to_string(a) + "-" + std::to_string(b) +
                        " is in no bag");
    }
    return max_bag;
}

std::vector<PdEvent> nicify(const Graph& g, const PathDecomposition& pd) {
    validate_path_decomposition(g, pd);
    std::vector<PdEvent> events;
    std::vector<int> prev;
    for (const auto& bag_raw : pd) {
        std::vector<int> bag(bag_raw);
        std::sort(bag.begin(), bag.end());
        for (int v : prev)
            if (!std::binary_search(bag.begin(), bag.end(), v)) events.push_back({false, v});
        for (int v : bag)
            if (!std::binary_search(prev.begin(), prev.end(), v)) events.push_back({true, v});
        prev = std::move(bag);
    }
    for (int v : prev) events.push_back({false, v});
    return events;
}

bool solve_via_pathdecomp(const Instance& inst, const std::vector<PdEvent>& events,
                          WorkspaceMeter& meter) {
    validate_instance(inst);
    int max_bag = validate_nice_path_decomposition(inst.graph, events);

    std::vector<std::vector<int>> adj(inst.graph.n + 1);
    int max_degree = 0;
    for (auto [u, v] : inst.graph.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (int v = 1; v <= inst.graph.n; ++v)
        max_degree = std::max(max_degree, static_cast<int>(adj[v].size()));

    long long pos_bits = bits_for_max(max_degree + 1);  // holds 0..max_degree+1
    MeterFrame bank(meter, "pd.positions", static_cast<long long>(max_bag) * pos_bits);
    MeterFrame cursor(meter, "pd.cursor", bits_for_max(2LL * inst.graph.n));
    MeterFrame trail(meter, "pd.choice", 0);  // grows with the committed guesses

    std::vector<int> pos(inst.graph.n + 1, 0);  // next guess resumes after this
    std::vector<char> alive(inst.graph.n + 1, 0);
    long long guesses = 0;
    size_t i = 0;
    bool moving_forward = true;
    while (true) {
        if (i == events.size()) return true;
        const auto& e = events[i];
        if (e.introduce) {
            if (moving_forward) pos[e.v] = 0;
            // try the next list position for e.v, bounded by max_degree+1
            int limit = std::min<int>(max_degree + 1, static_cast<int>(inst.lists[e.v].size()));
            if (pos[e.v] < limit) {
                ++pos[e.v];
                if (!alive[e.v]) {
                    alive[e.v] = 1;
                    ++guesses;
                    trail.resize(guesses * pos_bits);
                }
                moving_forward = true;
                ++i;
                continue;
            }
            pos[e.v] = 0;
            if (alive[e.v]) {  // all positions exhausted: retract this guess
                alive[e.v] = 0;
                --guesses;
                trail.resize(guesses * pos_bits);
            }
            if (i == 0) return false;
            --i;
            moving_forward = false;
            continue;
        }
        if (moving_forward) {
            int colour = inst.lists[e.v][pos[e.v] - 1];
            bool clash = false;
            for (int u : adj[e.v])
                if (alive[u] && u != e.v && pos[u] > 0 &&
                    inst.lists[u][pos[u] - 1] == colour) {
                    clash = true;
                    break;
                }
            if (!clash) {
                alive[e.v] = 0;
                ++i;
                continue;
            }
            --i;
            moving_forward = false;
        } else {
            alive[e.v] = 1;  // stepping back over a forget revives the vertex
            --i;
        }
    }
}

}  // namespace listcol
