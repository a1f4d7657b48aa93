#include "listcol/instance.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace listcol {

namespace {

// whitespace-separated integer reader that tracks line numbers for errors
class TokenReader {
public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    int line() const { return line_; }

    long long next(const char* what) {
        skip_ws();
        if (in_.eof() || in_.peek() == std::char_traits<char>::eof())
            throw ParseError(line_, std::string("unexpected end of input, expected ") + what);
        long long value = 0;
        bool neg = false, any = false;
        int c = in_.peek();
        if (c == '-') {
            neg = true;
            in_.get();
        }
        while ((c = in_.peek()) != std::char_traits<char>::eof() && c >= '0' && c <= '9') {
            value = value * 10 + (c - '0');
            in_.get();
            any = true;
        }
        if (!any)
            throw ParseError(line_, std::string("expected ") + what + ", found '" +
                                        static_cast<char>(in_.peek()) + "'");
        return neg ? -value : value;
    }

    int next_int(const char* what, long long lo, long long hi) {
        long long v = next(what);
        if (v < lo || v > hi)
            throw ParseError(line_, std::string(what) + " out of range: " + std::to_string(v));
        return static_cast<int>(v);
    }

    void expect_end() {
        skip_ws();
        if (!in_.eof() && in_.peek() != std::char_traits<char>::eof())
            throw ParseError(line_, "trailing input");
    }

private:
    void skip_ws() {
        int c;
        while ((c = in_.peek()) != std::char_traits<char>::eof() &&
               (c == ' ' || c == '\t' || c == '\n' || c == '\r')) {
            if (c == '\n') ++line_;
            in_.get();
        }
    }

    std::istream& in_;
    int line_ = 1;
};

bool connected(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n == 0) return false;
    std::vector<std::vector<int>> adj(n + 1);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<char> seen(n + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int count = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++count;
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return count == n;
}

// deterministic bounded draw; the modulo bias is immaterial for test corpora
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t k) { return rng() % k; }

}  // namespace

bool Graph::is_tree() const {
    return n >= 1 && static_cast<int>(edges.size()) == n - 1 && connected(n, edges);
}

bool operator==(const Graph& a, const Graph& b) {
    if (a.n != b.n) return false;
    auto ea = a.edges, eb = b.edges;
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    return ea == eb;
}

bool operator==(const Instance& a, const Instance& b) {
    return a.graph == b.graph && a.lists == b.lists;
}

void validate_graph(const Graph& g) {
    if (g.n < 1) throw Error("graph must have at least one vertex");
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : g.edges) {
        if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
        if (u < 1 || u > g.n || v < 1 || v > g.n)
            throw Error("edge endpoint out of range: " + std::to_string(u) + " " +
                        std::to_string(v));
        auto key = std::minmax(u, v);
        if (!seen.insert({key.first, key.second}).second)
            throw Error("duplicate edge " + std::to_string(key.first) + "-" +
                        std::to_string(key.second));
    }
}

void validate_instance(const Instance& inst) {
    validate_graph(inst.graph);
    int n = inst.graph.n;
    if (static_cast<int>(inst.lists.size()) != n + 1)
        throw Error("expected one colour list per vertex");
    for (int v = 1; v <= n; ++v) {
        std::set<int> seen;
        for (int c : inst.lists[v]) {
            if (c < 1 || c > n)
                throw Error("colour out of range at vertex " + std::to_string(v) + ": " +
                            std::to_string(c));
            if (!seen.insert(c).second)
                throw Error("duplicate colour at vertex " + std::to_string(v) + ": " +
                            std::to_string(c));
        }
    }
}

void validate_multicoloured_clique(const MulticolouredCliqueInstance& mc) {
    validate_graph(mc.graph);
    if (mc.classes.size() < 2) throw Error("need at least 2 classes");
    std::vector<char> hit(mc.graph.n + 1, 0);
    for (const auto& cls : mc.classes) {
        if (cls.empty()) throw Error("empty class");
        for (int v : cls) {
            if (v < 1 || v > mc.graph.n)
                throw Error("class vertex out of range: " + std::to_string(v));
            if (hit[v]) throw Error("vertex in two classes: " + std::to_string(v));
            hit[v] = 1;
        }
    }
    for (int v = 1; v <= mc.graph.n; ++v)
        if (!hit[v]) throw Error("vertex in no class: " + std::to_string(v));
}

int validate_tree_partition(const Graph& g, const TreePartition& tp) {
    int b = static_cast<int>(tp.bags.size()) - 1;
    if (b < 1) throw Error("partition needs at least one bag");
    std::vector<int> bag_of(g.n + 1, 0);
    int width = 0;
    for (int i = 1; i <= b; ++i) {
        if (tp.bags[i].empty()) throw Error("bag " + std::to_string(i) + " is empty");
        width = std::max(width, static_cast<int>(tp.bags[i].size()));
        for (int v : tp.bags[i]) {
            if (v < 1 || v > g.n)
                throw Error("bag vertex out of range: " + std::to_string(v));
            if (bag_of[v])
                throw Error("vertex " + std::to_string(v) + " appears in bags " +
                            std::to_string(bag_of[v]) + " and " + std::to_string(i));
            bag_of[v] = i;
        }
    }
    for (int v = 1; v <= g.n; ++v)
        if (!bag_of[v]) throw Error("vertex " + std::to_string(v) + " is in no bag");

    if (static_cast<int>(tp.shape_edges.size()) != b - 1)
        throw Error("shape must have exactly " + std::to_string(b - 1) + " edges");
    std::set<std::pair<int, int>> shape;
    for (auto [s, t] : tp.shape_edges) {
        if (s < 1 || s > b || t < 1 || t > b || s == t)
            throw Error("bad shape edge " + std::to_string(s) + "-" + std::to_string(t));
        auto key = std::minmax(s, t);
        if (!shape.insert({key.first, key.second}).second)
            throw Error("duplicate shape edge " + std::to_string(key.first) + "-" +
                        std::to_string(key.second));
    }
    if (b > 1 && !connected(b, tp.shape_edges)) throw Error("shape is not connected");

    for (auto [u, v] : g.edges) {
        int s = bag_of[u], t = bag_of[v];
        if (s == t) continue;
        auto key = std::minmax(s, t);
        if (!shape.count({key.first, key.second}))
            throw Error("edge " + std::to_string(u) + "-" + std::to_string(v) +
                        " spans non-adjacent bags " + std::to_string(s) + " and " +
                        std::to_string(t));
    }
    return width;
}

Instance parse_instance(std::istream& in) {
    TokenReader tok(in);
    Instance inst;
    inst.graph.n = tok.next_int("vertex count", 1, 100000000);
    long long m = tok.next("edge count");
    if (m < 0) throw ParseError(tok.line(), "negative edge count");
    bool declared_tree = (m == inst.graph.n - 1);
    inst.graph.edges.reserve(static_cast<size_t>(m));
    std::set<std::pair<int, int>> seen_edges;
    for (long long e = 0; e < m; ++e) {
        int u = tok.next_int("edge endpoint", 1, inst.graph.n);
        int v = tok.next_int("edge endpoint", 1, inst.graph.n);
        if (u == v) throw ParseError(tok.line(), "self-loop at vertex " + std::to_string(u));
        auto key = std::minmax(u, v);
        if (!seen_edges.insert(key).second)
            throw ParseError(tok.line(), "duplicate edge " + std::to_string(key.first) + "-" +
                                             std::to_string(key.second));
        inst.graph.edges.emplace_back(key.first, key.second);
    }
    inst.lists.resize(inst.graph.n + 1);
    for (int v = 1; v <= inst.graph.n; ++v) {
        int k = tok.next_int("list length", 0, inst.graph.n);
        inst.lists[v].reserve(k);
        for (int i = 0; i < k; ++i)
            inst.lists[v].push_back(tok.next_int("colour", 1, inst.graph.n));
    }
    tok.expect_end();
    try {
        validate_instance(inst);
    } catch (const Error& e) {
        throw ParseError(tok.line(), e.what());
    }
    if (declared_tree && !inst.graph.is_tree())
        throw ParseError(tok.line(), "edge count declares a tree but the graph is not one");
    return inst;
}

Instance parse_instance_text(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

void serialize_instance(const Instance& inst, std::ostream& out) {
    out << inst.graph.n << ' ' << inst.graph.edges.size() << '\n';
    for (auto [u, v] : inst.graph.edges) out << u << ' ' << v << '\n';
    for (int v = 1; v <= inst.graph.n; ++v) {
        out << inst.lists[v].size();
        for (int c : inst.lists[v]) out << ' ' << c;
        out << '\n';
    }
}

std::string serialize_instance_text(const Instance& inst) {
    std::ostringstream out;
    serialize_instance(inst, out);
    return out.str();
}

TreePartition parse_tree_partition(std::istream& in) {
    TokenReader tok(in);
    TreePartition tp;
    int b = tok.next_int("bag count", 1, 100000000);
    tp.bags.resize(b + 1);
    for (int i = 1; i <= b; ++i) {
        int s = tok.next_int("bag size", 1, 100000000);
        tp.bags[i].reserve(s);
        for (int j = 0; j < s; ++j)
            tp.bags[i].push_back(tok.next_int("bag vertex", 1, 1000000000));
    }
    for (int e = 0; e < b - 1; ++e) {
        int s = tok.next_int("shape endpoint", 1, b);
        int t = tok.next_int("shape endpoint", 1, b);
        tp.shape_edges.emplace_back(s, t);
    }
    tok.expect_end();
    return tp;
}

TreePartition parse_tree_partition_text(const std::string& text) {
    std::istringstream in(text);
    return parse_tree_partition(in);
}

void serialize_tree_partition(const TreePartition& tp, std::ostream& out) {
    int b = static_cast<int>(tp.bags.size()) - 1;
    out << b << '\n';
    for (int i = 1; i <= b; ++i) {
        out << tp.bags[i].size();
        for (int v : tp.bags[i]) out << ' ' << v;
        out << '\n';
    }
    for (auto [s, t] : tp.shape_edges) out << s << ' ' << t << '\n';
}

std::string serialize_tree_partition_text(const TreePartition& tp) {
    std::ostringstream out;
    serialize_tree_partition(tp, out);
    return out.str();
}

Instance random_instance(int n, int max_list, std::uint64_t seed, int min_list) {
    if (n < 1) throw Error("random_instance: n must be positive");
    if (min_list < 0 || max_list < min_list)
        throw Error("random_instance: bad list size range");
    std::mt19937_64 rng(seed);
    Instance inst;
    inst.graph.n = n;
    for (int i = 2; i <= n; ++i) {
        int parent = 1 + static_cast<int>(bounded(rng, i - 1));
        inst.graph.edges.emplace_back(parent, i);
    }
    inst.lists.resize(n + 1);
    for (int v = 1; v <= n; ++v) {
        int size = min_list + static_cast<int>(bounded(rng, max_list - min_list + 1));
        size = std::min(size, n);
        std::set<int> chosen;
        while (static_cast<int>(chosen.size()) < size) {
            int c = 1 + static_cast<int>(bounded(rng, n));
            if (chosen.insert(c).second) inst.lists[v].push_back(c);
        }
    }
    return inst;
}

}  // namespace listcol
