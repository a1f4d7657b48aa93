#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace listcol {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// parse failure with 1-based source line
struct ParseError : Error {
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // normalized u < v, duplicate-free

    bool is_tree() const;  // n-1 edges and connected
};

// lists[v] for v in 1..n; index 0 unused. Order is significant: solvers
// address colours by their position in the list.
using ColourLists = std::vector<std::vector<int>>;

struct Instance {
    Graph graph;
    ColourLists lists;
};

struct MulticolouredCliqueInstance {
    Graph graph;
    std::vector<std::vector<int>> classes;  // k nonempty classes partitioning {1..n}
};

struct TreePartition {
    std::vector<std::vector<int>> bags;           // bags[i] for i in 1..b; index 0 unused
    std::vector<std::pair<int, int>> shape_edges; // tree edges over bag indices
};

bool operator==(const Graph& a, const Graph& b);
bool operator==(const Instance& a, const Instance& b);

// invariant checks; throw Error with a specific message
void validate_graph(const Graph& g);
void validate_instance(const Instance& inst);
void validate_multicoloured_clique(const MulticolouredCliqueInstance& mc);

// full tree-partition check (partition, shape tree, edge locality);
// returns the width (max bag size) or throws Error naming the violation
int validate_tree_partition(const Graph& g, const TreePartition& tp);

// Text format: "n m", m edge lines "u v", n list lines "k c1 .. ck".
// m = n-1 declares a tree and connectivity is enforced.
Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
void serialize_instance(const Instance& inst, std::ostream& out);
std::string serialize_instance_text(const Instance& inst);

// Partition format: "b", b bag lines "s v1 .. vs", b-1 shape edge lines.
TreePartition parse_tree_partition(std::istream& in);
TreePartition parse_tree_partition_text(const std::string& text);
void serialize_tree_partition(const TreePartition& tp, std::ostream& out);
std::string serialize_tree_partition_text(const TreePartition& tp);

// Random tree instance: vertex i attaches to a uniform parent in {1..i-1},
// list sizes uniform in {min_list..max_list}, colours distinct over {1..n}.
// Deterministic in seed.
Instance random_instance(int n, int max_list, std::uint64_t seed, int min_list = 0);

}  // namespace listcol
