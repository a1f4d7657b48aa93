#pragma once

#include <optional>
#include <vector>

#include "listcol/meter.hpp"
#include "listcol/tree.hpp"

namespace listcol {

struct PdEvent {
    bool introduce = true;  // false = forget
    int v = 0;

    bool operator==(const PdEvent&) const = default;
};

// sequence of bags (the non-nice form)
using PathDecomposition = std::vector<std::vector<int>>;

// Streamed nice path decomposition of a rooted tree: the walk enters
// children smallest-first and forgets a vertex the moment its largest child
// is introduced, which caps the live set at floor(log2 n) + 1 vertices.
class PathDecompStream {
public:
    explicit PathDecompStream(const TreeIndex& idx);
    std::optional<PdEvent> next();

private:
    struct Level {
        int v;
        int kid_cursor;  // last child handed out, 0 = none yet
    };

    bool advance();
    int next_kid(int v, int cur) const;

    const TreeIndex* idx_;
    std::vector<Level> stack_;
    std::vector<PdEvent> pending_;  // at most two buffered events
    bool started_ = false;
};

std::vector<PdEvent> build_path_decomposition(const TreeIndex& idx);

// full checks (single introduce/forget per vertex resp. contiguous runs,
// every edge inside some bag, nothing live at the end); return max bag size
int validate_path_decomposition(const Graph& g, const PathDecomposition& pd);
int validate_nice_path_decomposition(const Graph& g, const std::vector<PdEvent>& events);

// bag sequence -> event stream: forgets then introduces between bags,
// leading introduces, trailing forgets; width is preserved
std::vector<PdEvent> nicify(const Graph& g, const PathDecomposition& pd);

// Backtracking list-colouring over a nice decomposition: a position in
// 1..min(max_degree+1, |L(v)|) is tried per introduced vertex and edges are
// checked when their first endpoint is forgotten. The live position bank is
// the audited register file; the chronological choice trail is charged
// separately as determinization overhead.
bool solve_via_pathdecomp(const Instance& inst, const std::vector<PdEvent>& events,
                          WorkspaceMeter& meter);

}  // namespace listcol
