#pragma once

#include <functional>
#include <string>

#include "listcol/meter.hpp"
#include "listcol/tree.hpp"

namespace listcol {

// Answer of a constrained subtree probe. `phantom` reports that the probe's
// positional constraint addressed a colour past the end of the referenced
// list. Folding that case into a plain "no" would let the caller's position
// scans walk positions that do not exist and mis-fire the non-criticality
// exit, so the third value is load-bearing for soundness.
enum class Probe { yes, no, phantom };

// Classification of a vertex's slice (its subtree minus the largest child's
// subtree) against one forbidden colour: no usable root colour remains, at
// least two remain, or exactly one remains. `p0` names the survivor by its
// rank among all usable root colours of the slice. `phantom` again flags a
// positional constraint that resolved past the end of the parent's list.
struct Trichotomy {
    enum Kind { rejected, noncritical, critical, phantom } kind = rejected;
    int p0 = 0;
};

// Forbidden-colour constraint handed to a subtree probe. The positional
// form points at the colour ranked `pos` within level `level` of the
// parent's ladder of implicit lists; the probe re-derives the concrete
// colour itself by position chaining. The literal form carries the colour
// value directly and exists for harness callers.
struct LogConstraint {
    enum Kind { none, positional, literal } kind = none;
    int level = 0;
    long long pos = 0;
    int width_bits = 0;  // declared register width of `pos`
    int colour = 0;

    static LogConstraint nothing() { return {}; }
    static LogConstraint at(int level, long long pos, int width_bits) {
        return {positional, level, pos, width_bits, 0};
    }
    static LogConstraint avoid(int colour) { return {literal, 0, 0, 0, colour}; }
};

struct LogStats {
    int max_r = 0;               // deepest recursive activation level
    int max_same_depth = 0;      // most same-depth activations live at once
    double max_aux_ratio = 0.0;  // open aux bits / 2^(j+1) at bracket-j probes
    long long probe_calls = 0;   // subtree activations
    long long transitions = 0;   // reject / non-critical / critical resolutions
};

// Deterministic O(log n)-space decision for list colouring on a tree. The
// run is an explicit activation machine over metered registers, not host
// recursion, so peak_persistent is the literal bit cost. `trace` receives
// one line per reject / non-critical / critical transition.
bool solve_log(const Instance& inst, WorkspaceMeter& meter, LogStats* stats = nullptr,
               const std::function<void(const std::string&)>& trace = nullptr);

// Can T_v be coloured with v's colour avoiding `constraint`?
Probe solve_log_subtree(const Instance& inst, const RootedTree& t, const TreeIndex& idx,
                        int v, const LogConstraint& constraint, WorkspaceMeter& meter,
                        LogStats* stats = nullptr,
                        const std::function<void(const std::string&)>& trace = nullptr);

// Resolution of the vertex itself, without descending to the largest child:
// the decision that steers the walk down a heavy path.
Trichotomy classify_log(const Instance& inst, const RootedTree& t, const TreeIndex& idx,
                        int v, const LogConstraint& constraint, WorkspaceMeter& meter,
                        LogStats* stats = nullptr);

}  // namespace listcol
