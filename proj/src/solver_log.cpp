#include "listcol/solver_log.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <string>
#include <variant>
#include <vector>

#include "listcol/brackets.hpp"

namespace listcol {

namespace {

void machine_check(bool ok, const char* what) {
    if (!ok) throw Error(std::string("activation machine invariant broken: ") + what);
}

// A scan always walks one ladder level of one vertex: the list of `owner`
// restricted to colours that survive everything below bracket `level`.
struct ImplicitListView {
    int owner = 0;
    int level = 0;
};

// One same-depth activation: a sibling probed without raising the recursion
// level. Consecutive entries at one level must climb brackets, which bounds
// how many can be live at once.
struct SameDepthContext {
    int r = 0;
    int bracket = 0;
};

// ---------------------------------------------------------------------------
// Activities. Each struct is one resumable activation of the machine; the
// stage fields are the resumption tags the driver dispatches on. Every
// activation owns exactly one meter frame ("L<r>.ctx" or "L<r>.aux.*") whose
// declared bits mirror the registers the activation keeps live.

// One level of the solver: processes subjects along the heavy path starting
// at `anchor`, resolving each to reject / non-critical / critical and
// descending until a leaf answers.
struct ProcessA {
    enum class Stage {
        start,           // dispatch on the current subject
        leaf_link_wait,  // leaf resolving a positional constraint
        sweep_wait,      // unconstrained sweep of the light subtrees
        first_wait,      // position chain for the first usable colour
        second_wait,     // ... for the second
        third_wait,      // ... for the third (only under a constraint)
        reconcile_wait,  // candidate vs the parent's forbidden colour
    } stage = Stage::start;
    int r = 0;
    int anchor = 0;
    long long hp_i = 1;  // subject = hp_i-th vertex of anchor's heavy path
    int subject = 0;
    LogConstraint q;
    bool lateral = false;  // entered at the caller's own level
    bool classify_only = false;
    int rec_cand = 0;  // candidate rank being reconciled
    int alpha = 0;     // usable colours of the slice, saturated at 2
    long long p_first = 0, p_second = 0;  // top positions of candidates
    int w_first = 0, w_second = 0;
    WorkspaceMeter::FrameId ctx{};
    long long ctx_bits = 0;
};

// Unconstrained colourability sweep over the subject's light subtrees,
// largest bracket first. Registers: bracket counter (unary) and a child
// cursor within the bracket.
struct SweepA {
    int v = 0;
    int r = 0;
    int j = 0;
    long long l = 0;
    long long cnt = 0;
    bool waiting = false;
    WorkspaceMeter::FrameId aux{};
};

// Position chain: lifts a position from ladder level `y` to `stop` of
// `owner`'s lists by scanning candidate positions with a membership counter
// pair (curr, prev). Own chains (subject's ladder) may exit early through
// the non-criticality threshold and probe children one level deeper; parent
// chains run to completion and probe siblings, laterally when the subject
// is not the heavy child.
struct ChainA {
    int owner = 0;
    int r = 0;
    int y = 0, stop = 0;
    long long target = 0;
    long long cap_target = 0;  // declared range of the target register
    long long cap_prev = 0;    // declared range of curr/prev at this level
    long long curr = 1, prev = 1;
    long long cnt = 0;
    long long l = 0;
    bool own = false;
    bool lateral = false;
    bool started = false;
    bool waiting = false;
    WorkspaceMeter::FrameId aux{};
};

// Lock-step comparison of a candidate colour of the subject against the
// parent's forbidden colour: the subject's own chain and the parent's chain
// advance alternately until both reach concrete list positions, then the
// two colours are read off and compared.
struct ReconcileA {
    enum class Stage { prefix_wait, own_wait, par_wait } stage = Stage::prefix_wait;
    int v = 0, vp = 0;
    int r = 0;
    int cand = 1;
    int jp = 0;  // constraint ladder level at the parent
    int M = 0, Mp = 0;
    int x = 0;
    bool own_turn = true;
    bool par_checked = false;  // parent side has passed at least a bounds check
    long long own_p = 0, own_cap = 0;
    long long par_p = 0, par_cap = 0;
    bool lateral = false;
    WorkspaceMeter::FrameId aux{};
};

using Act = std::variant<ProcessA, SweepA, ChainA, ReconcileA>;

// Result slot written by a finishing activation and consumed by its caller.
struct Ret {
    enum class Kind { none, probe, sweep, chain, reconcile, classified } kind = Kind::none;
    Probe probe = Probe::yes;
    bool sweep_ok = false;
    enum class Chain { found, unsatisfiable, noncritical } chain = Chain::found;
    long long pos = 0;
    long long cap = 0;
    enum class Rec { match, differ, phantom } rec = Rec::match;
    Trichotomy trich{};
};

// The machine's complete live state: the activation stack plus the slot the
// most recently finished activation wrote.
struct RegisterFile {
    std::deque<Act> acts;
    Ret ret;
};

struct Run {
    const Instance& inst;
    const RootedTree& t;
    const TreeIndex& idx;
    WorkspaceMeter& meter;
    LogStats* stats;
    const std::function<void(const std::string&)>& trace;
    RegisterFile regs;
    std::vector<SameDepthContext> lateral_stack;

    long long list_size(int v) const { return static_cast<long long>(inst.lists[v].size()); }
    int colour_at(int v, long long pos) const {
        return inst.lists[v][static_cast<std::size_t>(pos - 1)];
    }
    BracketParams bp(int v) const { return bracket_params(idx.size[v]); }
    int degree(int v) const {
        return static_cast<int>(t.kids[v].size()) + (t.parent[v] != 0 ? 1 : 0);
    }

    long long count_in_bracket(ImplicitListView view) const {
        long long cnt = 0;
        auto params = bp(view.owner);
        for (int u : t.kids[view.owner]) {
            if (u == idx.heavy[view.owner]) continue;
            if (bracket_index(params, idx.size[u]) == view.level) ++cnt;
        }
        return cnt;
    }

    int kid_in_bracket(ImplicitListView view, long long l) const {
        long long seen = 0;
        auto params = bp(view.owner);
        for (int u : t.kids[view.owner]) {
            if (u == idx.heavy[view.owner]) continue;
            if (bracket_index(params, idx.size[u]) != view.level) continue;
            if (++seen == l) return u;
        }
        machine_check(false, "bracket child index out of range");
        return 0;
    }

    void note(const std::string& line) {
        if (trace) trace(line);
    }
};

std::string level_label(int r, const char* suffix) {
    return "L" + std::to_string(r) + suffix;
}

long long constraint_bits(const Run& run, const LogConstraint& q) {
    switch (q.kind) {
        case LogConstraint::none:
            return 1;  // presence flag only
        case LogConstraint::positional:
            return 1 + (q.level + 1) + q.width_bits;  // flag, unary level, position
        case LogConstraint::literal:
            return 1 + bits_for_max(run.inst.graph.n);  // flag, colour value
    }
    return 1;
}

// Context frame of a level: one unary depth digit, the heavy-path address
// of the subject, the constraint, and two 2-bit resolution registers
// (alpha, candidate rank). Candidate positions are added by resize once
// their chains return.
long long ctx_base_bits(const Run& run, int anchor, long long hp_i, const LogConstraint& q) {
    return 1 + encode_pos(run.idx, anchor, static_cast<int>(hp_i)).length() +
           constraint_bits(run, q) + 4;
}

// aux bits at every push site are flagged under the prober's level so the
// per-level audit can total them with one prefix.
void record_aux_ratio(Run& run, int prober_r, int bracket) {
    if (!run.stats) return;
    long long aux = run.meter.open_bits(level_label(prober_r, ".aux"));
    double ratio = static_cast<double>(aux) / static_cast<double>(1LL << (bracket + 1));
    run.stats->max_aux_ratio = std::max(run.stats->max_aux_ratio, ratio);
}

void push_process(Run& run, int r, int anchor, const LogConstraint& q, bool lateral,
                  bool classify_only) {
    ProcessA a;
    a.r = r;
    a.anchor = anchor;
    a.hp_i = 1;
    a.q = q;
    a.lateral = lateral;
    a.classify_only = classify_only;
    a.ctx_bits = ctx_base_bits(run, anchor, a.hp_i, q);
    a.ctx = run.meter.push(level_label(r, ".ctx"), a.ctx_bits);
    run.meter.enter_call();
    if (run.stats) {
        run.stats->max_r = std::max(run.stats->max_r, r);
        run.stats->probe_calls += 1;
    }
    run.regs.acts.push_back(std::move(a));
}

// probe of one child/sibling subtree
void push_probe(Run& run, int prober_r, int bracket, int vertex, const LogConstraint& q,
                bool lateral) {
    record_aux_ratio(run, prober_r, bracket);
    if (lateral) {
        if (!run.lateral_stack.empty() && run.lateral_stack.back().r == prober_r)
            machine_check(bracket > run.lateral_stack.back().bracket,
                          "same-depth activations must climb brackets");
        run.lateral_stack.push_back({prober_r, bracket});
        if (run.stats) {
            // entries of one level are consecutive and climb brackets, so the
            // simultaneous count at a level is bounded by the bracket count
            int same = 0;
            for (auto it = run.lateral_stack.rbegin();
                 it != run.lateral_stack.rend() && it->r == prober_r; ++it)
                ++same;
            run.stats->max_same_depth = std::max(run.stats->max_same_depth, same);
        }
        push_process(run, prober_r, vertex, q, true, false);
    } else {
        push_process(run, prober_r + 1, vertex, q, false, false);
    }
}

long long sweep_bits(const SweepA& a) {
    return 2 + (a.j + 1) + bits_for_max(a.cnt);  // tag, unary bracket, child cursor
}

void push_sweep(Run& run, int v, int r) {
    SweepA a;
    a.v = v;
    a.r = r;
    a.j = run.bp(v).M;
    a.cnt = run.count_in_bracket({v, a.j});
    a.aux = run.meter.push(level_label(r, ".aux.sweep"), sweep_bits(a));
    run.regs.acts.push_back(std::move(a));
}

long long chain_bits(const ChainA& a) {
    // tag, unary level, child cursor, target, membership counter pair
    return 2 + (a.y + 1) + bits_for_max(a.cnt) + bits_for_max(a.cap_target) +
           2 * bits_for_max(a.cap_prev);
}

void push_chain(Run& run, int owner, int r, int start, int stop, long long target,
                long long cap_target, bool own, bool lateral) {
    ChainA a;
    a.owner = owner;
    a.r = r;
    a.y = start;
    a.stop = stop;
    a.target = target;
    a.cap_target = cap_target;
    a.own = own;
    a.lateral = lateral;
    a.aux = run.meter.push(level_label(r, own ? ".aux.scan" : ".aux.link"), chain_bits(a));
    run.regs.acts.push_back(std::move(a));
}

long long reconcile_bits(const ReconcileA& a) {
    // tag, candidate rank, unary constraint level, paired level counter,
    // and the two carried positions
    return 2 + 2 + (a.jp + 1) + bits_for_max(std::max(a.M, a.Mp)) + bits_for_max(a.own_cap) +
           bits_for_max(a.par_cap);
}

void push_reconcile(Run& run, ProcessA& caller, int cand) {
    ReconcileA a;
    a.v = caller.subject;
    a.vp = run.t.parent[caller.subject];
    a.r = caller.r;
    a.cand = cand;
    a.jp = caller.q.level;
    a.M = run.bp(a.v).M;
    a.Mp = run.bp(a.vp).M;
    a.x = 0;
    a.par_p = caller.q.pos;
    a.par_cap = (1LL << caller.q.width_bits) - 1;
    a.own_cap = 3;
    a.lateral = run.idx.heavy[a.vp] != a.v;
    a.aux = run.meter.push(level_label(a.r, ".aux.link"), reconcile_bits(a));
    int v = a.v, r = a.r, M = a.M, jp = a.jp;
    run.regs.acts.push_back(std::move(a));
    // own chain first lifts the candidate to the constraint's level
    push_chain(run, v, r, 0, std::min(jp, M), cand, 3, true, false);
}

// ---------------------------------------------------------------------------
// finishers (the popped activation must not be touched afterwards)

Ret take(Run& run, Ret::Kind kind, const char* what) {
    machine_check(run.regs.ret.kind == kind, what);
    Ret r = run.regs.ret;
    run.regs.ret = {};
    return r;
}

void finish_process(Run& run, ProcessA& a, Ret ret) {
    run.meter.pop(a.ctx);
    run.meter.exit_call();
    if (a.lateral) run.lateral_stack.pop_back();
    run.regs.acts.pop_back();
    run.regs.ret = ret;
}

void finish_probe(Run& run, ProcessA& a, Probe p) {
    Ret ret;
    ret.kind = Ret::Kind::probe;
    ret.probe = p;
    finish_process(run, a, ret);
}

void finish_classified(Run& run, ProcessA& a, Trichotomy t) {
    Ret ret;
    ret.kind = Ret::Kind::classified;
    ret.trich = t;
    finish_process(run, a, ret);
}

void finish_sweep(Run& run, SweepA& a, bool ok) {
    run.meter.pop(a.aux);
    run.regs.acts.pop_back();
    Ret ret;
    ret.kind = Ret::Kind::sweep;
    ret.sweep_ok = ok;
    run.regs.ret = ret;
}

void finish_chain(Run& run, ChainA& a, Ret::Chain out, long long pos, long long cap) {
    run.meter.pop(a.aux);
    run.regs.acts.pop_back();
    Ret ret;
    ret.kind = Ret::Kind::chain;
    ret.chain = out;
    ret.pos = pos;
    ret.cap = cap;
    run.regs.ret = ret;
}

void finish_reconcile(Run& run, ReconcileA& a, Ret::Rec rec) {
    run.meter.pop(a.aux);
    run.regs.acts.pop_back();
    Ret ret;
    ret.kind = Ret::Kind::reconcile;
    ret.rec = rec;
    run.regs.ret = ret;
}

// ---------------------------------------------------------------------------
// subject resolution

void descend(Run& run, ProcessA& a, const LogConstraint& next) {
    machine_check(run.idx.heavy[a.subject] != 0, "descent from a leaf");
    a.hp_i += 1;
    a.q = next;
    a.alpha = 0;
    a.rec_cand = 0;
    a.p_first = a.p_second = 0;
    a.w_first = a.w_second = 0;
    a.stage = ProcessA::Stage::start;
    // between steps the context frame is the top of the meter again
    a.ctx_bits = ctx_base_bits(run, a.anchor, a.hp_i, a.q);
    run.meter.resize(a.ctx, a.ctx_bits);
}

void resolve_reject(Run& run, ProcessA& a) {
    run.note("reject " + std::to_string(a.subject));
    if (run.stats) run.stats->transitions += 1;
    if (a.classify_only)
        finish_classified(run, a, {Trichotomy::rejected, 0});
    else
        finish_probe(run, a, Probe::no);
}

void resolve_noncritical(Run& run, ProcessA& a) {
    run.note("noncritical " + std::to_string(a.subject));
    if (run.stats) run.stats->transitions += 1;
    if (a.classify_only)
        finish_classified(run, a, {Trichotomy::noncritical, 0});
    else
        descend(run, a, LogConstraint::nothing());
}

void resolve_critical(Run& run, ProcessA& a, int p0) {
    run.note("critical " + std::to_string(a.subject) + " p0=" + std::to_string(p0));
    if (run.stats) run.stats->transitions += 1;
    if (a.classify_only)
        finish_classified(run, a, {Trichotomy::critical, p0});
    else
        descend(run, a, LogConstraint::at(0, p0, 2));
}

// step 3 once the number of usable slice colours is known (saturated at 2)
void endgame(Run& run, ProcessA& a) {
    if (a.q.kind == LogConstraint::none) {
        if (a.alpha == 1)
            resolve_critical(run, a, 1);
        else
            resolve_noncritical(run, a);
        return;
    }
    if (a.q.kind == LogConstraint::literal) {
        int first = run.colour_at(a.subject, a.p_first);
        if (a.alpha == 1) {
            if (first == a.q.colour)
                resolve_reject(run, a);
            else
                resolve_critical(run, a, 1);
            return;
        }
        int second = run.colour_at(a.subject, a.p_second);
        if (first == a.q.colour)
            resolve_critical(run, a, 2);
        else if (second == a.q.colour)
            resolve_critical(run, a, 1);
        else
            resolve_noncritical(run, a);
        return;
    }
    a.rec_cand = 1;
    a.stage = ProcessA::Stage::reconcile_wait;
    push_reconcile(run, a, 1);
}

void process(Run& run, ProcessA& a) {
    using Stage = ProcessA::Stage;
    switch (a.stage) {
        case Stage::start: {
            a.subject = heavy_path_vertex(run.idx, a.anchor, static_cast<int>(a.hp_i));
            int v = a.subject;
            if (run.t.kids[v].empty() && !a.classify_only) {
                long long sz = run.list_size(v);
                if (sz == 0) return finish_probe(run, a, Probe::no);
                if (sz >= 2) return finish_probe(run, a, Probe::yes);
                switch (a.q.kind) {
                    case LogConstraint::none:
                        return finish_probe(run, a, Probe::yes);
                    case LogConstraint::literal:
                        return finish_probe(
                            run, a, run.colour_at(v, 1) == a.q.colour ? Probe::no : Probe::yes);
                    case LogConstraint::positional: {
                        int vp = run.t.parent[v];
                        machine_check(vp != 0, "positional constraint at the root");
                        a.stage = Stage::leaf_link_wait;
                        bool lateral = run.idx.heavy[vp] != v;
                        push_chain(run, vp, a.r, a.q.level, run.bp(vp).M, a.q.pos,
                                   (1LL << a.q.width_bits) - 1, false, lateral);
                        return;
                    }
                }
                return;
            }
            a.stage = Stage::sweep_wait;
            push_sweep(run, v, a.r);
            return;
        }
        case Stage::leaf_link_wait: {
            Ret r = take(run, Ret::Kind::chain, "leaf expected a chain result");
            if (r.chain == Ret::Chain::unsatisfiable)
                return finish_probe(run, a, Probe::phantom);
            machine_check(r.chain == Ret::Chain::found, "parent ladder cannot bail out");
            int forbidden = run.colour_at(run.t.parent[a.subject], r.pos);
            return finish_probe(
                run, a, run.colour_at(a.subject, 1) == forbidden ? Probe::no : Probe::yes);
        }
        case Stage::sweep_wait: {
            Ret r = take(run, Ret::Kind::sweep, "expected the sweep result");
            if (!r.sweep_ok) return resolve_reject(run, a);
            int v = a.subject;
            if (run.list_size(v) > run.degree(v) + 2) return resolve_noncritical(run, a);
            a.stage = Stage::first_wait;
            push_chain(run, v, a.r, 0, run.bp(v).M, 1, 3, true, false);
            return;
        }
        case Stage::first_wait: {
            Ret r = take(run, Ret::Kind::chain, "expected the first chain");
            if (r.chain == Ret::Chain::unsatisfiable) return resolve_reject(run, a);
            if (r.chain == Ret::Chain::noncritical) return resolve_noncritical(run, a);
            a.p_first = r.pos;
            a.w_first = bits_for_max(r.cap);
            a.ctx_bits += a.w_first;
            run.meter.resize(a.ctx, a.ctx_bits);
            a.stage = Stage::second_wait;
            push_chain(run, a.subject, a.r, 0, run.bp(a.subject).M, 2, 3, true, false);
            return;
        }
        case Stage::second_wait: {
            Ret r = take(run, Ret::Kind::chain, "expected the second chain");
            if (r.chain == Ret::Chain::noncritical) return resolve_noncritical(run, a);
            if (r.chain == Ret::Chain::unsatisfiable) {
                a.alpha = 1;
                return endgame(run, a);
            }
            if (a.q.kind == LogConstraint::none) return resolve_noncritical(run, a);
            a.p_second = r.pos;
            a.w_second = bits_for_max(r.cap);
            a.ctx_bits += a.w_second;
            run.meter.resize(a.ctx, a.ctx_bits);
            a.stage = Stage::third_wait;
            push_chain(run, a.subject, a.r, 0, run.bp(a.subject).M, 3, 3, true, false);
            return;
        }
        case Stage::third_wait: {
            Ret r = take(run, Ret::Kind::chain, "expected the third chain");
            if (r.chain != Ret::Chain::unsatisfiable) return resolve_noncritical(run, a);
            a.alpha = 2;
            return endgame(run, a);
        }
        case Stage::reconcile_wait: {
            Ret r = take(run, Ret::Kind::reconcile, "expected a reconcile result");
            if (r.rec == Ret::Rec::phantom) {
                machine_check(a.rec_cand == 1, "parent ladder results must repeat");
                if (a.classify_only)
                    return finish_classified(run, a, {Trichotomy::phantom, 0});
                return finish_probe(run, a, Probe::phantom);
            }
            if (a.rec_cand == 1) {
                if (a.alpha == 1) {
                    if (r.rec == Ret::Rec::match) return resolve_reject(run, a);
                    return resolve_critical(run, a, 1);
                }
                if (r.rec == Ret::Rec::match) return resolve_critical(run, a, 2);
                a.rec_cand = 2;
                push_reconcile(run, a, 2);
                return;
            }
            if (r.rec == Ret::Rec::match) return resolve_critical(run, a, 1);
            return resolve_noncritical(run, a);
        }
    }
}

// ---------------------------------------------------------------------------
// step 1: unconstrained probes of every light subtree, large brackets first

void sweep_light_subtrees(Run& run, SweepA& a) {
    if (a.waiting) {
        a.waiting = false;
        Ret r = take(run, Ret::Kind::probe, "sweep expected a probe");
        machine_check(r.probe != Probe::phantom, "unconstrained probe reported a phantom");
        if (r.probe == Probe::no) return finish_sweep(run, a, false);
    }
    while (a.j >= 1) {
        if (a.l < a.cnt) {
            a.l += 1;
            int kid = run.kid_in_bracket({a.v, a.j}, a.l);
            a.waiting = true;
            push_probe(run, a.r, a.j, kid, LogConstraint::nothing(), false);
            return;
        }
        a.j -= 1;
        a.l = 0;
        if (a.j >= 1) {
            a.cnt = run.count_in_bracket({a.v, a.j});
            run.meter.resize(a.aux, sweep_bits(a));
        }
    }
    finish_sweep(run, a, true);
}

// ---------------------------------------------------------------------------
// position chains

void init_level(Run& run, ChainA& a) {
    a.cnt = run.count_in_bracket({a.owner, a.y + 1});
    a.curr = 1;
    a.prev = 1;
    a.l = 0;
    a.cap_prev = std::min(run.list_size(a.owner) + 1, a.cap_target + a.cnt + 1);
    run.meter.resize(a.aux, chain_bits(a));
}

// true when the chain is finished
bool advance_level(Run& run, ChainA& a, long long pos, long long cap) {
    a.target = pos;
    a.cap_target = cap;
    a.y += 1;
    if (a.y == a.stop) {
        finish_chain(run, a, Ret::Chain::found, pos, cap);
        return true;
    }
    init_level(run, a);
    return false;
}

void push_row_probe(Run& run, ChainA& a) {
    int kid = run.kid_in_bracket({a.owner, a.y + 1}, a.l);
    LogConstraint q = LogConstraint::at(a.y + 1, a.prev, bits_for_max(a.cap_prev));
    a.waiting = true;
    push_probe(run, a.r, a.y + 1, kid, q, a.own ? false : a.lateral);
}

void advance_position(Run& run, ChainA& a) {
    const long long avail = run.list_size(a.owner);
    if (!a.started) {
        a.started = true;
        if (a.y == a.stop) {
            // degenerate chain: only the list-end bounds check remains
            if (a.target > avail) return finish_chain(run, a, Ret::Chain::unsatisfiable, 0, 0);
            return finish_chain(run, a, Ret::Chain::found, a.target,
                                std::min(a.cap_target, avail));
        }
        init_level(run, a);
    } else if (a.waiting) {
        a.waiting = false;
        Ret r = take(run, Ret::Kind::probe, "chain expected a probe");
        if (r.probe == Probe::phantom) {
            // the scanned position does not exist, so the list is exhausted
            return finish_chain(run, a, Ret::Chain::unsatisfiable, 0, 0);
        }
        if (r.probe == Probe::no) {
            // a live position whose colour some probed subtree needs
            a.prev += 1;
            a.l = 0;
            if (a.prev > avail) return finish_chain(run, a, Ret::Chain::unsatisfiable, 0, 0);
            // the bailout is sound one level below the residual bracket only,
            // where the bracket counting argument caps how many positions can
            // fail; the row just walked proves prev-1 positions exist
            if (a.own && a.y + 2 <= run.bp(a.owner).M &&
                a.prev > noncritical_threshold(a.y + 1))
                return finish_chain(run, a, Ret::Chain::noncritical, 0, 0);
        } else if (a.l < a.cnt) {
            a.l += 1;
            return push_row_probe(run, a);
        } else if (a.curr == a.target) {
            if (advance_level(run, a, a.prev, std::min(a.cap_prev, avail))) return;
        } else {
            a.curr += 1;
            a.prev += 1;
            a.l = 0;
        }
    }
    while (true) {
        if (a.cnt == 0) {
            // nothing to probe: the level keeps the list, positions carry over
            if (a.target > avail) return finish_chain(run, a, Ret::Chain::unsatisfiable, 0, 0);
            if (advance_level(run, a, a.target, std::min(a.cap_target, avail))) return;
            continue;
        }
        if (a.prev > avail) return finish_chain(run, a, Ret::Chain::unsatisfiable, 0, 0);
        a.l = 1;
        return push_row_probe(run, a);
    }
}

// ---------------------------------------------------------------------------
// step 3 reconciliation

void compare_and_finish(Run& run, ReconcileA& a) {
    machine_check(a.own_p >= 1 && a.own_p <= run.list_size(a.v), "candidate left the list");
    machine_check(a.par_p >= 1 && a.par_p <= run.list_size(a.vp), "parent position unchecked");
    int own_colour = run.colour_at(a.v, a.own_p);
    int par_colour = run.colour_at(a.vp, a.par_p);
    finish_reconcile(run, a, own_colour == par_colour ? Ret::Rec::match : Ret::Rec::differ);
}

void tick(Run& run, ReconcileA& a) {
    while (true) {
        if (a.own_turn) {
            a.own_turn = false;
            if (a.x < a.M) {
                a.stage = ReconcileA::Stage::own_wait;
                push_chain(run, a.v, a.r, a.x, a.x + 1, a.own_p, a.own_cap, true, false);
                return;
            }
        }
        if (a.x < a.Mp || !a.par_checked) {
            a.stage = ReconcileA::Stage::par_wait;
            int from = std::min(a.x, a.Mp);
            int to = std::min(a.x + 1, a.Mp);
            push_chain(run, a.vp, a.r, from, to, a.par_p, a.par_cap, false, a.lateral);
            return;
        }
        if (a.x >= a.M && a.x >= a.Mp) return compare_and_finish(run, a);
        a.x += 1;
        a.own_turn = true;
    }
}

void reconcile_parent_constraint(Run& run, ReconcileA& a) {
    Ret r = take(run, Ret::Kind::chain, "reconcile expected a chain result");
    switch (a.stage) {
        case ReconcileA::Stage::prefix_wait: {
            machine_check(r.chain == Ret::Chain::found, "candidate chain must repeat");
            a.own_p = r.pos;
            a.own_cap = r.cap;
            run.meter.resize(a.aux, reconcile_bits(a));
            a.x = a.jp;
            a.own_turn = true;
            return tick(run, a);
        }
        case ReconcileA::Stage::own_wait: {
            machine_check(r.chain == Ret::Chain::found, "candidate chain must repeat");
            a.own_p = r.pos;
            a.own_cap = r.cap;
            run.meter.resize(a.aux, reconcile_bits(a));
            return tick(run, a);
        }
        case ReconcileA::Stage::par_wait: {
            if (r.chain == Ret::Chain::unsatisfiable)
                return finish_reconcile(run, a, Ret::Rec::phantom);
            machine_check(r.chain == Ret::Chain::found, "parent ladder cannot bail out");
            a.par_p = r.pos;
            a.par_cap = r.cap;
            a.par_checked = true;
            run.meter.resize(a.aux, reconcile_bits(a));
            a.x += 1;
            a.own_turn = true;
            return tick(run, a);
        }
    }
}

// ---------------------------------------------------------------------------
// driver

Ret drive(Run& run) {
    while (!run.regs.acts.empty()) {
        std::visit(
            [&run](auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, ProcessA>)
                    process(run, a);
                else if constexpr (std::is_same_v<T, SweepA>)
                    sweep_light_subtrees(run, a);
                else if constexpr (std::is_same_v<T, ChainA>)
                    advance_position(run, a);
                else
                    reconcile_parent_constraint(run, a);
            },
            run.regs.acts.back());
    }
    return run.regs.ret;
}

// shared block for the transient recomputation registers (child enumeration,
// address decoding); held for the whole run, reused by every activation
struct ScratchBlock {
    WorkspaceMeter& meter;
    long long bits;
    ScratchBlock(WorkspaceMeter& m, int n) : meter(m), bits(16LL * bits_for_max(n)) {
        meter.charge_scratch(bits, "address recomputation registers");
    }
    ~ScratchBlock() { meter.release_scratch(bits); }
};

void check_entry(const Run& run, int v, const LogConstraint& q) {
    if (v < 1 || v > run.t.n) throw Error("probe of vertex " + std::to_string(v));
    switch (q.kind) {
        case LogConstraint::none:
            return;
        case LogConstraint::literal:
            if (q.colour < 1) throw Error("forbidden colour must be a colour value");
            return;
        case LogConstraint::positional: {
            int vp = run.t.parent[v];
            if (vp == 0) throw Error("positional constraint at the root");
            if (q.pos < 1) throw Error("constraint position must be at least 1");
            if (q.level < 0 || q.level > run.bp(vp).M)
                throw Error("constraint level outside the parent's ladder");
            if (q.width_bits < bits_for_max(q.pos))
                throw Error("constraint register narrower than its position");
            return;
        }
    }
}

}  // namespace

bool solve_log(const Instance& inst, WorkspaceMeter& meter, LogStats* stats,
               const std::function<void(const std::string&)>& trace) {
    validate_instance(inst);
    auto t = RootedTree::from_graph(inst.graph);
    TreeIndex idx(t);
    Run run{inst, t, idx, meter, stats, trace, {}, {}};
    ScratchBlock scratch(meter, inst.graph.n);
    push_process(run, 0, t.root(), LogConstraint::nothing(), false, false);
    Ret r = drive(run);
    machine_check(r.kind == Ret::Kind::probe, "run must end in a probe answer");
    machine_check(r.probe != Probe::phantom, "unconstrained run reported a phantom");
    return r.probe == Probe::yes;
}

Probe solve_log_subtree(const Instance& inst, const RootedTree& t, const TreeIndex& idx,
                        int v, const LogConstraint& constraint, WorkspaceMeter& meter,
                        LogStats* stats, const std::function<void(const std::string&)>& trace) {
    Run run{inst, t, idx, meter, stats, trace, {}, {}};
    check_entry(run, v, constraint);
    ScratchBlock scratch(meter, inst.graph.n);
    push_process(run, 0, v, constraint, false, false);
    Ret r = drive(run);
    machine_check(r.kind == Ret::Kind::probe, "run must end in a probe answer");
    return r.probe;
}

Trichotomy classify_log(const Instance& inst, const RootedTree& t, const TreeIndex& idx,
                        int v, const LogConstraint& constraint, WorkspaceMeter& meter,
                        LogStats* stats) {
    static const std::function<void(const std::string&)> no_trace;
    Run run{inst, t, idx, meter, stats, no_trace, {}, {}};
    check_entry(run, v, constraint);
    ScratchBlock scratch(meter, inst.graph.n);
    push_process(run, 0, v, constraint, false, true);
    Ret r = drive(run);
    machine_check(r.kind == Ret::Kind::classified, "classification must end in a verdict");
    return r.trich;
}

}  // namespace listcol
