#include "listcol/meter.hpp"

#include <stdexcept>

namespace listcol {

int ceil_log2(unsigned long long x) {
    if (x == 0) throw std::invalid_argument("ceil_log2(0)");
    int bits = 0;
    unsigned long long v = 1;
    while (v < x) {
        v <<= 1;
        ++bits;
    }
    return bits;
}

int bits_for_count(long long count) {
    if (count <= 1) return 0;
    return ceil_log2(static_cast<unsigned long long>(count));
}

int bits_for_max(long long max_value) {
    if (max_value < 0) throw std::invalid_argument("bits_for_max: negative");
    return bits_for_count(max_value + 1);
}

WorkspaceMeter::WorkspaceMeter(long long n, long long scratch_words) {
    if (n < 1) throw std::invalid_argument("meter: n must be positive");
    scratch_cap_ = scratch_words * ceil_log2(static_cast<unsigned long long>(n) + 1);
}

void WorkspaceMeter::note(const std::string& event) {
    if (trace) trace(event);
}

void WorkspaceMeter::bump_watches(std::string_view label, long long delta) {
    for (auto& w : watches_) {
        if (label.substr(0, w.prefix.size()) == w.prefix) {
            w.cur += delta;
            if (w.cur > w.peak) w.peak = w.cur;
        }
    }
}

WorkspaceMeter::FrameId WorkspaceMeter::push(std::string label, long long bits) {
    if (bits < 0) throw std::invalid_argument("meter: negative frame size");
    FrameId id = next_id_++;
    cur_persistent_ += bits;
    if (cur_persistent_ > peak_persistent_) peak_persistent_ = cur_persistent_;
    bump_watches(label, bits);
    note("push " + label + " " + std::to_string(bits));
    stack_.push_back(Frame{id, std::move(label), bits});
    return id;
}

void WorkspaceMeter::pop(FrameId id) {
    if (stack_.empty()) throw std::logic_error("meter: pop on empty stack");
    if (stack_.back().id != id)
        throw std::logic_error("meter: non-LIFO pop of frame '" + stack_.back().label + "'");
    cur_persistent_ -= stack_.back().bits;
    bump_watches(stack_.back().label, -stack_.back().bits);
    note("pop " + stack_.back().label);
    stack_.pop_back();
}

void WorkspaceMeter::resize(FrameId id, long long bits) {
    if (bits < 0) throw std::invalid_argument("meter: negative frame size");
    if (stack_.empty() || stack_.back().id != id)
        throw std::logic_error("meter: resize of non-top frame");
    Frame& f = stack_.back();
    cur_persistent_ += bits - f.bits;
    if (cur_persistent_ > peak_persistent_) peak_persistent_ = cur_persistent_;
    bump_watches(f.label, bits - f.bits);
    note("resize " + f.label + " " + std::to_string(bits));
    f.bits = bits;
}

long long WorkspaceMeter::frame_bits(FrameId id) const {
    for (const auto& f : stack_)
        if (f.id == id) return f.bits;
    throw std::logic_error("meter: frame_bits of unknown frame");
}

void WorkspaceMeter::enter_call() { ++active_calls_; }

void WorkspaceMeter::exit_call() {
    if (active_calls_ <= 0) throw std::logic_error("meter: exit_call without enter_call");
    --active_calls_;
}

void WorkspaceMeter::charge_scratch(long long bits, std::string_view what) {
    if (bits < 0) throw std::invalid_argument("meter: negative scratch charge");
    cur_scratch_ += bits;
    if (cur_scratch_ > peak_scratch_) peak_scratch_ = cur_scratch_;
    long long allowance = scratch_cap_ * std::max(1, active_calls_);
    if (cur_scratch_ > allowance) {
        std::string msg = "scratch overflow: " + std::to_string(cur_scratch_) + " > " +
                          std::to_string(allowance) + " bits";
        if (!what.empty()) msg += " (" + std::string(what) + ")";
        violations_.push_back(msg);
    }
    note("scratch +" + std::to_string(bits));
}

void WorkspaceMeter::release_scratch(long long bits) {
    if (bits < 0) throw std::invalid_argument("meter: negative scratch release");
    if (bits > cur_scratch_) throw std::logic_error("meter: scratch release exceeds holdings");
    cur_scratch_ -= bits;
    note("scratch -" + std::to_string(bits));
}

long long WorkspaceMeter::open_bits(std::string_view prefix) const {
    long long total = 0;
    for (const auto& f : stack_)
        if (std::string_view(f.label).substr(0, prefix.size()) == prefix) total += f.bits;
    return total;
}

void WorkspaceMeter::watch(std::string prefix) {
    Watch w;
    w.prefix = std::move(prefix);
    w.cur = open_bits(w.prefix);
    w.peak = w.cur;
    watches_.push_back(std::move(w));
}

long long WorkspaceMeter::watched_current(std::string_view prefix) const {
    for (const auto& w : watches_)
        if (w.prefix == prefix) return w.cur;
    throw std::logic_error("meter: prefix not watched");
}

long long WorkspaceMeter::watched_peak(std::string_view prefix) const {
    for (const auto& w : watches_)
        if (w.prefix == prefix) return w.peak;
    throw std::logic_error("meter: prefix not watched");
}

PeakReport WorkspaceMeter::report() const {
    PeakReport r;
    r.peak_persistent_bits = peak_persistent_;
    r.peak_scratch_bits = peak_scratch_;
    r.scratch_cap_bits = scratch_cap_;
    r.violations = violations_;
    return r;
}

}  // namespace listcol
