#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace listcol {

// ceil(log2(x)) for x >= 1
int ceil_log2(unsigned long long x);

// bits needed to distinguish `count` values; 0 when count <= 1
int bits_for_count(long long count);

// bits for an integer register holding 0..max_value inclusive
int bits_for_max(long long max_value);

struct PeakReport {
    long long peak_persistent_bits = 0;
    long long peak_scratch_bits = 0;
    long long scratch_cap_bits = 0;  // allowance per active call
    std::vector<std::string> violations;
};

// Work-tape accountant. Persistent registers are pushed as LIFO frames
// (mis-nested pops are programming errors and throw). Scratch is a pooled
// allowance per active call; exceeding it records a violation instead of
// stopping the run, so a solver bug shows up in the report rather than as
// a crash halfway through a sweep.
class WorkspaceMeter {
public:
    using FrameId = std::uint64_t;

    explicit WorkspaceMeter(long long n, long long scratch_words = 64);

    FrameId push(std::string label, long long bits);
    void pop(FrameId id);
    // adjust the top frame in place (a register whose declared range grew)
    void resize(FrameId id, long long bits);
    long long frame_bits(FrameId id) const;

    long long current_persistent() const { return cur_persistent_; }
    long long peak_persistent() const { return peak_persistent_; }

    void enter_call();
    void exit_call();
    int active_calls() const { return active_calls_; }

    void charge_scratch(long long bits, std::string_view what = {});
    void release_scratch(long long bits);
    long long current_scratch() const { return cur_scratch_; }
    long long peak_scratch() const { return peak_scratch_; }
    long long scratch_cap() const { return scratch_cap_; }

    // sum of currently open frames whose label starts with prefix
    long long open_bits(std::string_view prefix) const;

    // peak tracking for a label family; register before the run
    void watch(std::string prefix);
    long long watched_current(std::string_view prefix) const;
    long long watched_peak(std::string_view prefix) const;

    bool violated() const { return !violations_.empty(); }
    const std::vector<std::string>& violations() const { return violations_; }

    PeakReport report() const;

    // optional event sink: "push <label> <bits>", "pop <label>", ...
    std::function<void(const std::string&)> trace;

private:
    struct Frame {
        FrameId id;
        std::string label;
        long long bits;
    };
    struct Watch {
        std::string prefix;
        long long cur = 0;
        long long peak = 0;
    };

    void note(const std::string& event);
    void bump_watches(std::string_view label, long long delta);

    std::vector<Frame> stack_;
    std::vector<Watch> watches_;
    std::vector<std::string> violations_;
    FrameId next_id_ = 1;
    long long cur_persistent_ = 0;
    long long peak_persistent_ = 0;
    long long cur_scratch_ = 0;
    long long peak_scratch_ = 0;
    long long scratch_cap_ = 0;
    int active_calls_ = 0;
};

// RAII persistent frame for solvers with lexically scoped registers
class MeterFrame {
public:
    MeterFrame(WorkspaceMeter& m, std::string label, long long bits)
        : meter_(&m), id_(m.push(std::move(label), bits)) {}
    MeterFrame(const MeterFrame&) = delete;
    MeterFrame& operator=(const MeterFrame&) = delete;
    ~MeterFrame() {
        if (meter_) meter_->pop(id_);
    }
    void resize(long long bits) { meter_->resize(id_, bits); }
    WorkspaceMeter::FrameId id() const { return id_; }

private:
    WorkspaceMeter* meter_;
    WorkspaceMeter::FrameId id_;
};

// RAII call scope: enters a call, releases any scratch it charged on exit
class CallScope {
public:
    explicit CallScope(WorkspaceMeter& m) : meter_(&m) { m.enter_call(); }
    CallScope(const CallScope&) = delete;
    CallScope& operator=(const CallScope&) = delete;
    ~CallScope() {
        meter_->release_scratch(held_);
        meter_->exit_call();
    }
    void charge(long long bits, std::string_view what = {}) {
        meter_->charge_scratch(bits, what);
        held_ += bits;
    }
    void release(long long bits) {
        meter_->release_scratch(bits);
        held_ -= bits;
    }

private:
    WorkspaceMeter* meter_;
    long long held_ = 0;
};

}  // namespace listcol
