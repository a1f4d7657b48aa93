#include "listcol/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <string>

#include "listcol/brackets.hpp"
#include "listcol/meter.hpp"
#include "listcol/oracles.hpp"
#include "listcol/pathdecomp.hpp"
#include "listcol/solver_log.hpp"
#include "listcol/solver_log2.hpp"
#include "listcol/tpw.hpp"
#include "listcol/tree.hpp"

namespace listcol {

namespace {

// the log solver's aux/2^(j+1) calibration, accumulated across bench runs
thread_local double g_aux_ratio = 0.0;

std::string csv_safe(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

bool run_algorithm(const std::string& algorithm, int n, std::uint64_t seed,
                   WorkspaceMeter& meter, int* actual_n) {
    if (algorithm == "tpw") {
        // width-3 bags; the generated size is the closest multiple of 3
        int bags = std::max(1, n / 3);
        auto [inst, tp] = random_partitioned_instance(bags, 3, 4, seed);
        *actual_n = inst.graph.n;
        return solve_tpw(inst, tp, meter);
    }

    Instance inst = random_instance(n, 4, seed, 1);
    *actual_n = n;
    if (algorithm == "brute") {
        // exhaustive search walks one position cursor over the lists
        long long cursor = 0;
        for (int v = 1; v <= n; ++v)
            cursor += bits_for_max(static_cast<long long>(inst.lists[v].size()));
        MeterFrame frame(meter, "brute.cursor", cursor);
        // budget sized to the n<=20 cap: 4^20 positions worst case
        return brute_force_solve(inst, 2e12).has_value();
    }
    if (algorithm == "dp") {
        // per-position feasibility bits plus the witness choice per vertex
        long long table = 0;
        for (int v = 1; v <= n; ++v) {
            auto len = static_cast<long long>(inst.lists[v].size());
            table += len + bits_for_max(len);
        }
        MeterFrame frame(meter, "dp.tables", table);
        return dp_solve(inst).has_value();
    }
    if (algorithm == "pathwidth") {
        RootedTree t = RootedTree::from_graph(inst.graph);
        TreeIndex idx(t);
        auto events = build_path_decomposition(idx);
        return solve_via_pathdecomp(inst, events, meter);
    }
    if (algorithm == "log2") return solve_log2(inst, meter);
    if (algorithm == "log") {
        LogStats stats;
        bool yes = solve_log(inst, meter, &stats);
        g_aux_ratio = std::max(g_aux_ratio, stats.max_aux_ratio);
        return yes;
    }
    throw Error("unknown algorithm: " + algorithm);
}

}  // namespace

long long bench_size_cap(const std::string& algorithm) {
    if (algorithm == "brute") return 20;
    if (algorithm == "dp") return 1000000;
    if (algorithm == "pathwidth") return 10000;
    if (algorithm == "log2") return 10000;
    if (algorithm == "log") return 4096;
    if (algorithm == "tpw") return 1024;
    throw Error("unknown algorithm: " + algorithm);
}

BenchRecord bench_run(const std::string& algorithm, int n, std::uint64_t seed) {
    BenchRecord rec;
    rec.n = n;
    rec.algorithm = algorithm;
    rec.seed = seed;
    auto t0 = std::chrono::steady_clock::now();
    try {
        if (n < 1) throw Error("n must be positive");
        if (n > bench_size_cap(algorithm))
            throw Error("n over cap " + std::to_string(bench_size_cap(algorithm)));
        WorkspaceMeter meter(n);
        int actual = n;
        bool yes = run_algorithm(algorithm, n, seed, meter, &actual);
        rec.n = actual;
        rec.answer = yes ? "yes" : "no";
        rec.peak_persistent_bits = meter.peak_persistent();
        rec.peak_scratch_bits = meter.peak_scratch();
        if (meter.violated()) rec.answer = "ERR " + csv_safe(meter.violations().front());
    } catch (const std::exception& e) {
        rec.answer = "ERR " + csv_safe(e.what());
    }
    auto t1 = std::chrono::steady_clock::now();
    rec.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return rec;
}

BenchSummary bench(const std::vector<std::string>& algorithms, const std::vector<int>& sizes,
                   int reps, std::uint64_t seed0, std::ostream& out) {
    g_aux_ratio = 0.0;
    BenchSummary summary;
    out << kBenchCsvHeader << "\n";
    for (int n : sizes)
        for (const auto& alg : algorithms)
            for (int rep = 0; rep < reps; ++rep) {
                std::uint64_t seed =
                    seed0 + 1000003ULL * static_cast<std::uint64_t>(n) + rep;
                BenchRecord rec = bench_run(alg, n, seed);
                out << rec.n << ',' << rec.algorithm << ',' << rec.seed << ','
                    << rec.answer << ',' << rec.peak_persistent_bits << ','
                    << rec.peak_scratch_bits << ',' << rec.elapsed_ms << "\n";
                summary.rows += 1;
            }
    summary.aux_ratio_c = g_aux_ratio;
    return summary;
}

}  // namespace listcol
