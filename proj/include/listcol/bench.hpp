#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "listcol/instance.hpp"

namespace listcol {

struct BenchRecord {
    int n = 0;
    std::string algorithm;
    std::uint64_t seed = 0;
    std::string answer;  // "yes", "no", or "ERR <why>"
    long long peak_persistent_bits = 0;
    long long peak_scratch_bits = 0;
    long long elapsed_ms = 0;
};

inline constexpr const char* kBenchCsvHeader =
    "n,algorithm,seed,answer,peak_persistent_bits,peak_scratch_bits,elapsed_ms";

// largest n each algorithm is run at by default; beyond it a request is
// recorded as an ERR row rather than attempted
long long bench_size_cap(const std::string& algorithm);

// One deterministic-in-seed run: generates the instance for (n, seed),
// solves with the named algorithm, meters the run. Failures land in
// `answer` as ERR, never throw.
BenchRecord bench_run(const std::string& algorithm, int n, std::uint64_t seed);

struct BenchSummary {
    double aux_ratio_c = 0.0;  // calibrated aux/2^(j+1) constant of the log solver
    int rows = 0;
};

// CSV stream: header then one row per (n, algorithm, rep), byte-identical
// across runs except elapsed_ms. Returns the calibration summary.
BenchSummary bench(const std::vector<std::string>& algorithms, const std::vector<int>& sizes,
                   int reps, std::uint64_t seed0, std::ostream& out);

}  // namespace listcol
