#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "mbt/engine.hpp"

namespace mbt {

struct BenchOptions {
    std::vector<int> ns{2, 3, 4};
    std::vector<int> ks{6, 7, 8};
    std::uint64_t seed = 7;
    std::vector<SearchMode> modes{SearchMode::normal, SearchMode::reduce};
    std::chrono::milliseconds budget{10000};
};

struct BenchCell {
    int n = 0;
    int k = 0;
    SearchMode mode = SearchMode::normal;
    bool completed = false;
    double wall_ms = 0;
    std::uint64_t expanded_states = 0;
    std::uint64_t unique_finals = 0;
    std::string finals_digest;  // digest of the sorted final-answer keys
    std::string note;           // budget message when not completed
};

struct BenchReport {
    std::vector<BenchCell> cells;
    /// (n, k) pairs where both modes completed with different final answers.
    std::vector<std::pair<int, int>> mismatches;

    const BenchCell* find(int n, int k, SearchMode mode) const;
    /// n,k,mode,wall_ms,expanded_states,unique_finals,status
    std::string csv() const;
    /// Seconds per cell laid out with one row per (n, mode); "-" marks budget stops.
    std::string text() const;
};

BenchCell run_bench_cell(int n, int k, std::uint64_t seed, SearchMode mode, std::chrono::milliseconds budget);
BenchReport run_benchmark(const BenchOptions& opts);

}  // namespace mbt
