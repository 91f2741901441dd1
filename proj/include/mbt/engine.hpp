#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mbt/antichain.hpp"
#include "mbt/strategy.hpp"
#include "mbt/term.hpp"

namespace mbt {

enum class SearchMode { normal, reduce };

struct SearchConfig {
    SearchMode mode = SearchMode::reduce;
    std::size_t reduce_limit = 5000;
    bool reduce_at_repeat_boundary = true;
    std::optional<std::uint32_t> max_buggy_applications;
    bool count_positions_distinct = true;

    std::uint64_t max_expansions = 100'000'000;
    std::size_t max_live_states = 10'000'000;
    std::optional<std::chrono::milliseconds> time_budget;

    /// Settings that can change a table's content; budgets are excluded.
    std::string fingerprint() const;
};

std::string to_string(SearchMode m);
SearchMode parse_search_mode(std::string_view s);

/// Reads the final answer of a terminal term; nullopt when the term is not final.
using NormalFormFn = std::function<std::optional<NormalForm>(const Term&)>;

struct PathStats {
    std::uint64_t path_count = 0;
    std::uint64_t prefix_count = 0;
    std::uint64_t unique_final_count = 0;
    std::uint64_t stuck_count = 0;
    std::uint64_t expanded_states = 0;
};

struct TableMeta {
    std::string config_fingerprint;
    std::string rules_fingerprint;
    std::uint64_t expanded_states = 0;
    std::uint64_t stuck_states = 0;
    std::uint64_t peak_frontier = 0;
    double build_ms = 0;
};

struct DiagnosisTable {
    std::string domain_id;
    std::string task;                 // printed canonical task
    std::vector<std::string> groups;  // group names by bit
    std::map<std::string, Antichain> entries;
    TableMeta meta;

    /// Compares content and fingerprints, not timing.
    bool same_content(const DiagnosisTable& other) const;
};

PathStats enumerate_paths(const Term& task, Strategy strat, const RuleSet& rules, const NormalFormFn& nf,
                          const SearchConfig& cfg);

DiagnosisTable build_table(const Term& task, Strategy strat, const RuleSet& rules, const NormalFormFn& nf,
                           const SearchConfig& cfg);

DiagnosisTable merge_tables(const DiagnosisTable& a, const DiagnosisTable& b);

/// Group names of a set, in bit order.
std::vector<std::string> group_names(GroupSet s, const std::vector<std::string>& groups);

/// True when `s` is `r` or `succeed .*. r` for a repeat node `r`.
bool at_repeat_boundary(Strategy s);

}  // namespace mbt
