#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "mbt/domain.hpp"
#include "mbt/engine.hpp"

namespace mbt {

/// Final answer of `input` under the domain's correct-only strategy.
/// Throws AmbiguousCompletion or CompletionStuck.
NormalForm complete(const Term& input, const DomainContract& domain);

/// Concurrent store of built tables keyed by domain, task and fingerprints.
class TableCache {
public:
    using Loader = std::function<std::optional<DiagnosisTable>(const std::string& key, const SearchConfig& cfg,
                                                               const DomainContract& domain)>;
    using Saver = std::function<void(const std::string& key, const DiagnosisTable& table)>;

    TableCache() = default;
    TableCache(Loader load, Saver save) : load_(std::move(load)), save_(std::move(save)) {}

    /// The table and whether it was already cached.
    std::pair<std::shared_ptr<const DiagnosisTable>, bool> get(const DomainContract& domain, const Term& task,
                                                                const SearchConfig& cfg);

    static std::string key(const DomainContract& domain, const Term& task, const SearchConfig& cfg);
    std::size_t size() const;

private:
    mutable std::shared_mutex mu_;
    std::map<std::string, std::shared_ptr<const DiagnosisTable>> tables_;
    Loader load_;
    Saver save_;
};

/// Table of `task` under the domain's buggy strategy.
DiagnosisTable build_task_table(const DomainContract& domain, const Term& task, const SearchConfig& cfg);

struct DiagnosisResult {
    enum class Kind { correct, diagnosed, not_diagnosed, failed };

    Kind kind = Kind::failed;
    Antichain alternatives;            // diagnosed only
    std::vector<std::string> groups;   // group names by bit
    std::optional<NormalForm> completed;
    std::string reason;                // failed only
    bool cache_hit = false;

    /// Alternatives as group names: each set sorted, sets ordered by size then lexicographically.
    std::vector<std::vector<std::string>> alternative_names() const;
};

std::string to_string(DiagnosisResult::Kind k);

DiagnosisResult diagnose(const Term& task, const Term& input, const DomainContract& domain, const SearchConfig& cfg,
                         TableCache* cache = nullptr);

/// A rule taking `prev` to `cur` in one step; correct rules win, then the smallest id.
std::optional<std::string> try_single_rule(const Term& prev, const Term& cur, const DomainContract& domain);

struct DisambiguationEntry {
    std::size_t index = 0;  // position in the candidate list
    std::string task;
    std::uint64_t unique_finals = 0;
    double mean_alternatives = 0;
    bool failed = false;
    std::string reason;
};

/// Ranked by unique finals descending, ties by input order; failed candidates last.
struct DisambiguationReport {
    std::vector<DisambiguationEntry> ranking;
};

DisambiguationReport disambiguate(const std::vector<Term>& candidates, const DomainContract& domain,
                                  const SearchConfig& cfg);

}  // namespace mbt
