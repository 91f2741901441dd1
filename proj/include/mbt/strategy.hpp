#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mbt/term.hpp"

namespace mbt {

/// Process-wide interned identifier.
using Symbol = std::uint32_t;

Symbol intern_symbol(std::string_view name);
std::string_view symbol_name(Symbol s);

enum class StrategyKind : std::uint8_t { succeed, atom, seq, choice, many, repeat };

struct StrategyNode;
/// Hash-consed strategy: structurally equal strategies are the same node, so
/// equality and hashing are pointer operations.
using Strategy = const StrategyNode*;

struct StrategyNode {
    StrategyKind kind;
    Symbol rule;       // atom
    Strategy left;     // seq, choice, many, repeat
    Strategy right;    // seq, choice
    std::uint32_t id;  // dense, stable within a process run
};

Strategy succeed();
Strategy atom(std::string_view rule);
Strategy seq(Strategy first, Strategy then);
Strategy choice(Strategy a, Strategy b);
Strategy many(Strategy s);
Strategy repeat(Strategy s);

/// Left-nested choice over the given rules.
Strategy choice_of(const std::vector<std::string>& rules);

inline std::uint32_t strategy_key(Strategy s) noexcept { return s->id; }

/// Notation: `r`, `s .*. t`, `s <|> t`, `many(s)`, `repeat(s)`, `succeed`.
/// `.*.` binds tighter than `<|>`; both associate to the left.
Strategy parse_strategy(std::string_view text);
std::string print_strategy(Strategy s);

/// Rule ids referenced by a strategy, in first-occurrence order.
std::vector<std::string> rules_of(Strategy s);

struct RuleInfo {
    std::string id;
    bool buggy = false;
    std::string group;  // equals id for correct rules
    std::string label;  // human-readable group label
};

/// Result of applying a rule at one redex position.
struct Application {
    std::size_t position;
    Term term;
};

using ApplyFn = std::function<void(std::size_t rule, const Term& term, std::vector<Application>& out)>;

/// Rules of one domain. Buggy groups are numbered densely so that a set of
/// groups fits in a 64-bit mask.
class RuleSet {
public:
    RuleSet(std::vector<RuleInfo> rules, ApplyFn apply);

    std::size_t size() const noexcept { return rules_.size(); }
    const RuleInfo& info(std::size_t i) const { return rules_.at(i); }
    const std::vector<RuleInfo>& rules() const noexcept { return rules_; }

    std::optional<std::size_t> index_of(Symbol s) const;
    std::optional<std::size_t> index_of(std::string_view id) const;

    /// Group bit of a buggy rule, or -1 for correct rules.
    int group_bit(std::size_t rule) const { return group_bit_.at(rule); }
    /// Buggy group names indexed by bit.
    const std::vector<std::string>& groups() const noexcept { return groups_; }
    const std::string& group_label(std::size_t bit) const { return group_labels_.at(bit); }

    void apply(std::size_t rule, const Term& term, std::vector<Application>& out) const {
        apply_(rule, term, out);
    }
    std::vector<Application> apply(std::size_t rule, const Term& term) const {
        std::vector<Application> out;
        apply_(rule, term, out);
        return out;
    }

    /// Stable digest of ids, buggy flags and groups.
    std::string fingerprint() const;

private:
    std::vector<RuleInfo> rules_;
    ApplyFn apply_;
    std::unordered_map<Symbol, std::size_t> by_symbol_;
    std::vector<int> group_bit_;
    std::vector<std::string> groups_;
    std::vector<std::string> group_labels_;
};

struct Transition {
    std::size_t rule;
    std::size_t position;
    Term next;
    Strategy strategy;
    std::size_t hash;  // hash_term(next)
};

enum class StepMode {
    dedup,       // one transition per distinct (rule, next term, next strategy)
    positional,  // one transition per redex position
};

/// May the configuration stop here, and every one-rule transition from it.
struct StepResult {
    bool done = false;
    std::vector<Transition> steps;
};

StepResult analyze(const Term& term, Strategy s, const RuleSet& rules, StepMode mode = StepMode::dedup);

bool done(const Term& term, Strategy s, const RuleSet& rules);
std::vector<Transition> steps(const Term& term, Strategy s, const RuleSet& rules, StepMode mode = StepMode::dedup);

/// FNV-1a 64, hex encoded; used for fingerprints that must be stable across builds.
std::string stable_digest(std::string_view data);

}  // namespace mbt
