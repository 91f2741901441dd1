#include "mbt/engine.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>
#include <unordered_set>

#include <boost/container/small_vector.hpp>

#include "mbt/error.hpp"
#include "mbt/syntax.hpp"

namespace mbt {

std::string to_string(SearchMode m) {
    return m == SearchMode::normal ? "normal" : "reduce";
}

SearchMode parse_search_mode(std::string_view s) {
    if (s == "normal") return SearchMode::normal;
    if (s == "reduce" || s == "reduction") return SearchMode::reduce;
    throw DomainError("unknown search mode: " + std::string(s));
}

std::string SearchConfig::fingerprint() const {
    std::string out = "mode=" + to_string(mode);
    out += ";limit=" + std::to_string(reduce_limit);
    out += ";boundary=" + std::to_string(reduce_at_repeat_boundary ? 1 : 0);
    out += ";maxbuggy=" + (max_buggy_applications ? std::to_string(*max_buggy_applications) : std::string("none"));
    out += ";positions=" + std::to_string(count_positions_distinct ? 1 : 0);
    return out;
}

bool DiagnosisTable::same_content(const DiagnosisTable& o) const {
    return domain_id == o.domain_id && task == o.task && groups == o.groups && entries == o.entries &&
           meta.config_fingerprint == o.meta.config_fingerprint && meta.rules_fingerprint == o.meta.rules_fingerprint;
}

std::vector<std::string> group_names(GroupSet s, const std::vector<std::string>& groups) {
    std::vector<std::string> out;
    for (std::size_t bit = 0; bit < groups.size(); ++bit)
        if (s & (GroupSet{1} << bit)) out.push_back(groups[bit]);
    return out;
}

bool at_repeat_boundary(Strategy s) {
    if (s->kind == StrategyKind::repeat) return true;
    return s->kind == StrategyKind::seq && s->left->kind == StrategyKind::succeed &&
           s->right->kind == StrategyKind::repeat;
}

namespace {

using Clock = std::chrono::steady_clock;

class Budget {
public:
    explicit Budget(const SearchConfig& cfg) : cfg_(cfg) {
        if (cfg.time_budget) deadline_ = Clock::now() + *cfg.time_budget;
    }

    void expand() {
        if (++expanded_ > cfg_.max_expansions)
            throw BudgetExceeded("expansion cap of " + std::to_string(cfg_.max_expansions) + " states exceeded");
        if (deadline_ && (expanded_ & 1023) == 0 && Clock::now() > *deadline_)
            throw BudgetExceeded("time budget of " + std::to_string(cfg_.time_budget->count()) + " ms exceeded");
    }
    void live(std::size_t n) const {
        if (n > cfg_.max_live_states)
            throw BudgetExceeded("live state cap of " + std::to_string(cfg_.max_live_states) + " exceeded");
    }
    std::uint64_t expanded() const { return expanded_; }

private:
    const SearchConfig& cfg_;
    std::optional<Clock::time_point> deadline_;
    std::uint64_t expanded_ = 0;
};

using FinalTable = std::unordered_map<NormalForm, Antichain, NormalFormHash>;

class PathWalker {
public:
    PathWalker(const RuleSet& rules, const NormalFormFn& nf, const SearchConfig& cfg, bool collect_table)
        : rules_(rules), nf_(nf), cfg_(cfg), budget_(cfg), collect_table_(collect_table) {}

    void walk(const Term& task, Strategy s) { visit(task, s, 0, 0, 0); }

    PathStats stats() const {
        PathStats st = stats_;
        st.unique_final_count = finals_.size();
        st.expanded_states = budget_.expanded();
        return st;
    }
    FinalTable& table() { return table_; }
    std::uint64_t peak() const { return peak_; }

private:
    void visit(const Term& term, Strategy s, GroupSet set, std::uint32_t count, std::uint64_t depth) {
        budget_.expand();
        peak_ = std::max(peak_, depth + 1);
        StepMode mode = cfg_.count_positions_distinct ? StepMode::positional : StepMode::dedup;
        StepResult r = analyze(term, s, rules_, mode);
        if (r.done) {
            if (auto v = nf_(term)) {
                ++stats_.path_count;
                if (collect_table_) table_[*v].insert(set);
                else finals_.insert(v->encode());
            } else {
                ++stats_.stuck_count;
            }
        } else if (r.steps.empty()) {
            ++stats_.stuck_count;
        }
        for (const auto& t : r.steps) {
            int bit = rules_.group_bit(t.rule);
            std::uint32_t next_count = count + (bit >= 0 ? 1 : 0);
            if (cfg_.max_buggy_applications && next_count > *cfg_.max_buggy_applications) continue;
            ++stats_.prefix_count;
            GroupSet next_set = bit >= 0 ? set | (GroupSet{1} << bit) : set;
            visit(t.next, t.strategy, next_set, next_count, depth + 1);
        }
    }

    const RuleSet& rules_;
    const NormalFormFn& nf_;
    const SearchConfig& cfg_;
    Budget budget_;
    bool collect_table_;
    PathStats stats_;
    std::unordered_set<std::string> finals_;
    FinalTable table_;
    std::uint64_t peak_ = 0;
};

/// Explanations reaching one configuration: (groups, buggy applications)
/// pairs where no pair is dominated in both components by another.
struct Payload {
    boost::container::small_vector<std::pair<GroupSet, std::uint32_t>, 2> items;

    bool insert(GroupSet s, std::uint32_t c) {
        for (const auto& [m, k] : items)
            if (is_subset(m, s) && k <= c) return false;
        items.erase(std::remove_if(items.begin(), items.end(),
                                   [&](const auto& p) { return is_subset(s, p.first) && c <= p.second; }),
                    items.end());
        items.emplace_back(s, c);
        return true;
    }
    void merge(const Payload& o) {
        for (const auto& [s, c] : o.items) insert(s, c);
    }
};

struct Node {
    Term term;
    Strategy strategy;
    std::size_t hash;
    Payload payload;

    Node(Term t, Strategy s, std::size_t h, Payload p)
        : term(std::move(t)), strategy(s), hash(h), payload(std::move(p)) {}
    Node(Node&&) noexcept = default;
    Node& operator=(Node&&) noexcept = default;
};

class Layer {
public:
    std::vector<Node> nodes;

    void add(Node n, bool merge) {
        if (merge) {
            if (nodes.size() + 1 > slots_.size() / 2) rehash(std::max<std::size_t>(64, slots_.size() * 2));
            std::size_t i = probe(n);
            if (slots_[i] != empty_slot) {
                nodes[slots_[i]].payload.merge(n.payload);
                return;
            }
            slots_[i] = static_cast<std::uint32_t>(nodes.size());
        }
        nodes.push_back(std::move(n));
    }

    /// Merges every duplicate configuration in the layer.
    void compact() {
        std::vector<Node> old = std::move(nodes);
        clear();
        for (auto& n : old) add(std::move(n), true);
    }

    void clear() {
        nodes.clear();
        std::fill(slots_.begin(), slots_.end(), empty_slot);
    }

private:
    static constexpr std::uint32_t empty_slot = 0xffffffffu;

    static std::size_t key(const Node& n) { return (n.hash ^ (std::size_t{n.strategy->id} << 32)) * 0x9e3779b97f4a7c15ULL; }

    // open addressing over node indices; only merged nodes are indexed
    std::size_t probe(const Node& n) const {
        std::size_t mask = slots_.size() - 1;
        for (std::size_t i = key(n) & mask;; i = (i + 1) & mask) {
            std::uint32_t s = slots_[i];
            if (s == empty_slot) return i;
            const Node& m = nodes[s];
            if (m.hash == n.hash && m.strategy == n.strategy && m.term == n.term) return i;
        }
    }

    void rehash(std::size_t size) {
        slots_.assign(size, empty_slot);
        std::size_t mask = size - 1;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            // unindexed nodes may repeat a key; the first one wins
            std::size_t i = key(nodes[j]) & mask;
            bool dup = false;
            for (; slots_[i] != empty_slot; i = (i + 1) & mask) {
                const Node& m = nodes[slots_[i]];
                if (m.hash == nodes[j].hash && m.strategy == nodes[j].strategy && m.term == nodes[j].term) {
                    dup = true;
                    break;
                }
            }
            if (!dup) slots_[i] = static_cast<std::uint32_t>(j);
        }
    }

    std::vector<std::uint32_t> slots_;
};

class Reducer {
public:
    Reducer(const RuleSet& rules, const NormalFormFn& nf, const SearchConfig& cfg)
        : rules_(rules), nf_(nf), cfg_(cfg), budget_(cfg), limit_(std::max<std::size_t>(cfg.reduce_limit, 1)) {}

    void run(const Term& task, Strategy s) {
        Layer cur;
        Payload root;
        root.insert(0, 0);
        cur.nodes.push_back(Node{task, s, hash_term(task), std::move(root)});
        Layer next;
        while (!cur.nodes.empty()) {
            peak_ = std::max<std::uint64_t>(peak_, cur.nodes.size());
            bool merging = false;
            for (auto& node : cur.nodes) {
                expand(node, next, merging);
                budget_.live(cur.nodes.size() + next.nodes.size());
            }
            std::swap(cur, next);
            next.clear();
        }
    }

    FinalTable& table() { return table_; }
    std::uint64_t expanded() const { return budget_.expanded(); }
    std::uint64_t stuck() const { return stuck_; }
    std::uint64_t peak() const { return peak_; }

private:
    void expand(Node& node, Layer& next, bool& merging) {
        budget_.expand();
        StepResult r = analyze(node.term, node.strategy, rules_, StepMode::dedup);
        if (r.done) {
            if (auto v = nf_(node.term)) {
                Antichain& ac = table_[*v];
                for (const auto& [set, c] : node.payload.items) ac.insert(set);
            } else {
                ++stuck_;
            }
        } else if (r.steps.empty()) {
            ++stuck_;
        }
        for (auto& t : r.steps) {
            int bit = rules_.group_bit(t.rule);
            Payload p;
            for (const auto& [set, c] : node.payload.items) {
                if (bit < 0) {
                    p.items.emplace_back(set, c);
                    continue;
                }
                std::uint32_t nc = c + 1;
                if (cfg_.max_buggy_applications && nc > *cfg_.max_buggy_applications) continue;
                // without a cap, counts never matter and stay at zero
                p.insert(set | (GroupSet{1} << bit), cfg_.max_buggy_applications ? nc : 0);
            }
            if (p.items.empty()) continue;
            bool boundary = cfg_.reduce_at_repeat_boundary && at_repeat_boundary(t.strategy);
            next.add(Node{std::move(t.next), t.strategy, t.hash, std::move(p)}, merging || boundary);
            if (!merging && next.nodes.size() > limit_) {
                next.compact();
                merging = true;
                if (next.nodes.size() > limit_ / 2) limit_ *= 2;
            }
        }
    }

    const RuleSet& rules_;
    const NormalFormFn& nf_;
    const SearchConfig& cfg_;
    Budget budget_;
    std::size_t limit_;
    FinalTable table_;
    std::uint64_t stuck_ = 0;
    std::uint64_t peak_ = 0;
};

std::map<std::string, Antichain> to_entries(FinalTable& t) {
    std::vector<std::pair<std::string, Antichain>> sorted;
    sorted.reserve(t.size());
    for (auto& [nf, ac] : t) sorted.emplace_back(nf.encode(), std::move(ac));
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::map<std::string, Antichain> out;
    for (auto& kv : sorted) out.emplace_hint(out.end(), std::move(kv));
    return out;
}

}  // namespace

PathStats enumerate_paths(const Term& task, Strategy strat, const RuleSet& rules, const NormalFormFn& nf,
                          const SearchConfig& cfg) {
    PathWalker w(rules, nf, cfg, false);
    w.walk(task, strat);
    return w.stats();
}

DiagnosisTable build_table(const Term& task, Strategy strat, const RuleSet& rules, const NormalFormFn& nf,
                           const SearchConfig& cfg) {
    auto start = Clock::now();
    DiagnosisTable t;
    t.task = print_term(task);
    t.groups = rules.groups();
    t.meta.config_fingerprint = cfg.fingerprint();
    t.meta.rules_fingerprint = rules.fingerprint();
    if (cfg.mode == SearchMode::normal) {
        PathWalker w(rules, nf, cfg, true);
        w.walk(task, strat);
        t.entries = to_entries(w.table());
        PathStats st = w.stats();
        t.meta.expanded_states = st.expanded_states;
        t.meta.stuck_states = st.stuck_count;
        t.meta.peak_frontier = w.peak();
    } else {
        Reducer r(rules, nf, cfg);
        r.run(task, strat);
        t.entries = to_entries(r.table());
        t.meta.expanded_states = r.expanded();
        t.meta.stuck_states = r.stuck();
        t.meta.peak_frontier = r.peak();
    }
    t.meta.build_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return t;
}

DiagnosisTable merge_tables(const DiagnosisTable& a, const DiagnosisTable& b) {
    if (a.domain_id != b.domain_id || a.task != b.task || a.groups != b.groups ||
        a.meta.config_fingerprint != b.meta.config_fingerprint || a.meta.rules_fingerprint != b.meta.rules_fingerprint)
        throw ConfigMismatch("tables differ in task, domain, groups or fingerprints");
    DiagnosisTable out = a;
    for (const auto& [key, ac] : b.entries) out.entries[key].merge(ac);
    out.meta.expanded_states += b.meta.expanded_states;
    out.meta.stuck_states += b.meta.stuck_states;
    out.meta.peak_frontier = std::max(a.meta.peak_frontier, b.meta.peak_frontier);
    out.meta.build_ms += b.meta.build_ms;
    return out;
}

}  // namespace mbt
