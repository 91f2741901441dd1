#include "mbt/strategy.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>
#include <tuple>

#include "mbt/error.hpp"

namespace mbt {

namespace {

class SymbolTable {
public:
    Symbol intern(std::string_view name) {
        std::lock_guard lock(mu_);
        auto it = ids_.find(std::string(name));
        if (it != ids_.end()) return it->second;
        names_.emplace_back(name);
        auto id = static_cast<Symbol>(names_.size() - 1);
        ids_.emplace(names_.back(), id);
        return id;
    }
    std::string_view name(Symbol s) {
        std::lock_guard lock(mu_);
        return names_.at(s);
    }

private:
    std::mutex mu_;
    std::deque<std::string> names_;
    std::unordered_map<std::string, Symbol> ids_;
};

SymbolTable& symbols() {
    static SymbolTable table;
    return table;
}

struct NodeKey {
    StrategyKind kind;
    Symbol rule;
    std::uint32_t left;
    std::uint32_t right;
    friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const noexcept {
        std::size_t h = static_cast<std::size_t>(k.kind);
        h = h * 0x100000001b3ULL ^ k.rule;
        h = h * 0x100000001b3ULL ^ k.left;
        h = h * 0x100000001b3ULL ^ k.right;
        return h;
    }
};

class Interner {
public:
    Strategy make(StrategyKind kind, Symbol rule, Strategy left, Strategy right) {
        constexpr std::uint32_t none = 0xffffffffu;
        NodeKey key{kind, rule, left ? left->id : none, right ? right->id : none};
        std::lock_guard lock(mu_);
        auto it = table_.find(key);
        if (it != table_.end()) return it->second;
        nodes_.push_back(StrategyNode{kind, rule, left, right, static_cast<std::uint32_t>(nodes_.size())});
        Strategy s = &nodes_.back();
        table_.emplace(key, s);
        return s;
    }

private:
    std::mutex mu_;
    std::deque<StrategyNode> nodes_;
    std::unordered_map<NodeKey, Strategy, NodeKeyHash> table_;
};

Interner& interner() {
    static Interner in;
    return in;
}

}  // namespace

Symbol intern_symbol(std::string_view name) {
    return symbols().intern(name);
}

std::string_view symbol_name(Symbol s) {
    return symbols().name(s);
}

Strategy succeed() {
    return interner().make(StrategyKind::succeed, 0, nullptr, nullptr);
}
Strategy atom(std::string_view rule) {
    return interner().make(StrategyKind::atom, intern_symbol(rule), nullptr, nullptr);
}
Strategy seq(Strategy first, Strategy then) {
    return interner().make(StrategyKind::seq, 0, first, then);
}
Strategy choice(Strategy a, Strategy b) {
    return interner().make(StrategyKind::choice, 0, a, b);
}
Strategy many(Strategy s) {
    return interner().make(StrategyKind::many, 0, s, nullptr);
}
Strategy repeat(Strategy s) {
    return interner().make(StrategyKind::repeat, 0, s, nullptr);
}

Strategy choice_of(const std::vector<std::string>& rules) {
    if (rules.empty()) throw DomainError("choice over no rules");
    Strategy s = atom(rules.front());
    for (std::size_t i = 1; i < rules.size(); ++i) s = choice(s, atom(rules[i]));
    return s;
}

std::vector<std::string> rules_of(Strategy s) {
    std::vector<std::string> out;
    std::vector<Strategy> todo{s};
    // depth-first, left to right
    while (!todo.empty()) {
        Strategy cur = todo.back();
        todo.pop_back();
        if (cur->kind == StrategyKind::atom) {
            std::string name(symbol_name(cur->rule));
            if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
            continue;
        }
        if (cur->right) todo.push_back(cur->right);
        if (cur->left) todo.push_back(cur->left);
    }
    return out;
}

RuleSet::RuleSet(std::vector<RuleInfo> rules, ApplyFn apply) : rules_(std::move(rules)), apply_(std::move(apply)) {
    group_bit_.assign(rules_.size(), -1);
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        RuleInfo& r = rules_[i];
        if (!by_symbol_.emplace(intern_symbol(r.id), i).second) throw DomainError("duplicate rule id: " + r.id);
        if (!r.buggy) {
            r.group = r.id;
            continue;
        }
        if (r.group.empty()) r.group = r.id;
        auto it = std::find(groups_.begin(), groups_.end(), r.group);
        if (it == groups_.end()) {
            if (groups_.size() == 64) throw DomainError("more than 64 buggy groups");
            groups_.push_back(r.group);
            group_labels_.push_back(r.label.empty() ? r.group : r.label);
            it = groups_.end() - 1;
        }
        group_bit_[i] = static_cast<int>(it - groups_.begin());
    }
}

std::optional<std::size_t> RuleSet::index_of(Symbol s) const {
    auto it = by_symbol_.find(s);
    if (it == by_symbol_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> RuleSet::index_of(std::string_view id) const {
    return index_of(intern_symbol(id));
}

std::string RuleSet::fingerprint() const {
    std::string data;
    for (const auto& r : rules_) {
        data += r.id;
        data += r.buggy ? ":b:" : ":c:";
        data += r.group;
        data += ';';
    }
    return stable_digest(data);
}

std::string stable_digest(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

namespace {

class Analyzer {
public:
    Analyzer(const Term& term, const RuleSet& rules, StepMode mode) : term_(term), rules_(rules), mode_(mode) {}

    /// Residual strategies are built inside out: `r` becomes `r .*. then` for
    /// each enclosing frame.
    struct Frame {
        Strategy then;
        const Frame* outer;
    };

    static Strategy wrap(Strategy r, const Frame* f) {
        for (; f; f = f->outer) r = seq(r, f->then);
        return r;
    }

    // Appends transitions of `s`, each with its residual strategy wrapped by `outer`.
    bool run(Strategy s, const Frame* outer, std::vector<Transition>& out) {
        switch (s->kind) {
            case StrategyKind::succeed: return true;
            case StrategyKind::atom: {
                auto idx = rules_.index_of(s->rule);
                if (!idx) throw UnknownRule(std::string(symbol_name(s->rule)));
                scratch_.clear();
                rules_.apply(*idx, term_, scratch_);
                if (scratch_.empty()) return false;
                Strategy next = wrap(succeed(), outer);
                for (auto& app : scratch_) {
                    std::size_t h = hash_term(app.term);
                    out.push_back(Transition{*idx, app.position, std::move(app.term), next, h});
                }
                return false;
            }
            case StrategyKind::seq: {
                Frame f{s->right, outer};
                if (!run(s->left, &f, out)) return false;
                return run(s->right, outer, out);
            }
            case StrategyKind::choice: {
                bool a = run(s->left, outer, out);
                bool b = run(s->right, outer, out);
                return a || b;
            }
            case StrategyKind::many: {
                Frame f{s, outer};
                run(s->left, &f, out);
                return true;
            }
            case StrategyKind::repeat: {
                std::size_t before = out.size();
                Frame f{s, outer};
                run(s->left, &f, out);
                return out.size() == before;
            }
        }
        return false;
    }

    void dedup(std::vector<Transition>& ts) const {
        if (mode_ == StepMode::positional || ts.size() < 2) return;
        std::vector<Transition> kept;
        kept.reserve(ts.size());
        for (auto& t : ts) {
            bool dup = false;
            for (const auto& k : kept) {
                if (k.hash == t.hash && k.rule == t.rule && k.strategy == t.strategy && k.next == t.next) {
                    dup = true;
                    break;
                }
            }
            if (!dup) kept.push_back(std::move(t));
        }
        ts = std::move(kept);
    }

private:
    const Term& term_;
    const RuleSet& rules_;
    StepMode mode_;
    std::vector<Application> scratch_;
};

}  // namespace

StepResult analyze(const Term& term, Strategy s, const RuleSet& rules, StepMode mode) {
    Analyzer a(term, rules, mode);
    StepResult r;
    r.done = a.run(s, nullptr, r.steps);
    a.dedup(r.steps);
    return r;
}

bool done(const Term& term, Strategy s, const RuleSet& rules) {
    return analyze(term, s, rules).done;
}

std::vector<Transition> steps(const Term& term, Strategy s, const RuleSet& rules, StepMode mode) {
    return analyze(term, s, rules, mode).steps;
}

}  // namespace mbt
