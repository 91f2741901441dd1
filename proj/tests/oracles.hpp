#pragma once

// Brute-force reference computations written without the engine or the
// strategy semantics. They walk every rule application directly.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mbt/domain.hpp"
#include "mbt/engine.hpp"

namespace oracle {

using GroupNames = std::set<std::string>;
using Family = std::set<GroupNames>;
using Table = std::map<std::string, Family>;

inline bool subset(const GroupNames& a, const GroupNames& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Keeps only inclusion-minimal members.
inline void add_minimal(Family& f, const GroupNames& s) {
    for (const auto& m : f)
        if (subset(m, s)) return;
    for (auto it = f.begin(); it != f.end();) {
        if (subset(s, *it)) it = f.erase(it);
        else ++it;
    }
    f.insert(s);
}

struct SumResult {
    std::uint64_t paths = 0;
    std::uint64_t prefixes = 0;
    Table table;
};

/// add (correct), subtract and forget-first (buggy) on every adjacent pair until one term is left.
inline void sum_walk(const std::vector<std::int64_t>& v, const GroupNames& groups, SumResult& r) {
    if (v.size() == 1) {
        ++r.paths;
        add_minimal(r.table["S:" + std::to_string(v[0])], groups);
        return;
    }
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const std::int64_t a = v[i], b = v[i + 1];
        const std::pair<std::int64_t, const char*> ops[] = {{a + b, nullptr}, {a - b, "subtract-adjacent"}, {b, "forget-first"}};
        for (const auto& [value, group] : ops) {
            std::vector<std::int64_t> next(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i));
            next.push_back(value);
            next.insert(next.end(), v.begin() + static_cast<std::ptrdiff_t>(i) + 2, v.end());
            GroupNames g = groups;
            if (group) g.insert(group);
            ++r.prefixes;
            sum_walk(next, g, r);
        }
    }
}

inline SumResult sum_oracle(const std::vector<std::int64_t>& terms) {
    SumResult r;
    sum_walk(terms, {}, r);
    return r;
}

/// Final answer of a solved equation state, encoded like the engine's keys.
inline std::optional<std::string> poly_answer(const mbt::EqState& st) {
    std::vector<mbt::ExactNumber> values;
    for (const auto& e : st.entries) {
        if (e.kind == mbt::EqKind::all_reals) return "Q:undef";
        if (e.kind == mbt::EqKind::no_solution) continue;
        if (e.lhs.size() != 1 || e.lhs[0].kind != mbt::PolyKind::linear || !e.lhs[0].coeff.is_one() ||
            e.rhs.size() != 1 || e.rhs[0].kind != mbt::PolyKind::constant)
            return std::nullopt;
        values.push_back(e.rhs[0].coeff);
    }
    if (values.empty()) return "Q:none";
    std::sort(values.begin(), values.end(),
              [](const mbt::ExactNumber& x, const mbt::ExactNumber& y) { return x.to_long_double() < y.to_long_double(); });
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::string out = "Q:{";
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + values[i].encode();
    return out + "}";
}

struct RuleWalkResult {
    Table table;
    std::uint64_t stuck = 0;
};

/// Greedy repetition of "any rule": a state ends only when no rule applies.
/// Buggy applications beyond `cap` are cut off.
inline void rule_walk(const mbt::DomainContract& d, const mbt::Term& t, const GroupNames& groups, std::uint32_t count,
                      std::optional<std::uint32_t> cap, RuleWalkResult& r) {
    const mbt::RuleSet& rules = *d.rules;
    bool any = false;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (const auto& app : rules.apply(i, t)) {
            any = true;
            const auto& info = rules.info(i);
            std::uint32_t c = count + (info.buggy ? 1 : 0);
            if (cap && c > *cap) continue;
            GroupNames g = groups;
            if (info.buggy) g.insert(info.group);
            rule_walk(d, app.term, g, c, cap, r);
        }
    }
    if (any) return;
    std::optional<std::string> key;
    if (const auto* st = std::get_if<mbt::EqState>(&t)) key = poly_answer(*st);
    else if (const auto* s = std::get_if<mbt::SumExpr>(&t); s && s->terms.size() == 1) key = "S:" + std::to_string(s->terms[0]);
    if (!key) {
        ++r.stuck;
        return;
    }
    add_minimal(r.table[*key], groups);
}

inline RuleWalkResult rule_oracle(const mbt::DomainContract& d, const mbt::Term& task, std::optional<std::uint32_t> cap) {
    RuleWalkResult r;
    rule_walk(d, task, {}, 0, cap, r);
    return r;
}

/// Engine table in oracle form.
inline Table from_engine(const mbt::DiagnosisTable& t) {
    Table out;
    for (const auto& [key, ac] : t.entries) {
        Family f;
        for (mbt::GroupSet s : ac.sets()) {
            auto names = mbt::group_names(s, t.groups);
            f.insert(GroupNames(names.begin(), names.end()));
        }
        out[key] = f;
    }
    return out;
}

inline std::vector<std::string> polyeq_fixtures() {
    return {"2=x-3",        "x=2-3",          "2-3=x",         "2=x+3",
            "4*(x+6)^2+3=39", "[2x-5=0, x-5=-2x+4]", "3x-1=x+2", "5x+2=2x-7",
            "x^2-5x+6=0",   "(x-2)(x+3)=0",   "(x-1)(x+4)=6",  "2*(x-1)^2=8",
            "x^2=7",        "9=(x+1)^2",      "x=x",           "[x=5/2, x=9]"};
}

}  // namespace oracle
