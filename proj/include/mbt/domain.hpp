#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "mbt/engine.hpp"
#include "mbt/strategy.hpp"
#include "mbt/syntax.hpp"
#include "mbt/term.hpp"

namespace mbt {

struct DomainContract {
    std::string id;
    TermSort sort = TermSort::sum;
    std::shared_ptr<const RuleSet> rules;
    Strategy solving = nullptr;  // correct rules only
    Strategy buggy = nullptr;    // all rules
    NormalFormFn normal_form;
    /// Strictly decreases along every transition.
    std::function<std::uint64_t(const Term&)> measure;
    SearchConfig defaults;

    Term parse(std::string_view text) const { return parse_term(text, id); }
    std::string print(const Term& t) const { return print_term(t); }
};

/// Cached, thread-safe lookup of "sumreduce", "polyeq" or "hypostrat:<n>:<k>:<seed>".
std::shared_ptr<const DomainContract> find_domain(std::string_view id);

SearchConfig default_config(const DomainContract& d);

std::shared_ptr<const DomainContract> make_sumreduce();
std::shared_ptr<const DomainContract> make_polyeq();

struct HypoStratParams {
    int n = 2;
    int k = 6;
    std::uint64_t seed = 1;

    std::string domain_id() const;
};

HypoStratParams parse_hypostrat_id(std::string_view id);
std::shared_ptr<const DomainContract> make_hypostrat(const HypoStratParams& p);

/// Value of rule R_i on the adjacent pair (a, b); distinct across i for fixed (a, b, seed).
std::int64_t hypostrat_rule_value(int i, std::int64_t a, std::int64_t b, std::uint64_t seed);

/// k seeded integers, each with |v| < 10^6.
SumExpr make_epsilon(const HypoStratParams& p);

}  // namespace mbt
