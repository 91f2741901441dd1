#include <doctest.h>

#include <limits>
#include <map>
#include <random>
#include <set>

#include "mbt/domain.hpp"
#include "mbt/error.hpp"
#include "oracles.hpp"

using namespace mbt;

namespace {

std::set<std::string> results(const DomainContract& d, const std::string& rule, const std::string& text) {
    std::set<std::string> out;
    for (const auto& app : d.rules->apply(*d.rules->index_of(rule), d.parse(text))) out.insert(print_term(app.term));
    return out;
}

// Final answers of every maximal run of the solving strategy; "stuck" marks a dead end.
using Finals = std::set<std::string>;

const Finals& solving_finals(const DomainContract& d, const Term& t, Strategy s,
                             std::map<std::pair<std::string, std::uint32_t>, Finals>& memo) {
    auto key = std::make_pair(print_term(t), strategy_key(s));
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Finals out;
    StepResult r = analyze(t, s, *d.rules);
    if (r.done) {
        auto nf = d.normal_form(t);
        out.insert(nf ? nf->encode() : "stuck:" + print_term(t));
    }
    if (!r.done && r.steps.empty()) out.insert("stuck:" + print_term(t));
    for (const auto& tr : r.steps) {
        const Finals& sub = solving_finals(d, tr.next, tr.strategy, memo);
        out.insert(sub.begin(), sub.end());
    }
    return memo[key] = std::move(out);
}

Rational small_rational(std::mt19937_64& rng, bool nonzero) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    int n = num(rng);
    if (nonzero && n == 0) n = 1;
    return Rational(n, den(rng));
}

Side random_side(std::mt19937_64& rng, bool linear_only) {
    std::uniform_int_distribution<int> len(1, linear_only ? 3 : 2), kind(0, linear_only ? 1 : 4);
    Side s;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
        ExactNumber c = small_rational(rng, true);
        LinearFactor f{small_rational(rng, true), small_rational(rng, false)};
        LinearFactor g{small_rational(rng, true), small_rational(rng, false)};
        switch (kind(rng)) {
            case 0: s.push_back(PolyTerm::constant(c)); break;
            case 1: s.push_back(PolyTerm::linear(c)); break;
            case 2: s.push_back(PolyTerm::quadratic(c)); break;
            case 3: s.push_back(PolyTerm::square(c, f)); break;
            default: s.push_back(PolyTerm::product(c, f, g)); break;
        }
    }
    return s;
}

EqState random_state(std::mt19937_64& rng) {
    EqState st;
    if (rng() % 3 == 0) {
        st.entries.push_back(Equation::relation(random_side(rng, true), random_side(rng, true)));
        st.entries.push_back(Equation::relation(random_side(rng, true), random_side(rng, true)));
    } else {
        st.entries.push_back(Equation::relation(random_side(rng, false), random_side(rng, false)));
    }
    return st;
}

}  // namespace

TEST_CASE("registry") {
    CHECK(find_domain("sumreduce") == find_domain("sumreduce"));
    CHECK(find_domain("polyeq")->sort == TermSort::equation);
    CHECK_THROWS_AS(find_domain("nope"), DomainError);
    CHECK_THROWS_AS(find_domain("hypostrat:0:6:1"), DomainError);
    CHECK_THROWS_AS(find_domain("hypostrat:2:1:1"), DomainError);
    CHECK(find_domain("hypostrat:3:4:42")->rules->size() == 3);
    auto p = parse_hypostrat_id("hypostrat:4:8:7");
    CHECK(p.n == 4);
    CHECK(p.k == 8);
    CHECK(p.seed == 7);
    CHECK(p.domain_id() == "hypostrat:4:8:7");
}

TEST_CASE("sum rules") {
    auto d = find_domain("sumreduce");
    CHECK(results(*d, "add-adjacent", "1+2+3") == std::set<std::string>{"3+3", "1+5"});
    CHECK(results(*d, "subtract-adjacent", "1+2+3") == std::set<std::string>{"-1+3", "1+-1"});
    CHECK(results(*d, "forget-first", "1+2+3") == std::set<std::string>{"2+3", "1+3"});
    CHECK(results(*d, "add-adjacent", "7").empty());
    constexpr auto big = std::numeric_limits<std::int64_t>::max();
    std::vector<Application> out;
    d->rules->apply(0, SumExpr{{big, 1}}, out);
    CHECK(out.empty());
    CHECK(d->normal_form(SumExpr{{4}})->encode() == "S:4");
    CHECK_FALSE(d->normal_form(SumExpr{{4, 5}}));
    CHECK(print_strategy(d->solving) == "repeat(add-adjacent)");
    CHECK(print_strategy(d->buggy) == "repeat(add-adjacent <|> subtract-adjacent <|> forget-first)");
    CHECK_FALSE(d->defaults.max_buggy_applications);
}

TEST_CASE("hypostrat values are frozen") {
    CHECK(hypostrat_rule_value(1, 3, 4, 42) == -7899);
    CHECK(hypostrat_rule_value(2, 3, 4, 42) == 441744);
    CHECK(print_sum(make_epsilon({2, 6, 7})) == "-27293+719524+-363218+124647+-267054+-573661");
    CHECK(print_sum(make_epsilon({2, 6, 8})) == "-526844+-864032+-75208+8557+-976148+734322");
    CHECK(make_epsilon({2, 2, 7}).terms.size() == 2);
    CHECK(make_epsilon({3, 6, 7}) == make_epsilon({2, 6, 7}));
}

TEST_CASE("property: hypostrat values are bounded and distinct per pair") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> v(-999999, 999999);
    for (int i = 0; i < 2000; ++i) {
        std::int64_t a = v(rng), b = v(rng);
        std::uint64_t seed = rng() % 100;
        std::set<std::int64_t> seen;
        for (int r = 1; r <= 8; ++r) {
            std::int64_t x = hypostrat_rule_value(r, a, b, seed);
            CHECK(std::abs(x) < 1000000);
            seen.insert(x);
        }
        CHECK(seen.size() == 8);
    }
}

TEST_CASE("hypostrat rules") {
    auto d = find_domain("hypostrat:3:4:42");
    const RuleSet& rules = *d->rules;
    CHECK_FALSE(rules.info(0).buggy);
    CHECK(rules.info(1).buggy);
    CHECK(rules.groups().size() == 2);
    CHECK(results(*d, "R1", "3+4") == std::set<std::string>{"-7899"});
    CHECK(results(*d, "R2", "3+4") == std::set<std::string>{"441744"});
    PathStats st = enumerate_paths(make_epsilon({3, 4, 42}), d->buggy, rules, d->normal_form,
                                   [&] { auto c = default_config(*d); c.mode = SearchMode::normal; return c; }());
    CHECK(st.path_count == 27u * 6u);
}

TEST_CASE("equation rules") {
    auto d = find_domain("polyeq");
    CHECK(results(*d, "move-term", "2=x-3") == std::set<std::string>{"[0=x-3-2]", "[2-x=-3]"});
    CHECK(results(*d, "move-no-flip", "2=x-3") == std::set<std::string>{"[0=x-3+2]", "[2+x=-3]"});
    CHECK(results(*d, "drop-minus", "2=x-3") == std::set<std::string>{"[2=x+3]"});
    CHECK(results(*d, "divide-coefficient", "2x=6") == std::set<std::string>{"[x=3]"});
    CHECK(results(*d, "forget-divide", "2x=6") == std::set<std::string>{"[x=6]"});
    CHECK(results(*d, "reverse-divide", "2x=6") == std::set<std::string>{"[x=1/3]"});
    CHECK(results(*d, "reverse-divide", "2x=0").empty());
    CHECK(results(*d, "isolate-square", "4*(x+6)^2=36") == std::set<std::string>{"[(x+6)^2=9]"});
    CHECK(results(*d, "take-root", "(x+6)^2=9") == std::set<std::string>{"[x+6=3, x+6=-3]"});
    CHECK(results(*d, "null-factor", "(x-2)(x+3)=0") == std::set<std::string>{"[x-2=0, x+3=0]"});
    CHECK(results(*d, "quadratic-formula", "x^2-5x+6=0") == std::set<std::string>{"[x=3, x=2]"});
    CHECK(results(*d, "quadratic-formula", "x^2=7") == std::set<std::string>{"[x=sqrt(7), x=-sqrt(7)]"});
    CHECK(results(*d, "approx-root", "(x+1)^2=7") == std::set<std::string>{"[x+1=53/20, x+1=-53/20]"});
    CHECK(results(*d, "approx-root", "(x+1)^2=9").empty());
    CHECK(results(*d, "approx-root", "x^2=7").empty());
    CHECK(results(*d, "forget-equation", "[2x-5=0, x-5=-2x+4]") ==
          std::set<std::string>{"[x-5=-2x+4]", "[2x-5=0]"});
    CHECK(results(*d, "forget-equation", "[x=5/2, x=9]").empty());
    CHECK(results(*d, "combine-terms", "0x=3") == std::set<std::string>{"[0=3]"});
    CHECK(results(*d, "resolve-constant", "0=3") == std::set<std::string>{"[false]"});
    CHECK(results(*d, "resolve-constant", "2=2") == std::set<std::string>{"[true]"});
    CHECK(d->defaults.max_buggy_applications == 2u);
}

TEST_CASE("equation normal forms") {
    auto d = find_domain("polyeq");
    CHECK(d->normal_form(d->parse("[x=3, x=-1]"))->encode() == "Q:{-1|0|0,3|0|0}");
    CHECK(d->normal_form(d->parse("[x=3, false]"))->encode() == "Q:{3|0|0}");
    CHECK(d->normal_form(d->parse("false"))->encode() == "Q:none");
    CHECK(d->normal_form(d->parse("[true, x=1]"))->encode() == "Q:undef");
    CHECK_FALSE(d->normal_form(d->parse("2x=1")));
}

TEST_CASE("group vocabulary") {
    const std::set<std::string> vocabulary{"negate-a-term", "forget-an-equation", "forget-divide", "reverse-divide",
                                           "approximate-root"};
    auto d = find_domain("polyeq");
    std::set<std::string> seen;
    for (const auto& r : d->rules->rules()) {
        if (r.buggy) {
            CHECK(vocabulary.count(r.group) == 1);
            seen.insert(r.group);
        } else {
            CHECK(r.group == r.id);
        }
    }
    CHECK(seen == vocabulary);
    for (std::size_t bit = 0; bit < d->rules->groups().size(); ++bit) {
        std::string label = d->rules->groups()[bit];
        std::replace(label.begin(), label.end(), '-', ' ');
        CHECK(d->rules->group_label(bit) == label);
    }
}

TEST_CASE("property: every transition lowers the measure") {
    std::mt19937_64 rng(8);
    for (const char* id : {"sumreduce", "polyeq", "hypostrat:3:6:7"}) {
        auto d = find_domain(id);
        std::vector<Term> starts;
        if (std::string(id) == "polyeq") {
            for (const auto& f : oracle::polyeq_fixtures()) starts.push_back(d->parse(f));
            for (int i = 0; i < 200; ++i) starts.push_back(random_state(rng));
        } else {
            for (int i = 0; i < 50; ++i) {
                SumExpr e;
                for (int j = 0, n = 1 + static_cast<int>(rng() % 6); j < n; ++j) e.terms.push_back(static_cast<std::int64_t>(rng() % 19) - 9);
                starts.push_back(e);
            }
        }
        for (const Term& start : starts) {
            for (int walk = 0; walk < 5; ++walk) {
                Term t = start;
                Strategy s = d->buggy;
                for (int step = 0; step < 60; ++step) {
                    StepResult r = analyze(t, s, *d->rules);
                    for (const auto& tr : r.steps) {
                        INFO(print_term(t), " --", d->rules->info(tr.rule).id, "-> ", print_term(tr.next));
                        CHECK(d->measure(tr.next) < d->measure(t));
                    }
                    if (r.steps.empty()) break;
                    const auto& tr = r.steps[rng() % r.steps.size()];
                    t = tr.next;
                    s = tr.strategy;
                }
            }
        }
    }
}

TEST_CASE("property: the equation solving strategy is total and confluent") {
    auto d = find_domain("polyeq");
    std::mt19937_64 rng(31);
    std::vector<Term> states;
    for (int i = 0; i < 300; ++i) states.push_back(random_state(rng));
    // states reached by buggy steps from the fixtures
    for (const auto& f : oracle::polyeq_fixtures()) {
        for (int walk = 0; walk < 20; ++walk) {
            Term t = d->parse(f);
            Strategy s = d->buggy;
            for (int step = 0; step < 40; ++step) {
                auto next = steps(t, s, *d->rules);
                if (next.empty()) break;
                const auto& tr = next[rng() % next.size()];
                t = tr.next;
                s = tr.strategy;
                states.push_back(t);
            }
        }
    }
    for (const Term& t : states) {
        INFO(print_term(t));
        std::map<std::pair<std::string, std::uint32_t>, Finals> memo;
        const Finals& finals = solving_finals(*d, t, d->solving, memo);
        REQUIRE(finals.size() == 1);
        CHECK(finals.begin()->rfind("Q:", 0) == 0);
    }
}
