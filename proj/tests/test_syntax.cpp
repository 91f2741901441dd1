#include <doctest.h>

#include <random>

#include "mbt/error.hpp"
#include "mbt/syntax.hpp"

using namespace mbt;

TEST_CASE("sums parse and print") {
    SumExpr e = parse_sum("1+-2+30");
    CHECK(e.terms == std::vector<std::int64_t>{1, -2, 30});
    CHECK(print_sum(e) == "1+-2+30");
    CHECK(print_term(parse_term("7", "sumreduce")) == "7");
    CHECK(std::holds_alternative<SumExpr>(parse_term("1+2", "hypostrat:2:6:1")));
    CHECK(std::holds_alternative<EqState>(parse_term("x=1", "polyeq")));
}

TEST_CASE("equation states print canonically") {
    CHECK(print_eq_state(parse_eq_state("2=x-3")) == "[2=x-3]");
    CHECK(print_eq_state(parse_eq_state("4*(x+6)^2+3=39")) == "[4*(x+6)^2+3=39]");
    CHECK(print_eq_state(parse_eq_state("[2x-5=0, x-5=-2x+4]")) == "[2x-5=0, x-5=-2x+4]");
    CHECK(print_eq_state(parse_eq_state("(x-2)(x+3)=0")) == "[(x-2)(x+3)=0]");
    CHECK(print_eq_state(parse_eq_state("x=sqrt(8)")) == "[x=2*sqrt(2)]");
    CHECK(print_eq_state(parse_eq_state("-x+0=4/6")) == "[-x+0=2/3]");
    CHECK(print_eq_state(parse_eq_state("[x=5/2, false]")) == "[x=5/2, false]");
    CHECK(print_eq_state(parse_eq_state("true")) == "[true]");
}

TEST_CASE("equations are kept as written") {
    EqState s = parse_eq_state("x-5=-2x+4");
    REQUIRE(s.entries.size() == 1);
    CHECK(s.entries[0].lhs.size() == 2);
    CHECK(s.entries[0].rhs.size() == 2);
    CHECK(s.entries[0].rhs[0] == PolyTerm::linear(ExactNumber(-2)));
}

TEST_CASE("parse errors carry positions") {
    auto pos = [](const char* text) -> long {
        try {
            parse_eq_state(text);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1;
    };
    CHECK(pos("2x=") == 3);
    CHECK(pos("x==2") == 2);
    CHECK(pos("x=3/0") == 4);
    CHECK_THROWS_AS(parse_sum("1++2"), ParseError);
    CHECK_THROWS_AS(parse_sum(""), ParseError);
}

TEST_CASE("degree above two is a domain error") {
    CHECK_THROWS_AS(parse_eq_state("x^3=1"), DomainError);
}

TEST_CASE("finality") {
    CHECK(parse_eq_state("x=3").is_final());
    CHECK(parse_eq_state("[x=3, false]").is_final());
    CHECK_FALSE(parse_eq_state("2x=3").is_final());
    CHECK_FALSE(parse_eq_state("3=x").is_final());
}

namespace {

ExactNumber random_number(std::mt19937_64& rng, bool allow_surd) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4), pick(0, 5);
    int n = num(rng);
    if (n == 0) n = 1;
    Rational a(n, den(rng));
    if (allow_surd && pick(rng) == 0) return ExactNumber::surd_normalize(pick(rng) < 3 ? Rational(0) : a, Rational(1, den(rng)), 3);
    return a;
}

LinearFactor random_factor(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 2);
    LinearFactor f;
    if (pick(rng) == 0) f.slope = random_number(rng, false);
    f.offset = random_number(rng, false);
    return f;
}

Side random_side(std::mt19937_64& rng, bool linear_only) {
    std::uniform_int_distribution<int> len(1, 3), kind(0, linear_only ? 1 : 4);
    Side s;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
        ExactNumber c = random_number(rng, true);
        switch (kind(rng)) {
            case 0: s.push_back(PolyTerm::constant(c)); break;
            case 1: s.push_back(PolyTerm::linear(c)); break;
            case 2: s.push_back(PolyTerm::quadratic(c)); break;
            case 3: s.push_back(PolyTerm::square(c, random_factor(rng))); break;
            default: s.push_back(PolyTerm::product(c, random_factor(rng), random_factor(rng))); break;
        }
    }
    return s;
}

}  // namespace

TEST_CASE("property: printing then parsing is the identity") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> pick(0, 9);
    for (int i = 0; i < 1000; ++i) {
        EqState st;
        int which = pick(rng);
        if (which == 0) {
            st.entries.push_back(Equation::all_reals());
        } else if (which == 1) {
            st.entries.push_back(Equation::relation(random_side(rng, true), random_side(rng, true)));
            st.entries.push_back(Equation::no_solution());
        } else if (which < 4) {
            st.entries.push_back(Equation::relation(random_side(rng, true), random_side(rng, true)));
            st.entries.push_back(Equation::relation(random_side(rng, true), random_side(rng, true)));
        } else {
            st.entries.push_back(Equation::relation(random_side(rng, false), random_side(rng, false)));
        }
        std::string text = print_eq_state(st);
        INFO(text);
        CHECK(parse_eq_state(text) == st);
        CHECK(print_eq_state(parse_eq_state(text)) == text);
    }
    for (int i = 0; i < 300; ++i) {
        std::uniform_int_distribution<std::int64_t> v(-1000000, 1000000);
        SumExpr e;
        int n = 1 + pick(rng);
        for (int j = 0; j < n; ++j) e.terms.push_back(v(rng));
        CHECK(parse_sum(print_sum(e)) == e);
    }
}

TEST_CASE("normal form encoding round-trips") {
    const std::vector<NormalForm> samples{
        NormalForm::sum_value(-42),
        NormalForm::solutions({ExactNumber(Rational(5, 2)), ExactNumber(-1)}),
        NormalForm::solutions({ExactNumber::surd_normalize(-6, 1, 3), ExactNumber::surd_normalize(-6, -1, 3)}),
        NormalForm::no_real_solutions(),
        NormalForm::undefined(),
    };
    for (const auto& nf : samples) CHECK(NormalForm::decode(nf.encode()) == nf);
    CHECK(NormalForm::sum_value(-42).encode() == "S:-42");
    CHECK(NormalForm::solutions({}).kind() == NormalForm::Kind::no_real_solutions);
    CHECK(NormalForm::solutions({ExactNumber(3), ExactNumber(-1), ExactNumber(3)}).values().size() == 2);
    CHECK(NormalForm::solutions({ExactNumber(3), ExactNumber(-1)}).values().front() == ExactNumber(-1));
}
