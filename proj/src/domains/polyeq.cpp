#include <algorithm>

#include "mbt/domain.hpp"
#include "mbt/error.hpp"

namespace mbt {

namespace {

enum PolyRule : std::size_t {
    move_term,
    combine_terms,
    expand,
    divide_coefficient,
    isolate_square,
    take_root,
    quadratic_formula,
    null_factor,
    resolve_constant,
    move_no_flip,
    drop_minus,
    forget_equation,
    forget_divide,
    reverse_divide,
    approx_root,
};

constexpr int root_decimals = 2;

using Results = std::vector<std::vector<Equation>>;

bool lone_zero(const Side& s) {
    return s.size() == 1 && s[0].kind == PolyKind::constant && s[0].coeff.is_zero();
}

bool single_const(const Side& s) {
    return s.size() == 1 && s[0].kind == PolyKind::constant;
}

Side append(Side s, PolyTerm t) {
    if (lone_zero(s)) return {std::move(t)};
    s.push_back(std::move(t));
    return s;
}

Side erase_at(Side s, std::size_t i) {
    s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
    if (s.empty()) s.push_back(PolyTerm::constant(0));
    return s;
}

bool has_x(const Equation& e) {
    auto any = [](const Side& s) { return std::any_of(s.begin(), s.end(), [](const PolyTerm& t) { return t.has_x(); }); };
    return any(e.lhs) || any(e.rhs);
}

bool open_relation(const Equation& e) {
    return e.kind == EqKind::relation && !e.is_final();
}

/// f written as a side: slope*x, plus the offset when nonzero.
Side factor_side(const LinearFactor& f) {
    Side s{PolyTerm::linear(f.slope)};
    if (!f.offset.is_zero()) s.push_back(PolyTerm::constant(f.offset));
    return s;
}

Equation solved(ExactNumber v) {
    return Equation::relation({PolyTerm::linear(1)}, {PolyTerm::constant(v)});
}

void moves(const Equation& e, bool flip, Results& out) {
    if (!open_relation(e)) return;
    bool hx = has_x(e);
    for (std::size_t j = 0; j < e.lhs.size(); ++j) {
        const PolyTerm& t = e.lhs[j];
        if (t.kind != PolyKind::constant || t.coeff.is_zero() || !hx) continue;
        out.push_back({Equation::relation(erase_at(e.lhs, j), append(e.rhs, flip ? t.negated() : t))});
    }
    for (std::size_t j = 0; j < e.rhs.size(); ++j) {
        const PolyTerm& t = e.rhs[j];
        if (!t.has_x() || t.coeff.is_zero()) continue;
        out.push_back({Equation::relation(append(e.lhs, flip ? t.negated() : t), erase_at(e.rhs, j))});
    }
}

void combine_side(const Side& s, const std::function<void(Side)>& emit) {
    for (PolyKind k : {PolyKind::constant, PolyKind::linear, PolyKind::quadratic}) {
        std::size_t first = s.size();
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (s[j].kind != k) continue;
            if (first == s.size()) {
                first = j;
                continue;
            }
            Side next = s;
            next[first].coeff = s[first].coeff + s[j].coeff;
            next.erase(next.begin() + static_cast<std::ptrdiff_t>(j));
            emit(std::move(next));
            break;
        }
    }
    if (s.size() < 2) {
        if (s.size() == 1 && s[0].has_x() && s[0].coeff.is_zero()) emit({PolyTerm::constant(0)});
        return;
    }
    for (std::size_t j = 0; j < s.size(); ++j)
        if (s[j].coeff.is_zero()) emit(erase_at(s, j));
}

void combines(const Equation& e, Results& out) {
    if (!open_relation(e)) return;
    combine_side(e.lhs, [&](Side s) { out.push_back({Equation::relation(std::move(s), e.rhs)}); });
    combine_side(e.rhs, [&](Side s) { out.push_back({Equation::relation(e.lhs, std::move(s))}); });
}

Side expansion(const PolyTerm& t) {
    const ExactNumber& c = t.coeff;
    const LinearFactor& f = t.f;
    const LinearFactor& g = t.kind == PolyKind::square ? t.f : t.g;
    ExactNumber quad = c * f.slope * g.slope;
    ExactNumber lin = c * (f.slope * g.offset + f.offset * g.slope);
    ExactNumber con = c * f.offset * g.offset;
    Side s{PolyTerm::quadratic(quad)};
    if (!lin.is_zero()) s.push_back(PolyTerm::linear(lin));
    if (!con.is_zero()) s.push_back(PolyTerm::constant(con));
    return s;
}

void expands(const Equation& e, Results& out) {
    if (!open_relation(e)) return;
    int structured = 0;
    bool plain_x = false;
    for (const Side* s : {&e.lhs, &e.rhs})
        for (const auto& t : *s) {
            if (t.structured()) ++structured;
            else if (t.has_x()) plain_x = true;
        }
    if (structured == 0) return;
    bool product_const = e.lhs.size() == 1 && e.lhs[0].kind == PolyKind::product && single_const(e.rhs) &&
                         !e.rhs[0].coeff.is_zero();
    if (structured < 2 && !plain_x && !product_const) return;
    auto expand_side = [](const Side& s, std::size_t j) {
        Side ex = expansion(s[j]);
        Side next(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(j));
        next.insert(next.end(), ex.begin(), ex.end());
        next.insert(next.end(), s.begin() + static_cast<std::ptrdiff_t>(j) + 1, s.end());
        return next;
    };
    for (std::size_t j = 0; j < e.lhs.size(); ++j)
        if (e.lhs[j].structured()) out.push_back({Equation::relation(expand_side(e.lhs, j), e.rhs)});
    for (std::size_t j = 0; j < e.rhs.size(); ++j)
        if (e.rhs[j].structured()) out.push_back({Equation::relation(e.lhs, expand_side(e.rhs, j))});
}

/// a*x = c with a not 0 or 1.
bool scaled_linear(const Equation& e, ExactNumber& a, ExactNumber& c) {
    if (e.kind != EqKind::relation || e.lhs.size() != 1 || e.lhs[0].kind != PolyKind::linear || !single_const(e.rhs))
        return false;
    a = e.lhs[0].coeff;
    c = e.rhs[0].coeff;
    return !a.is_zero() && !a.is_one();
}

void divides(const Equation& e, PolyRule rule, Results& out) {
    ExactNumber a, c;
    if (!scaled_linear(e, a, c)) return;
    switch (rule) {
        case divide_coefficient: out.push_back({solved(c / a)}); break;
        case forget_divide: out.push_back({solved(c)}); break;
        case reverse_divide:
            if (!c.is_zero()) out.push_back({solved(a / c)});
            break;
        default: break;
    }
}

void isolates(const Equation& e, Results& out) {
    if (!open_relation(e) || !single_const(e.rhs) || e.lhs.size() > 2) return;
    const PolyTerm* sq = nullptr;
    const PolyTerm* q = nullptr;
    for (const auto& t : e.lhs) {
        if (t.kind == PolyKind::square && !sq) sq = &t;
        else if (t.kind == PolyKind::constant && !q) q = &t;
        else return;
    }
    if (!sq || sq->coeff.is_zero() || (sq->coeff.is_one() && !q)) return;
    ExactNumber rest = e.rhs[0].coeff - (q ? q->coeff : ExactNumber(0));
    out.push_back({Equation::relation({PolyTerm::square(1, sq->f)}, {PolyTerm::constant(rest / sq->coeff)})});
}

void roots(const Equation& e, bool approximate, Results& out) {
    if (e.kind != EqKind::relation || e.lhs.size() != 1 || e.lhs[0].kind != PolyKind::square ||
        !e.lhs[0].coeff.is_one() || !single_const(e.rhs) || !e.rhs[0].coeff.is_rational())
        return;
    const Rational c = e.rhs[0].coeff.a();
    Side f = factor_side(e.lhs[0].f);
    if (c.sign() > 0) {
        ExactNumber root = ExactNumber::sqrt_of(c);
        if (approximate) {
            if (root.is_rational()) return;
            root = rounded_sqrt(c, root_decimals);
        }
        out.push_back({Equation::relation(f, {PolyTerm::constant(root)}),
                       Equation::relation(f, {PolyTerm::constant(-root)})});
        return;
    }
    if (approximate) return;
    if (c.is_zero()) out.push_back({Equation::relation(f, {PolyTerm::constant(0)})});
    else out.push_back({Equation::no_solution()});
}

void quadratics(const Equation& e, Results& out) {
    if (e.kind != EqKind::relation || !single_const(e.rhs)) return;
    const PolyTerm* terms[3] = {nullptr, nullptr, nullptr};
    for (const auto& t : e.lhs) {
        if (t.structured()) return;
        auto slot = static_cast<std::size_t>(t.degree());
        if (terms[slot]) return;
        terms[slot] = &t;
    }
    if (!terms[2] || terms[2]->coeff.is_zero()) return;
    ExactNumber a = terms[2]->coeff;
    ExactNumber b = terms[1] ? terms[1]->coeff : ExactNumber(0);
    ExactNumber c = (terms[0] ? terms[0]->coeff : ExactNumber(0)) - e.rhs[0].coeff;
    ExactNumber disc = b * b - ExactNumber(4) * a * c;
    if (!disc.is_rational()) return;
    ExactNumber two_a = ExactNumber(2) * a;
    int s = disc.a().sign();
    if (s < 0) {
        out.push_back({Equation::no_solution()});
    } else if (s == 0) {
        out.push_back({solved(-b / two_a)});
    } else {
        ExactNumber root = ExactNumber::sqrt_of(disc.a());
        out.push_back({solved((-b + root) / two_a), solved((-b - root) / two_a)});
    }
}

void null_factors(const Equation& e, Results& out) {
    if (e.kind != EqKind::relation || e.lhs.size() != 1 || e.lhs[0].kind != PolyKind::product ||
        e.lhs[0].coeff.is_zero() || !lone_zero(e.rhs))
        return;
    out.push_back({Equation::relation(factor_side(e.lhs[0].f), {PolyTerm::constant(0)}),
                   Equation::relation(factor_side(e.lhs[0].g), {PolyTerm::constant(0)})});
}

void resolves(const Equation& e, Results& out) {
    if (e.kind != EqKind::relation || !single_const(e.lhs) || !single_const(e.rhs)) return;
    out.push_back({e.lhs[0].coeff == e.rhs[0].coeff ? Equation::all_reals() : Equation::no_solution()});
}

void drop_minuses(const Equation& e, Results& out) {
    if (!open_relation(e)) return;
    for (std::size_t j = 0; j < e.lhs.size(); ++j) {
        if (e.lhs[j].kind != PolyKind::constant || !e.lhs[j].coeff.is_negative_signed()) continue;
        Side s = e.lhs;
        s[j] = s[j].negated();
        out.push_back({Equation::relation(std::move(s), e.rhs)});
    }
    for (std::size_t j = 0; j < e.rhs.size(); ++j) {
        if (e.rhs[j].kind != PolyKind::constant || !e.rhs[j].coeff.is_negative_signed()) continue;
        Side s = e.rhs;
        s[j] = s[j].negated();
        out.push_back({Equation::relation(e.lhs, std::move(s))});
    }
}

void apply_equation_rule(PolyRule rule, const Equation& e, bool singleton, Results& out) {
    switch (rule) {
        case move_term: moves(e, true, out); break;
        case move_no_flip: moves(e, false, out); break;
        case combine_terms: combines(e, out); break;
        case expand: expands(e, out); break;
        case divide_coefficient:
        case forget_divide:
        case reverse_divide: divides(e, rule, out); break;
        case isolate_square: isolates(e, out); break;
        case take_root:
            if (singleton) roots(e, false, out);
            break;
        case approx_root:
            if (singleton) roots(e, true, out);
            break;
        case quadratic_formula:
            if (singleton) quadratics(e, out);
            break;
        case null_factor:
            if (singleton) null_factors(e, out);
            break;
        case resolve_constant: resolves(e, out); break;
        case drop_minus: drop_minuses(e, out); break;
        case forget_equation: break;
    }
}

void apply_poly(std::size_t rule, const Term& term, std::vector<Application>& out) {
    const auto* st = std::get_if<EqState>(&term);
    if (!st) return;
    std::size_t position = 0;
    auto rid = static_cast<PolyRule>(rule);
    if (rid == forget_equation) {
        if (st->entries.size() != 2 || st->is_final()) return;
        out.push_back({++position, EqState{{st->entries[1]}}});
        out.push_back({++position, EqState{{st->entries[0]}}});
        return;
    }
    bool singleton = st->entries.size() == 1;
    for (std::size_t i = 0; i < st->entries.size(); ++i) {
        Results results;
        try {
            apply_equation_rule(rid, st->entries[i], singleton, results);
        } catch (const DomainError&) {
            // arithmetic outside the representable numbers: the rule does not apply here
            results.clear();
        }
        for (auto& eqs : results) {
            EqState next;
            next.entries.assign(st->entries.begin(), st->entries.begin() + static_cast<std::ptrdiff_t>(i));
            for (auto& eq : eqs) next.entries.push_back(std::move(eq));
            next.entries.insert(next.entries.end(), st->entries.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                st->entries.end());
            out.push_back({++position, std::move(next)});
        }
    }
}

std::uint64_t equation_weight(const Equation& e) {
    if (e.is_final()) return 0;
    std::uint64_t structured = 0, non_monic = 0, terms = 0, misplaced = 0, zeros = 0, negatives = 0;
    bool quadratic = false;
    auto scan = [&](const Side& s, bool left) {
        for (const auto& t : s) {
            ++terms;
            if (t.degree() == 2) quadratic = true;
            if (t.structured()) {
                ++structured;
                if (!t.coeff.is_one()) ++non_monic;
            }
            if (t.coeff.is_zero()) {
                if (!lone_zero(s)) ++zeros;
                continue;
            }
            if (left ? t.kind == PolyKind::constant : t.has_x()) ++misplaced;
            if (t.kind == PolyKind::constant && t.coeff.is_negative_signed()) ++negatives;
        }
    };
    scan(e.lhs, true);
    scan(e.rhs, false);
    return (quadratic ? 1000 : 1) + 100 * structured + 2 * non_monic + 2 * terms + 5 * misplaced + zeros + negatives;
}

std::uint64_t poly_measure(const Term& t) {
    const auto* st = std::get_if<EqState>(&t);
    if (!st) return 0;
    std::uint64_t m = st->entries.size();
    for (const auto& e : st->entries) m += equation_weight(e);
    return m;
}

std::optional<NormalForm> poly_normal_form(const Term& t) {
    const auto* st = std::get_if<EqState>(&t);
    if (!st || !st->is_final()) return std::nullopt;
    std::vector<ExactNumber> values;
    for (const auto& e : st->entries) {
        if (e.kind == EqKind::all_reals) return NormalForm::undefined();
        if (e.kind == EqKind::relation) values.push_back(e.rhs[0].coeff);
    }
    return NormalForm::solutions(std::move(values));
}

}  // namespace

std::shared_ptr<const DomainContract> make_polyeq() {
    auto d = std::make_shared<DomainContract>();
    d->id = "polyeq";
    d->sort = TermSort::equation;
    std::vector<RuleInfo> infos{
        {"move-term", false, "", ""},
        {"combine-terms", false, "", ""},
        {"expand", false, "", ""},
        {"divide-coefficient", false, "", ""},
        {"isolate-square", false, "", ""},
        {"take-root", false, "", ""},
        {"quadratic-formula", false, "", ""},
        {"null-factor", false, "", ""},
        {"resolve-constant", false, "", ""},
        {"move-no-flip", true, "negate-a-term", "negate a term"},
        {"drop-minus", true, "negate-a-term", "negate a term"},
        {"forget-equation", true, "forget-an-equation", "forget an equation"},
        {"forget-divide", true, "forget-divide", "forget divide"},
        {"reverse-divide", true, "reverse-divide", "reverse divide"},
        {"approx-root", true, "approximate-root", "approximate root"},
    };
    std::vector<std::string> correct, all;
    for (const auto& r : infos) {
        all.push_back(r.id);
        if (!r.buggy) correct.push_back(r.id);
    }
    d->rules = std::make_shared<RuleSet>(std::move(infos), apply_poly);
    d->solving = repeat(choice_of(correct));
    d->buggy = repeat(choice_of(all));
    d->normal_form = poly_normal_form;
    d->measure = poly_measure;
    d->defaults.max_buggy_applications = 2;
    return d;
}

}  // namespace mbt
