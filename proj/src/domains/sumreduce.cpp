#include <cstdint>

#include "mbt/domain.hpp"

namespace mbt {

namespace {

enum SumRule : std::size_t { add_adjacent, subtract_adjacent, forget_first };

void apply_sum(std::size_t rule, const Term& term, std::vector<Application>& out) {
    const auto* e = std::get_if<SumExpr>(&term);
    if (!e) return;
    const auto& v = e->terms;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        std::int64_t r = 0;
        switch (rule) {
            case add_adjacent:
                if (__builtin_add_overflow(v[i], v[i + 1], &r)) continue;
                break;
            case subtract_adjacent:
                if (__builtin_sub_overflow(v[i], v[i + 1], &r)) continue;
                break;
            case forget_first: r = v[i + 1]; break;
            default: return;
        }
        SumExpr next;
        next.terms.reserve(v.size() - 1);
        next.terms.insert(next.terms.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i));
        next.terms.push_back(r);
        next.terms.insert(next.terms.end(), v.begin() + static_cast<std::ptrdiff_t>(i) + 2, v.end());
        out.push_back({i + 1, std::move(next)});
    }
}

}  // namespace

std::optional<NormalForm> sum_normal_form(const Term& t) {
    const auto* e = std::get_if<SumExpr>(&t);
    if (!e || e->terms.size() != 1) return std::nullopt;
    return NormalForm::sum_value(e->terms.front());
}

std::uint64_t sum_measure(const Term& t) {
    const auto* e = std::get_if<SumExpr>(&t);
    return e ? e->terms.size() : 0;
}

std::shared_ptr<const DomainContract> make_sumreduce() {
    auto d = std::make_shared<DomainContract>();
    d->id = "sumreduce";
    d->sort = TermSort::sum;
    d->rules = std::make_shared<RuleSet>(
        std::vector<RuleInfo>{
            {"add-adjacent", false, "", ""},
            {"subtract-adjacent", true, "subtract-adjacent", "subtract adjacent"},
            {"forget-first", true, "forget-first", "forget first"},
        },
        apply_sum);
    d->solving = repeat(atom("add-adjacent"));
    d->buggy = repeat(choice_of({"add-adjacent", "subtract-adjacent", "forget-first"}));
    d->normal_form = sum_normal_form;
    d->measure = sum_measure;
    return d;
}

}  // namespace mbt
