#include <algorithm>
#include <charconv>

#include "mbt/domain.hpp"
#include "mbt/error.hpp"

namespace mbt {

std::optional<NormalForm> sum_normal_form(const Term& t);
std::uint64_t sum_measure(const Term& t);

namespace {

constexpr std::int64_t value_span = 1999999;  // values lie in [-999999, 999999]

std::uint64_t avalanche(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::int64_t fold(std::uint64_t h) {
    return static_cast<std::int64_t>(h % value_span) - 999999;
}

std::int64_t bump(std::int64_t v) {
    return (v + 999999 + 1) % value_span - 999999;
}

std::int64_t raw_value(int i, std::int64_t a, std::int64_t b, std::uint64_t seed) {
    std::uint64_t h = avalanche(seed);
    h = avalanche(h ^ static_cast<std::uint64_t>(i));
    h = avalanche(h ^ static_cast<std::uint64_t>(a));
    h = avalanche(h ^ static_cast<std::uint64_t>(b));
    return fold(h);
}

}  // namespace

std::int64_t hypostrat_rule_value(int i, std::int64_t a, std::int64_t b, std::uint64_t seed) {
    if (i < 1) throw DomainError("rule index must be at least 1");
    std::vector<std::int64_t> taken;
    taken.reserve(static_cast<std::size_t>(i));
    for (int j = 1; j <= i; ++j) {
        std::int64_t v = raw_value(j, a, b, seed);
        while (std::find(taken.begin(), taken.end(), v) != taken.end()) v = bump(v);
        taken.push_back(v);
    }
    return taken.back();
}

SumExpr make_epsilon(const HypoStratParams& p) {
    if (p.k < 2) throw DomainError("epsilon needs at least 2 terms");
    SumExpr e;
    std::uint64_t state = p.seed;
    for (int i = 0; i < p.k; ++i) {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        e.terms.push_back(fold(z ^ (z >> 31)));
    }
    return e;
}

std::string HypoStratParams::domain_id() const {
    return "hypostrat:" + std::to_string(n) + ":" + std::to_string(k) + ":" + std::to_string(seed);
}

HypoStratParams parse_hypostrat_id(std::string_view id) {
    auto bad = [&]() { return DomainError("expected hypostrat:<n>:<k>:<seed>, got " + std::string(id)); };
    if (!id.starts_with("hypostrat:")) throw bad();
    std::string_view rest = id.substr(10);
    std::uint64_t parts[3] = {0, 0, 0};
    for (int i = 0; i < 3; ++i) {
        auto colon = rest.find(':');
        if ((i < 2) == (colon == std::string_view::npos)) throw bad();
        std::string_view piece = rest.substr(0, colon);
        auto [p, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), parts[i]);
        if (ec != std::errc{} || p != piece.data() + piece.size() || piece.empty()) throw bad();
        if (i < 2) rest = rest.substr(colon + 1);
    }
    if (parts[0] < 1 || parts[0] > 64 || parts[1] < 2 || parts[1] > 1000) throw bad();
    return {static_cast<int>(parts[0]), static_cast<int>(parts[1]), parts[2]};
}

std::shared_ptr<const DomainContract> make_hypostrat(const HypoStratParams& p) {
    auto d = std::make_shared<DomainContract>();
    d->id = p.domain_id();
    d->sort = TermSort::sum;
    std::vector<RuleInfo> infos;
    std::vector<std::string> ids;
    for (int i = 1; i <= p.n; ++i) {
        std::string id = "R" + std::to_string(i);
        infos.push_back({id, i > 1, id, id});
        ids.push_back(id);
    }
    std::uint64_t seed = p.seed;
    d->rules = std::make_shared<RuleSet>(
        std::move(infos), [seed](std::size_t rule, const Term& term, std::vector<Application>& out) {
            const auto* e = std::get_if<SumExpr>(&term);
            if (!e) return;
            const auto& v = e->terms;
            int i = static_cast<int>(rule) + 1;
            for (std::size_t j = 0; j + 1 < v.size(); ++j) {
                SumExpr next;
                next.terms.reserve(v.size() - 1);
                next.terms.insert(next.terms.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(j));
                next.terms.push_back(hypostrat_rule_value(i, v[j], v[j + 1], seed));
                next.terms.insert(next.terms.end(), v.begin() + static_cast<std::ptrdiff_t>(j) + 2, v.end());
                out.push_back({j + 1, std::move(next)});
            }
        });
    d->solving = repeat(atom("R1"));
    d->buggy = repeat(choice_of(ids));
    d->normal_form = sum_normal_form;
    d->measure = sum_measure;
    return d;
}

}  // namespace mbt
