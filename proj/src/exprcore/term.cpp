#include "mbt/term.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include "mbt/error.hpp"

namespace mbt {

namespace {

inline void mix(std::size_t& h, std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

std::size_t hash_side(const Side& s) {
    std::size_t h = s.size();
    for (const auto& t : s) {
        mix(h, static_cast<std::size_t>(t.kind));
        mix(h, t.coeff.hash());
        if (t.structured()) {
            mix(h, t.f.slope.hash());
            mix(h, t.f.offset.hash());
        }
        if (t.kind == PolyKind::product) {
            mix(h, t.g.slope.hash());
            mix(h, t.g.offset.hash());
        }
    }
    return h;
}

}  // namespace

int Equation::degree() const noexcept {
    int d = 0;
    for (const auto& t : lhs) d = std::max(d, t.degree());
    for (const auto& t : rhs) d = std::max(d, t.degree());
    return d;
}

bool Equation::is_final() const noexcept {
    if (kind != EqKind::relation) return true;
    return lhs.size() == 1 && lhs[0].kind == PolyKind::linear && lhs[0].coeff.is_one() && rhs.size() == 1 &&
           rhs[0].kind == PolyKind::constant;
}

bool EqState::is_final() const noexcept {
    return std::all_of(entries.begin(), entries.end(), [](const Equation& e) { return e.is_final(); });
}

std::size_t hash_term(const Term& t) noexcept {
    if (const auto* s = std::get_if<SumExpr>(&t)) {
        std::size_t h = 0x51ed27;
        for (auto v : s->terms) mix(h, std::hash<std::int64_t>{}(v));
        return h;
    }
    const auto& st = std::get<EqState>(t);
    std::size_t h = 0xe9;
    for (const auto& e : st.entries) {
        mix(h, static_cast<std::size_t>(e.kind));
        mix(h, hash_side(e.lhs));
        mix(h, hash_side(e.rhs));
    }
    return h;
}

NormalForm NormalForm::sum_value(std::int64_t v) {
    NormalForm nf;
    nf.kind_ = Kind::sum_value;
    nf.value_ = v;
    return nf;
}

NormalForm NormalForm::solutions(std::vector<ExactNumber> values) {
    if (values.empty()) return no_real_solutions();
    std::sort(values.begin(), values.end(),
              [](const ExactNumber& x, const ExactNumber& y) { return compare_exact(x, y) < 0; });
    values.erase(std::unique(values.begin(), values.end()), values.end());
    NormalForm nf;
    nf.kind_ = Kind::solutions;
    nf.values_ = std::move(values);
    return nf;
}

NormalForm NormalForm::no_real_solutions() {
    NormalForm nf;
    nf.kind_ = Kind::no_real_solutions;
    return nf;
}

NormalForm NormalForm::undefined() {
    return NormalForm{};
}

std::string NormalForm::encode() const {
    switch (kind_) {
        case Kind::sum_value: return "S:" + std::to_string(value_);
        case Kind::no_real_solutions: return "Q:none";
        case Kind::undefined: return "Q:undef";
        case Kind::solutions: break;
    }
    std::string out = "Q:{";
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) out += ',';
        out += values_[i].encode();
    }
    out += '}';
    return out;
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) throw ParseError(0, "integer", whole);
    return v;
}

Rational parse_rational(std::string_view s, std::string_view whole) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(s, whole));
    return Rational(parse_int(s.substr(0, slash), whole), parse_int(s.substr(slash + 1), whole));
}

}  // namespace

NormalForm NormalForm::decode(std::string_view text) {
    if (text.starts_with("S:")) return sum_value(parse_int(text.substr(2), text));
    if (text == "Q:none") return no_real_solutions();
    if (text == "Q:undef") return undefined();
    if (!text.starts_with("Q:{") || !text.ends_with("}")) throw ParseError(0, "normal form encoding", text);
    std::string_view body = text.substr(3, text.size() - 4);
    std::vector<ExactNumber> values;
    while (!body.empty()) {
        auto comma = body.find(',');
        std::string_view item = body.substr(0, comma);
        auto p1 = item.find('|');
        auto p2 = item.find('|', p1 == std::string_view::npos ? p1 : p1 + 1);
        if (p1 == std::string_view::npos || p2 == std::string_view::npos) throw ParseError(0, "a|b|d", text);
        values.push_back(ExactNumber::surd_normalize(parse_rational(item.substr(0, p1), text),
                                                     parse_rational(item.substr(p1 + 1, p2 - p1 - 1), text),
                                                     parse_int(item.substr(p2 + 1), text)));
        if (comma == std::string_view::npos) break;
        body = body.substr(comma + 1);
    }
    return solutions(std::move(values));
}

std::size_t NormalForm::hash() const noexcept {
    std::size_t h = static_cast<std::size_t>(kind_);
    mix(h, std::hash<std::int64_t>{}(value_));
    for (const auto& v : values_) mix(h, v.hash());
    return h;
}

}  // namespace mbt
