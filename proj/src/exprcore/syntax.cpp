#include "mbt/syntax.hpp"

#include <cctype>
#include <charconv>

#include "mbt/error.hpp"

namespace mbt {

TermSort term_sort_of(std::string_view domain_id) {
    if (domain_id == "sumreduce" || domain_id == "hypostrat" || domain_id.starts_with("hypostrat:"))
        return TermSort::sum;
    if (domain_id == "polyeq") return TermSort::equation;
    throw DomainError("unknown domain: " + std::string(domain_id));
}

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool peek_word(std::string_view w) {
        skip_ws();
        return text_.substr(pos_).starts_with(w);
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool accept_word(std::string_view w) {
        if (peek_word(w)) {
            pos_ += w.size();
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("'") + c + "'");
    }
    bool peek_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

    std::int64_t read_uint() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("digit");
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc{}) {
            pos_ = start;
            fail("integer within 64 bits");
        }
        return v;
    }

    /// Position of the ')' matching the '(' at the current position, or npos.
    std::size_t matching_paren() {
        skip_ws();
        int depth = 0;
        for (std::size_t i = pos_; i < text_.size(); ++i) {
            if (text_[i] == '(') ++depth;
            if (text_[i] == ')' && --depth == 0) return i;
        }
        return std::string_view::npos;
    }
    bool span_has_x(std::size_t end) const {
        return text_.substr(pos_, end - pos_).find('x') != std::string_view::npos;
    }

    [[noreturn]] void fail(const std::string& expected) const { throw ParseError(pos_, expected, text_); }

    std::size_t pos() const { return pos_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

class EqParser {
public:
    explicit EqParser(std::string_view text) : cur_(text) {}

    EqState state() {
        EqState st;
        if (cur_.accept('[')) {
            st.entries.push_back(entry());
            if (cur_.accept(',')) st.entries.push_back(entry());
            cur_.expect(']');
        } else {
            st.entries.push_back(entry());
        }
        if (!cur_.at_end()) cur_.fail("end of input");
        if (st.entries.size() == 2) {
            for (const auto& e : st.entries)
                if (e.degree() > 1) throw DomainError("a pair of equations must be linear");
        }
        return st;
    }

private:
    Equation entry() {
        if (cur_.accept_word("true")) return Equation::all_reals();
        if (cur_.accept_word("false")) return Equation::no_solution();
        Side l = side();
        cur_.expect('=');
        Side r = side();
        return Equation::relation(std::move(l), std::move(r));
    }

    Side side() {
        Side s;
        bool neg = false;
        if (cur_.accept('-')) neg = true;
        else cur_.accept('+');
        s.push_back(term(neg));
        for (;;) {
            if (cur_.accept('+')) s.push_back(term(false));
            else if (cur_.accept('-')) s.push_back(term(true));
            else break;
        }
        return s;
    }

    PolyTerm term(bool neg) {
        if (cur_.accept('-')) neg = !neg;
        PolyTerm t = unsigned_term();
        return neg ? t.negated() : t;
    }

    PolyTerm unsigned_term() {
        if (cur_.peek() == 'x') return x_part(ExactNumber(1));
        if (cur_.peek() == '(') {
            auto close = cur_.matching_paren();
            if (close == std::string_view::npos) cur_.fail("')'");
            if (cur_.span_has_x(close)) return factor_part(ExactNumber(1));
        }
        ExactNumber c = number();
        cur_.accept('*');
        if (cur_.peek() == 'x') return x_part(c);
        if (cur_.peek() == '(') {
            auto close = cur_.matching_paren();
            if (close != std::string_view::npos && cur_.span_has_x(close)) return factor_part(c);
            cur_.fail("x or factor");
        }
        return PolyTerm::constant(c);
    }

    PolyTerm x_part(ExactNumber c) {
        cur_.expect('x');
        if (cur_.accept('^')) {
            std::size_t at = cur_.pos();
            std::int64_t e = cur_.read_uint();
            if (e == 1) return PolyTerm::linear(c);
            if (e == 2) return PolyTerm::quadratic(c);
            if (e > 2) throw DomainError("degree " + std::to_string(e) + " exceeds 2 at " + std::to_string(at));
            cur_.fail("exponent 1 or 2");
        }
        return PolyTerm::linear(c);
    }

    PolyTerm factor_part(ExactNumber c) {
        LinearFactor f = factor();
        if (cur_.accept('^')) {
            std::size_t at = cur_.pos();
            std::int64_t e = cur_.read_uint();
            if (e == 2) return PolyTerm::square(c, f);
            if (e > 2) throw DomainError("degree " + std::to_string(e) + " exceeds 2 at " + std::to_string(at));
            cur_.fail("exponent 2");
        }
        if (cur_.peek() == '(') {
            LinearFactor g = factor();
            return PolyTerm::product(c, f, g);
        }
        cur_.fail("'^2' or a second factor");
    }

    LinearFactor factor() {
        cur_.expect('(');
        bool neg = false;
        if (cur_.accept('-')) neg = true;
        else cur_.accept('+');
        ExactNumber slope(1);
        if (cur_.peek() != 'x') {
            slope = number();
            cur_.accept('*');
        }
        cur_.expect('x');
        if (neg) slope = -slope;
        ExactNumber offset(0);
        if (cur_.accept('+')) offset = number();
        else if (cur_.accept('-')) offset = -number();
        cur_.expect(')');
        if (slope.is_zero()) throw DomainError("linear factor with zero slope");
        return {slope, offset};
    }

    ExactNumber number() {
        if (cur_.accept('(')) {
            ExactNumber v = signed_simple();
            if (cur_.accept('+')) v = v + simple();
            else if (cur_.accept('-')) v = v - simple();
            cur_.expect(')');
            return v;
        }
        return simple();
    }

    ExactNumber signed_simple() {
        if (cur_.accept('-')) return -simple();
        return simple();
    }

    ExactNumber simple() {
        if (cur_.peek_word("sqrt(")) return surd(Rational(1));
        if (!cur_.peek_digit()) cur_.fail("number");
        std::int64_t n = cur_.read_uint();
        Rational r(n);
        if (cur_.accept('/')) {
            std::size_t at = cur_.pos();
            std::int64_t d = cur_.read_uint();
            if (d == 0) throw ParseError(at, "positive denominator", "");
            r = Rational(n, d);
        }
        if (cur_.peek_word("sqrt(")) return surd(r);
        if (cur_.peek_word("*")) {
            // "2*sqrt(3)" binds here; "2*x" is left for the caller
            Cursor probe = cur_;
            probe.accept('*');
            if (probe.peek_word("sqrt(")) {
                cur_.accept('*');
                return surd(r);
            }
        }
        return ExactNumber(r);
    }

    ExactNumber surd(Rational multiplier) {
        cur_.accept_word("sqrt(");
        std::int64_t d = cur_.read_uint();
        cur_.expect(')');
        return ExactNumber::surd_normalize(Rational(0), multiplier, d);
    }

    Cursor cur_;
};

std::string coeff_prefix(const ExactNumber& c) {
    if (c.is_one()) return "";
    if (c == ExactNumber(-1)) return "-";
    if (c.is_rational() && c.a().is_integer()) return c.a().str();
    return print_number(c) + "*";
}

std::string print_factor(const LinearFactor& f) {
    std::string s = "(" + coeff_prefix(f.slope) + "x";
    if (!f.offset.is_zero()) {
        if (f.offset.is_negative_signed()) s += "-" + print_number(-f.offset);
        else s += "+" + print_number(f.offset);
    }
    return s + ")";
}

std::string print_poly_term(const PolyTerm& t) {
    switch (t.kind) {
        case PolyKind::constant: return print_number(t.coeff);
        case PolyKind::linear: return coeff_prefix(t.coeff) + "x";
        case PolyKind::quadratic: return coeff_prefix(t.coeff) + "x^2";
        case PolyKind::square: {
            std::string p = coeff_prefix(t.coeff);
            if (!p.empty() && p != "-" && p.back() != '*') p += "*";
            return p + print_factor(t.f) + "^2";
        }
        case PolyKind::product: {
            std::string p = coeff_prefix(t.coeff);
            if (!p.empty() && p != "-" && p.back() != '*') p += "*";
            return p + print_factor(t.f) + print_factor(t.g);
        }
    }
    return {};
}

std::string print_side(const Side& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const PolyTerm& t = s[i];
        if (i == 0) {
            out += print_poly_term(t);
        } else if (t.coeff.is_negative_signed()) {
            out += "-" + print_poly_term(t.negated());
        } else {
            out += "+" + print_poly_term(t);
        }
    }
    return out;
}

}  // namespace

SumExpr parse_sum(std::string_view text) {
    Cursor cur(text);
    SumExpr e;
    do {
        bool neg = cur.accept('-');
        std::int64_t v = cur.read_uint();
        e.terms.push_back(neg ? -v : v);
    } while (cur.accept('+'));
    if (!cur.at_end()) cur.fail("'+' or end of input");
    return e;
}

EqState parse_eq_state(std::string_view text) {
    return EqParser(text).state();
}

Term parse_term(std::string_view text, std::string_view domain_id) {
    if (term_sort_of(domain_id) == TermSort::sum) return parse_sum(text);
    return parse_eq_state(text);
}

std::string print_number(const ExactNumber& v) {
    if (v.is_rational()) return v.a().str();
    auto surd_part = [&](const Rational& b) {
        std::string root = "sqrt(" + std::to_string(v.d()) + ")";
        if (b == Rational(1)) return root;
        if (b == Rational(-1)) return "-" + root;
        return b.str() + "*" + root;
    };
    if (v.a().is_zero()) return surd_part(v.b());
    std::string s = "(" + v.a().str();
    if (v.b().sign() < 0) s += "-" + surd_part(-v.b());
    else s += "+" + surd_part(v.b());
    return s + ")";
}

std::string print_equation(const Equation& e) {
    switch (e.kind) {
        case EqKind::no_solution: return "false";
        case EqKind::all_reals: return "true";
        case EqKind::relation: break;
    }
    return print_side(e.lhs) + "=" + print_side(e.rhs);
}

std::string print_eq_state(const EqState& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        if (i) out += ", ";
        out += print_equation(s.entries[i]);
    }
    return out + "]";
}

std::string print_sum(const SumExpr& e) {
    std::string out;
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        if (i) out += '+';
        out += std::to_string(e.terms[i]);
    }
    return out;
}

std::string print_term(const Term& term) {
    if (const auto* s = std::get_if<SumExpr>(&term)) return print_sum(*s);
    return print_eq_state(std::get<EqState>(term));
}

}  // namespace mbt
