#include <cctype>

#include "mbt/error.hpp"
#include "mbt/strategy.hpp"

namespace mbt {

namespace {

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
}

class StrategyParser {
public:
    explicit StrategyParser(std::string_view text) : text_(text) {}

    Strategy parse() {
        Strategy s = alternatives();
        skip_ws();
        if (pos_ != text_.size()) fail("'<|>', '.*.' or end of input");
        return s;
    }

private:
    Strategy alternatives() {
        Strategy s = sequence();
        while (accept("<|>")) s = choice(s, sequence());
        return s;
    }

    Strategy sequence() {
        Strategy s = unary();
        while (accept(".*.")) s = seq(s, unary());
        return s;
    }

    Strategy unary() {
        skip_ws();
        if (accept("(")) {
            Strategy s = alternatives();
            expect(")");
            return s;
        }
        std::string name = ident();
        skip_ws();
        if ((name == "many" || name == "repeat") && accept("(")) {
            Strategy body = alternatives();
            expect(")");
            return name == "many" ? many(body) : repeat(body);
        }
        if (name == "succeed") return succeed();
        return atom(name);
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        // a '-' that starts an operator is not part of the identifier
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        if (start == pos_) fail("rule identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(std::string_view tok) {
        skip_ws();
        if (text_.substr(pos_).starts_with(tok)) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    void expect(std::string_view tok) {
        if (!accept(tok)) fail("'" + std::string(tok) + "'");
    }
    [[noreturn]] void fail(const std::string& expected) const { throw ParseError(pos_, expected, text_); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void print_into(Strategy s, std::string& out, int context) {
    // context: 0 top/choice-left, 1 choice-right or seq-left, 2 seq-right
    switch (s->kind) {
        case StrategyKind::succeed: out += "succeed"; return;
        case StrategyKind::atom: out += symbol_name(s->rule); return;
        case StrategyKind::many:
        case StrategyKind::repeat:
            out += s->kind == StrategyKind::many ? "many(" : "repeat(";
            print_into(s->left, out, 0);
            out += ')';
            return;
        case StrategyKind::choice: {
            bool paren = context > 0;
            if (paren) out += '(';
            print_into(s->left, out, 0);
            out += " <|> ";
            print_into(s->right, out, 1);
            if (paren) out += ')';
            return;
        }
        case StrategyKind::seq: {
            bool paren = context == 2;
            if (paren) out += '(';
            print_into(s->left, out, 1);
            out += " .*. ";
            print_into(s->right, out, 2);
            if (paren) out += ')';
            return;
        }
    }
}

}  // namespace

Strategy parse_strategy(std::string_view text) {
    return StrategyParser(text).parse();
}

std::string print_strategy(Strategy s) {
    std::string out;
    print_into(s, out, 0);
    return out;
}

}  // namespace mbt
