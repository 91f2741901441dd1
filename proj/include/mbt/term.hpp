#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mbt/exact.hpp"

namespace mbt {

/// a1 + a2 + ... + an, reduced pairwise by the sum-style domains.
struct SumExpr {
    std::vector<std::int64_t> terms;

    friend bool operator==(const SumExpr&, const SumExpr&) = default;
};

/// slope*x + offset, slope != 0.
struct LinearFactor {
    ExactNumber slope{1};
    ExactNumber offset{0};

    friend bool operator==(const LinearFactor&, const LinearFactor&) = default;
};

enum class PolyKind : std::uint8_t {
    constant,   // c
    linear,     // c*x
    quadratic,  // c*x^2
    square,     // c*(f)^2
    product,    // c*(f)(g)
};

struct PolyTerm {
    PolyKind kind = PolyKind::constant;
    ExactNumber coeff;
    LinearFactor f;  // square and product
    LinearFactor g;  // product only

    static PolyTerm constant(ExactNumber c) { return {PolyKind::constant, c, {}, {}}; }
    static PolyTerm linear(ExactNumber c) { return {PolyKind::linear, c, {}, {}}; }
    static PolyTerm quadratic(ExactNumber c) { return {PolyKind::quadratic, c, {}, {}}; }
    static PolyTerm square(ExactNumber c, LinearFactor f) { return {PolyKind::square, c, f, {}}; }
    static PolyTerm product(ExactNumber c, LinearFactor f, LinearFactor g) { return {PolyKind::product, c, f, g}; }

    bool has_x() const noexcept { return kind != PolyKind::constant; }
    bool structured() const noexcept { return kind == PolyKind::square || kind == PolyKind::product; }
    int degree() const noexcept {
        switch (kind) {
            case PolyKind::constant: return 0;
            case PolyKind::linear: return 1;
            default: return 2;
        }
    }
    PolyTerm negated() const {
        PolyTerm t = *this;
        t.coeff = -t.coeff;
        return t;
    }

    friend bool operator==(const PolyTerm&, const PolyTerm&) = default;
};

/// One side of an equation. Never empty: zero is written as a single constant 0.
using Side = std::vector<PolyTerm>;

enum class EqKind : std::uint8_t {
    relation,     // lhs = rhs
    no_solution,  // printed "false"
    all_reals,    // printed "true"
};

struct Equation {
    EqKind kind = EqKind::relation;
    Side lhs;
    Side rhs;

    static Equation relation(Side l, Side r) { return {EqKind::relation, std::move(l), std::move(r)}; }
    static Equation no_solution() { return {EqKind::no_solution, {}, {}}; }
    static Equation all_reals() { return {EqKind::all_reals, {}, {}}; }

    int degree() const noexcept;
    /// x = value, or a no_solution / all_reals marker.
    bool is_final() const noexcept;

    friend bool operator==(const Equation&, const Equation&) = default;
};

/// One or two equations (two only when both are at most linear).
struct EqState {
    std::vector<Equation> entries;

    bool is_final() const noexcept;

    friend bool operator==(const EqState&, const EqState&) = default;
};

using Term = std::variant<SumExpr, EqState>;

std::size_t hash_term(const Term& t) noexcept;

struct TermHash {
    std::size_t operator()(const Term& t) const noexcept { return hash_term(t); }
};

/// Final-answer value of a solved state.
class NormalForm {
public:
    enum class Kind : std::uint8_t { sum_value, solutions, no_real_solutions, undefined };

    static NormalForm sum_value(std::int64_t v);
    /// Sorts ascending and drops duplicates; an empty list becomes no_real_solutions.
    static NormalForm solutions(std::vector<ExactNumber> values);
    static NormalForm no_real_solutions();
    static NormalForm undefined();

    Kind kind() const noexcept { return kind_; }
    std::int64_t value() const noexcept { return value_; }
    const std::vector<ExactNumber>& values() const noexcept { return values_; }

    /// "S:<int>", "Q:{a|b|d,...}", "Q:none", "Q:undef".
    std::string encode() const;
    static NormalForm decode(std::string_view text);

    std::size_t hash() const noexcept;

    friend bool operator==(const NormalForm&, const NormalForm&) = default;

private:
    Kind kind_ = Kind::undefined;
    std::int64_t value_ = 0;
    std::vector<ExactNumber> values_;
};

struct NormalFormHash {
    std::size_t operator()(const NormalForm& nf) const noexcept { return nf.hash(); }
};

}  // namespace mbt
