#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>

namespace mbt {

/// Exact rational p/q with 64-bit components. Arithmetic is checked; results
/// that do not fit raise DomainError instead of wrapping.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d);

    static Rational from_wide(__int128 n, __int128 d);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    int sign() const noexcept { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
    bool is_zero() const noexcept { return num_ == 0; }
    bool is_integer() const noexcept { return den_ == 1; }

    Rational operator-() const;
    friend Rational operator+(const Rational& x, const Rational& y);
    friend Rational operator-(const Rational& x, const Rational& y);
    friend Rational operator*(const Rational& x, const Rational& y);
    friend Rational operator/(const Rational& x, const Rational& y);

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);

    long double to_long_double() const noexcept {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }

    /// "p" or "p/q".
    std::string str() const;

    std::size_t hash() const noexcept;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// a + b*sqrt(d) with d squarefree. Rational values are stored with b = 0, d = 0,
/// so structural equality coincides with equality of real values.
class ExactNumber {
public:
    ExactNumber() = default;
    ExactNumber(Rational a) : a_(a) {}  // NOLINT(google-explicit-constructor)
    ExactNumber(std::int64_t a) : a_(a) {}  // NOLINT(google-explicit-constructor)

    /// Canonical form of a + b*sqrt(d): square factors of d move into b, and
    /// the value folds to a rational when b = 0 or the root is exact.
    static ExactNumber surd_normalize(Rational a, Rational b, std::int64_t d);

    /// Principal square root of a nonnegative rational.
    static ExactNumber sqrt_of(Rational c);

    const Rational& a() const noexcept { return a_; }
    const Rational& b() const noexcept { return b_; }
    std::int64_t d() const noexcept { return d_; }

    bool is_rational() const noexcept { return d_ == 0; }
    bool is_zero() const noexcept { return d_ == 0 && a_.is_zero(); }
    bool is_one() const noexcept { return d_ == 0 && a_ == Rational(1); }
    int sign() const;

    /// True when the printed form carries a leading minus (negative rational,
    /// or -k*sqrt(d) with no rational part).
    bool is_negative_signed() const noexcept {
        return d_ == 0 ? a_.sign() < 0 : (a_.is_zero() && b_.sign() < 0);
    }

    ExactNumber operator-() const;
    friend ExactNumber operator+(const ExactNumber& x, const ExactNumber& y);
    friend ExactNumber operator-(const ExactNumber& x, const ExactNumber& y);
    friend ExactNumber operator*(const ExactNumber& x, const ExactNumber& y);
    friend ExactNumber operator/(const ExactNumber& x, const ExactNumber& y);

    friend bool operator==(const ExactNumber&, const ExactNumber&) = default;

    long double to_long_double() const;

    /// "a|b|d" with a and b in lowest terms.
    std::string encode() const;

    std::size_t hash() const noexcept;

private:
    ExactNumber(Rational a, Rational b, std::int64_t d) : a_(a), b_(b), d_(d) {}

    Rational a_;
    Rational b_;
    std::int64_t d_ = 0;
};

/// Exact ordering of real values. Uses only rational arithmetic, squaring
/// isolated radicals with sign tracking, so it also handles two distinct
/// radicands.
std::strong_ordering compare_exact(const ExactNumber& x, const ExactNumber& y);

/// sqrt(c) rounded to `decimals` decimal places, as an exact rational.
Rational rounded_sqrt(Rational c, int decimals);

}  // namespace mbt
