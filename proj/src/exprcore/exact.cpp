#include "mbt/exact.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "mbt/error.hpp"

namespace mbt {

namespace {

__int128 gcd128(__int128 x, __int128 y) {
    if (x < 0) x = -x;
    if (y < 0) y = -y;
    while (y != 0) {
        __int128 t = x % y;
        x = y;
        y = t;
    }
    return x;
}

bool fits64(__int128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

int sign_of(const Rational& a, const Rational& b, std::int64_t d) {
    // sign of a + b*sqrt(d), d > 0 not a perfect square
    int sa = a.sign();
    int sb = b.sign();
    if (sb == 0 || d == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with b^2 d
    Rational lhs = a * a;
    Rational rhs = b * b * Rational(d);
    auto c = lhs <=> rhs;
    int mag = c < 0 ? -1 : (c > 0 ? 1 : 0);
    return sa > 0 ? mag : -mag;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    *this = from_wide(n, d);
}

Rational Rational::from_wide(__int128 n, __int128 d) {
    if (d == 0) throw DomainError("division by zero");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n == 0) d = 1;
    if (!fits64(n) || !fits64(d)) throw DomainError("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
}

Rational Rational::operator-() const {
    return from_wide(-static_cast<__int128>(num_), den_);
}

Rational operator+(const Rational& x, const Rational& y) {
    if (x.den_ == y.den_) return Rational::from_wide(static_cast<__int128>(x.num_) + y.num_, x.den_);
    return Rational::from_wide(static_cast<__int128>(x.num_) * y.den_ + static_cast<__int128>(y.num_) * x.den_,
                               static_cast<__int128>(x.den_) * y.den_);
}

Rational operator-(const Rational& x, const Rational& y) {
    return x + (-y);
}

Rational operator*(const Rational& x, const Rational& y) {
    return Rational::from_wide(static_cast<__int128>(x.num_) * y.num_, static_cast<__int128>(x.den_) * y.den_);
}

Rational operator/(const Rational& x, const Rational& y) {
    if (y.num_ == 0) throw DomainError("division by zero");
    return Rational::from_wide(static_cast<__int128>(x.num_) * y.den_, static_cast<__int128>(x.den_) * y.num_);
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    __int128 l = static_cast<__int128>(x.num_) * y.den_;
    __int128 r = static_cast<__int128>(y.num_) * x.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::size_t Rational::hash() const noexcept {
    std::size_t h = std::hash<std::int64_t>{}(num_);
    return h * 1000003u ^ std::hash<std::int64_t>{}(den_);
}

ExactNumber ExactNumber::surd_normalize(Rational a, Rational b, std::int64_t d) {
    if (d < 0) throw DomainError("negative radicand");
    if (b.is_zero() || d == 0) return ExactNumber(a);
    std::int64_t rest = d;
    std::int64_t out = 1;
    for (std::int64_t f = 2; f <= rest / f; ++f) {
        while (rest % (f * f) == 0) {
            rest /= f * f;
            out *= f;
        }
    }
    b = b * Rational(out);
    if (rest == 1) return ExactNumber(a + b);
    return ExactNumber(a, b, rest);
}

ExactNumber ExactNumber::sqrt_of(Rational c) {
    if (c.sign() < 0) throw DomainError("square root of a negative number");
    // sqrt(p/q) = sqrt(p*q)/q
    __int128 pq = static_cast<__int128>(c.num()) * c.den();
    if (!fits64(pq)) throw DomainError("radicand overflow");
    return surd_normalize(Rational(0), Rational(1, c.den()), static_cast<std::int64_t>(pq));
}

int ExactNumber::sign() const {
    return sign_of(a_, b_, d_);
}

ExactNumber ExactNumber::operator-() const {
    return ExactNumber(-a_, -b_, d_);
}

namespace {

std::int64_t common_radicand(const ExactNumber& x, const ExactNumber& y) {
    if (x.d() == 0) return y.d();
    if (y.d() == 0 || y.d() == x.d()) return x.d();
    throw DomainError("values with distinct radicands sqrt(" + std::to_string(x.d()) + ") and sqrt(" +
                      std::to_string(y.d()) + ") cannot be combined");
}

}  // namespace

ExactNumber operator+(const ExactNumber& x, const ExactNumber& y) {
    std::int64_t d = common_radicand(x, y);
    return ExactNumber::surd_normalize(x.a_ + y.a_, x.b_ + y.b_, d);
}

ExactNumber operator-(const ExactNumber& x, const ExactNumber& y) {
    return x + (-y);
}

ExactNumber operator*(const ExactNumber& x, const ExactNumber& y) {
    std::int64_t d = common_radicand(x, y);
    Rational a = x.a_ * y.a_ + x.b_ * y.b_ * Rational(d);
    Rational b = x.a_ * y.b_ + x.b_ * y.a_;
    return ExactNumber::surd_normalize(a, b, d);
}

ExactNumber operator/(const ExactNumber& x, const ExactNumber& y) {
    if (y.is_zero()) throw DomainError("division by zero");
    if (y.is_rational()) return ExactNumber::surd_normalize(x.a_ / y.a_, x.b_ / y.a_, x.d_);
    common_radicand(x, y);
    // multiply by the conjugate; the norm is nonzero because d is not a square
    Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * Rational(y.d_);
    ExactNumber conj(y.a_, -y.b_, y.d_);
    ExactNumber num = x * conj;
    return ExactNumber::surd_normalize(num.a_ / norm, num.b_ / norm, num.d_);
}

long double ExactNumber::to_long_double() const {
    return a_.to_long_double() + b_.to_long_double() * std::sqrt(static_cast<long double>(d_));
}

std::string ExactNumber::encode() const {
    return a_.str() + "|" + b_.str() + "|" + std::to_string(d_);
}

std::size_t ExactNumber::hash() const noexcept {
    std::size_t h = a_.hash();
    h = h * 31 + b_.hash();
    return h * 31 + std::hash<std::int64_t>{}(d_);
}

std::strong_ordering compare_exact(const ExactNumber& x, const ExactNumber& y) {
    int s = 0;
    if (x.d() == 0 || y.d() == 0 || x.d() == y.d()) {
        s = (x - y).sign();
    } else {
        // sign(u + v) with u = (ax - ay) + bx*sqrt(dx), v = -by*sqrt(dy)
        ExactNumber u = ExactNumber::surd_normalize(x.a() - y.a(), x.b(), x.d());
        Rational vb = -y.b();
        int su = u.sign();
        int sv = vb.sign();
        if (su == 0) {
            s = sv;
        } else if (su == sv) {
            s = su;
        } else {
            ExactNumber diff = u * u - ExactNumber(vb * vb * Rational(y.d()));
            int sq = diff.sign();
            s = su > 0 ? sq : -sq;
        }
    }
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational rounded_sqrt(Rational c, int decimals) {
    if (c.sign() < 0) throw DomainError("square root of a negative number");
    std::int64_t scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    // m = round(sqrt(c) * scale) is the largest m with (2m - 1)^2 <= 4 c scale^2
    Rational target = c * Rational(scale) * Rational(scale) * Rational(4);
    auto m = static_cast<std::int64_t>(std::llround(std::sqrt(c.to_long_double()) * scale));
    auto ok = [&](std::int64_t k) {
        if (k <= 0) return true;
        Rational v(2 * k - 1);
        return (v * v <=> target) <= 0;
    };
    while (m > 0 && !ok(m)) --m;
    while (ok(m + 1)) ++m;
    return Rational(m, scale);
}

}  // namespace mbt
