#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "mbt/error.hpp"
#include "mbt/exact.hpp"

using namespace mbt;
using boost::multiprecision::cpp_bin_float_quad;

TEST_CASE("rational arithmetic stays in lowest terms") {
    Rational a(6, -4);
    CHECK(a.num() == -3);
    CHECK(a.den() == 2);
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, 7).den() == 1);
    CHECK((Rational(1, 2) + Rational(1, 3)) == Rational(5, 6));
    CHECK((Rational(1, 2) * Rational(2, 3)) == Rational(1, 3));
    CHECK((Rational(1, 2) / Rational(-1, 4)) == Rational(-2));
    CHECK(Rational(5, 2).str() == "5/2");
    CHECK(Rational(-3).str() == "-3");
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), DomainError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
}

TEST_CASE("rational overflow raises instead of wrapping") {
    Rational big(std::int64_t{1} << 62);
    CHECK_THROWS_AS(big * big, DomainError);
    CHECK_THROWS_AS(big + big + big, DomainError);
}

TEST_CASE("surd_normalize examples") {
    auto v = ExactNumber::surd_normalize(0, 1, 8);
    CHECK(v.a() == Rational(0));
    CHECK(v.b() == Rational(2));
    CHECK(v.d() == 2);

    auto w = ExactNumber::surd_normalize(-6, 1, 9);
    CHECK(w.a() == Rational(-3));
    CHECK(w.b() == Rational(0));
    CHECK(w.d() == 0);

    auto z = ExactNumber::surd_normalize(Rational(5, 2), 0, 7);
    CHECK(z.a() == Rational(5, 2));
    CHECK(z.b() == Rational(0));
    CHECK(z.d() == 0);
}

TEST_CASE("compare_exact examples") {
    auto s3 = ExactNumber::sqrt_of(3);
    CHECK(compare_exact(ExactNumber(-6) + s3, ExactNumber(-6) - s3) == std::strong_ordering::greater);
    CHECK(compare_exact(Rational(3, 2), Rational(3, 2)) == std::strong_ordering::equal);
    CHECK(compare_exact(ExactNumber(1) + ExactNumber::sqrt_of(2), Rational(5, 2)) == std::strong_ordering::less);
}

TEST_CASE("compare_exact across two radicands") {
    // sqrt(2) + sqrt(3) ~ 3.146 > pi-ish rational 3.14
    auto lhs = ExactNumber::sqrt_of(2);
    auto rhs = Rational(314, 100) - ExactNumber::sqrt_of(3);
    CHECK(compare_exact(lhs, rhs) == std::strong_ordering::greater);
    CHECK(compare_exact(ExactNumber::sqrt_of(5), ExactNumber::sqrt_of(3)) == std::strong_ordering::greater);
}

TEST_CASE("mixing radicands in arithmetic is a domain error") {
    CHECK_THROWS_AS(ExactNumber::sqrt_of(2) + ExactNumber::sqrt_of(3), DomainError);
}

TEST_CASE("surd arithmetic") {
    auto r2 = ExactNumber::sqrt_of(2);
    CHECK(r2 * r2 == ExactNumber(2));
    CHECK((ExactNumber(1) + r2) * (ExactNumber(1) - r2) == ExactNumber(-1));
    CHECK((ExactNumber(1) / (ExactNumber(1) + r2)) == (r2 - ExactNumber(1)));
    CHECK(ExactNumber::sqrt_of(Rational(9, 4)) == ExactNumber(Rational(3, 2)));
    CHECK(ExactNumber::sqrt_of(Rational(1, 2)) == ExactNumber::surd_normalize(0, Rational(1, 2), 2));
}

TEST_CASE("rounded_sqrt") {
    CHECK(rounded_sqrt(2, 2) == Rational(141, 100));
    CHECK(rounded_sqrt(7, 2) == Rational(265, 100));
    CHECK(rounded_sqrt(Rational(21, 2), 2) == Rational(324, 100));
    CHECK(rounded_sqrt(9, 2) == Rational(3));
}

TEST_CASE("property: surd_normalize is idempotent and value preserving") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::int64_t> num(-50, 50), den(1, 12), rad(0, 200);
    for (int i = 0; i < 1000; ++i) {
        Rational a(num(rng), den(rng)), b(num(rng), den(rng));
        std::int64_t d = rad(rng);
        ExactNumber v = ExactNumber::surd_normalize(a, b, d);
        long double expect = a.to_long_double() + b.to_long_double() * std::sqrt(static_cast<long double>(d));
        CHECK(std::fabs(static_cast<double>(v.to_long_double() - expect)) < 1e-9);
        ExactNumber again = ExactNumber::surd_normalize(v.a(), v.b(), v.d());
        CHECK(again == v);
        CHECK((v.d() == 0) == v.b().is_zero());
    }
}

TEST_CASE("property: compare_exact agrees with 128-bit floating point") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<std::int64_t> num(-40, 40), den(1, 9);
    std::uniform_int_distribution<std::int64_t> rad(0, 30);
    auto quad = [](const ExactNumber& v) {
        cpp_bin_float_quad a = cpp_bin_float_quad(v.a().num()) / v.a().den();
        cpp_bin_float_quad b = cpp_bin_float_quad(v.b().num()) / v.b().den();
        return a + b * sqrt(cpp_bin_float_quad(v.d()));
    };
    int compared = 0;
    for (int i = 0; i < 2000; ++i) {
        ExactNumber x = ExactNumber::surd_normalize(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), rad(rng));
        ExactNumber y = ExactNumber::surd_normalize(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), rad(rng));
        cpp_bin_float_quad gap = quad(x) - quad(y);
        if (abs(gap) <= 1e-6) continue;
        ++compared;
        CHECK(compare_exact(x, y) == (gap > 0 ? std::strong_ordering::greater : std::strong_ordering::less));
    }
    CHECK(compared > 1500);
}
