#include "doctest.h"

#include <random>

#include "wedgelift/lift.hpp"
#include "wedgelift/quad.hpp"

using namespace wedgelift;

namespace {
QuadScalar qs(long d, long a, long b) {
    return QuadScalar(Int(d), Rat(a), Rat(b));
}
}  // namespace

TEST_CASE("quadratic arithmetic and conjugation") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 100; ++t) {
        long d = (t % 2) ? 2 : -1;
        QuadScalar x = qs(d, static_cast<long>(rng() % 20) - 10,
                          static_cast<long>(rng() % 20) - 10);
        QuadScalar y = qs(d, static_cast<long>(rng() % 20) - 10,
                          static_cast<long>(rng() % 20) - 10);
        CHECK((x + y).conj() == x.conj() + y.conj());
        CHECK((x * y).conj() == x.conj() * y.conj());
        CHECK(x.conj().conj() == x);
        if (!x.is_zero()) {
            CHECK(x * x.inverse() == qs(d, 1, 0));
            CHECK(x.norm() == (x * x.conj()).a());
        }
    }
    CHECK_THROWS_AS(qs(2, 1, 1) + qs(3, 1, 1), wl_error);
}

TEST_CASE("square roots of rationals in Q(sqrt d)") {
    auto s = quad_sqrt_of_rational(make_rat(9, 4), 2);
    REQUIRE(s.has_value());
    CHECK(*s == QuadScalar(Int(2), make_rat(3, 2), Rat(0)));

    auto s2 = quad_sqrt_of_rational(Rat(8), 2);  // 8 = (2 sqrt2)^2
    REQUIRE(s2.has_value());
    CHECK((*s2) * (*s2) == QuadScalar(Int(2), Rat(8), Rat(0)));
    CHECK(s2->a() == 0);

    CHECK(!quad_sqrt_of_rational(Rat(3), 2).has_value());

    auto sm = quad_sqrt_of_rational(Rat(-4), -1);  // (2i)^2
    REQUIRE(sm.has_value());
    CHECK((*sm) * (*sm) == QuadScalar(Int(-1), Rat(-4), Rat(0)));
}

TEST_CASE("ell-adic valuations of quadratic scalars") {
    // sqrt(-1) embeds into Z_5
    CHECK(*quad_ell_valuation(qs(-1, 5, 0), 5) == 1);
    CHECK(*quad_ell_valuation(qs(-1, 0, 3), 5) == 0);
    CHECK(!quad_ell_valuation(qs(-1, 0, 0), 5).has_value());

    // 2 + i: norm 5, so exactly one of 2 +- i has valuation 1 at 5.
    // Under u = 2 branch (2 + u = 4 != 0 mod 5): v(2 + i) = 0 there,
    // and the conjugate picks up the full norm valuation.
    long v_plus = *quad_ell_valuation(qs(-1, 2, 1), 5);
    long v_minus = *quad_ell_valuation(qs(-1, 2, -1), 5);
    CHECK(v_plus + v_minus == 1);  // v(norm) = v(5) = 1
    CHECK(std::min(v_plus, v_minus) == 0);

    // deep cancellation: (2 + i)^4 = -7 - 24i has norm 5^4
    long v4p = *quad_ell_valuation(qs(-1, -7, -24), 5);
    long v4m = *quad_ell_valuation(qs(-1, -7, 24), 5);
    CHECK(v4p + v4m == 4);
    CHECK(std::min(v4p, v4m) == 0);
    CHECK(std::max(v4p, v4m) == 4);

    // sqrt(2) does not embed into Z_5
    CHECK_THROWS_AS(quad_ell_valuation(qs(2, 1, 1), 5), wl_error);
}
