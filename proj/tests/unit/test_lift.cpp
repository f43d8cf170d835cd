#include "doctest.h"

#include <random>

#include "test_helpers.hpp"
#include "wedgelift/lift.hpp"

using namespace wedgelift;
using namespace wltest;

namespace {
std::vector<Rat> vec(std::initializer_list<long> l) {
    std::vector<Rat> v;
    for (long x : l) v.push_back(Rat(x));
    return v;
}
}  // namespace

TEST_CASE("pair operator calibration oracle") {
    // frozen calibration: for b = c = v12 + v34, T_{b,b} = -I4
    auto b = vec({1, 0, 0, 0, 0, 1});
    MatQ T = pair_operator(b, b);
    CHECK(T == -MatQ::identity(4, Rat(1)));
    CHECK(is_identity(wedge_square(T)));

    // law: T_{b,b} = -(q(b,b)/2) id on random vectors
    std::mt19937_64 rng(14);
    for (int t = 0; t < 40; ++t) {
        auto v = random_aniso_vector(rng);
        Rat mn = -lambda_pairing(v, v) / 2;
        CHECK(pair_operator(v, v) == mn * MatQ::identity(4, Rat(1)));
    }
}

TEST_CASE("pair operator realizes reflection pairs up to q(b)q(c)/4") {
    std::mt19937_64 rng(15);
    for (int t = 0; t < 40; ++t) {
        auto b = random_aniso_vector(rng);
        auto c = random_aniso_vector(rng);
        MatQ W = wedge_square(pair_operator(b, c));
        Rat scale = lambda_pairing(b, b) * lambda_pairing(c, c) / 4;
        // b applied first: the matrix product is R_c R_b
        CHECK(W == scale * (reflection_matrix(c) * reflection_matrix(b)));
    }
}

TEST_CASE("lift_so_to_sl on the worked examples") {
    LiftResult r = lift_so_to_sl(MatQ::identity(6, Rat(1)));
    REQUIRE(r.h.has_value());
    CHECK(is_identity(*r.h));  // sign normalization picks +I

    // elementary shear round trip, normalized to the + representative
    MatQ E = MatQ::identity(4, Rat(1));
    E.at(0, 1) = 1;
    LiftResult r2 = lift_so_to_sl(wedge_square(E));
    REQUIRE(r2.h.has_value());
    CHECK(*r2.h == E);

    // nonsquare spinor norm: obstruction, no h
    auto b = vec({1, 0, 0, 0, 0, 1});
    auto c = vec({0, 1, 0, 0, 1, 0});
    MatQ g = reflection_matrix(b) * reflection_matrix(c);
    LiftResult r3 = lift_so_to_sl(g);
    CHECK(!r3.h.has_value());
    REQUIRE(r3.obstruction.has_value());
    CHECK(r3.obstruction->representative() == -1);

    CHECK_THROWS_AS(lift_so_to_sl(poincare_duality()), wl_error);  // det -1
    CHECK_THROWS_AS(lift_so_to_sl(Rat(3) * MatQ::identity(6, Rat(1))), wl_error);
}

TEST_CASE("round trips over SL4(Z) with obstruction soundness") {
    std::mt19937_64 rng(16);
    for (int t = 0; t < 120; ++t) {
        MatQ h = random_sl4(rng);
        LiftResult r = lift_so_to_sl(wedge_square(h));
        REQUIRE(r.h.has_value());
        CHECK((*r.h == h || *r.h == -h));
        CHECK(!r.obstruction.has_value());
    }
    // obstruction iff nonsquare SN, on reflection-product samples
    std::mt19937_64 rng2(17);
    for (int t = 0; t < 40; ++t) {
        MatQ g = random_reflection_product(rng2, 2 * (1 + static_cast<int>(rng2() % 3)));
        if (det(g) != 1) continue;
        LiftResult r = lift_so_to_sl(g);
        bool sn_trivial = spinor_norm(g).is_trivial();
        CHECK(r.h.has_value() == sn_trivial);
        CHECK(r.obstruction.has_value() == !sn_trivial);
    }
}

TEST_CASE("two-valuedness against the brute-force oracle") {
    std::mt19937_64 rng(18);
    int checked = 0;
    for (int t = 0; t < 20 && checked < 4; ++t) {
        MatQ h = random_sl4(rng, 12, 1);  // entries in {-1,0,1}
        bool trivial = is_identity(h) || is_identity(-h);
        if (trivial) continue;
        MatQ g = wedge_square(h);
        auto sols = brute_force_lifts(g, -2, 2);
        REQUIRE(sols.size() == 2);
        CHECK(((sols[0] == h && sols[1] == -h) || (sols[0] == -h && sols[1] == h)));
        ++checked;
    }
    CHECK(checked == 4);
}

TEST_CASE("lift over a quadratic extension") {
    // SN = [-1]: engine lifts over Q(sqrt -1) with an exact round trip
    auto b = vec({1, 0, 0, 0, 0, 1});
    auto c = vec({0, 1, 0, 0, 1, 0});
    MatQ g = reflection_matrix(b) * reflection_matrix(c);
    LiftResult r = lift_over_quadratic(g);
    REQUIRE(r.h_quad.has_value());
    CHECK(r.field.quadratic);
    CHECK(r.field.d == -1);

    // SN = [2] from norms 2 and 4
    auto d4 = vec({1, 0, 0, 0, 0, 2});  // q = 4
    MatQ g2 = reflection_matrix(b) * reflection_matrix(d4);
    REQUIRE(spinor_norm(g2).representative() == 2);
    LiftResult r2 = lift_over_quadratic(g2);
    REQUIRE(r2.h_quad.has_value());
    CHECK(r2.field.d == 2);

    // trivial SN delegates to the rational engine
    std::mt19937_64 rng(19);
    MatQ h = random_sl4(rng);
    LiftResult r3 = lift_over_quadratic(wedge_square(h));
    REQUIRE(r3.h.has_value());
    CHECK_FALSE(r3.field.quadratic);
}

TEST_CASE("principal isogeny data") {
    IsogenyData d = principal_isogeny_data(MatQ::identity(6, Rat(1)));
    CHECK(is_identity(d.g0));
    CHECK(d.n == 1);
    CHECK_FALSE(d.dualized);

    // phi = (1/3) wedge(g0) for integral g0 with det 9 recovers +-g0
    std::mt19937_64 rng(20);
    for (int t = 0; t < 10; ++t) {
        MatQ g0 = random_det_n2(rng, 3);
        MatQ phi = make_rat(1, 3) * wedge_square(g0);
        IsogenyData d2 = principal_isogeny_data(phi);
        CHECK(d2.n == 3);
        CHECK(d2.sign == 1);
        CHECK_FALSE(d2.dualized);
        CHECK((d2.g0 == g0 || d2.g0 == -g0));
        CHECK(wedge_square(d2.g0) == Rat(3) * phi);
        CHECK(det(d2.g0) == 9);
    }

    // Poincare duality: dualized, then D * D = I lifts to the identity
    IsogenyData d3 = principal_isogeny_data(poincare_duality());
    CHECK(d3.dualized);
    CHECK(d3.n == 1);
    CHECK(is_identity(d3.g0));
}

TEST_CASE("prime-to-ell lifts") {
    std::mt19937_64 rng(21);

    // wedge of SL4(Z) lifts back with a unimodular report at any odd ell
    MatQ h = random_sl4(rng);
    PrimeToEllLift pl = prime_to_ell_lift(wedge_square(h), 7);
    REQUIRE(pl.lift.h.has_value());
    CHECK((*pl.lift.h == h || *pl.lift.h == -h));
    CHECK(pl.lift.sign == 1);
    CHECK(pl.report.unimodular);

    PrimeToEllLift pid = prime_to_ell_lift(MatQ::identity(6, Rat(1)), 5);
    REQUIRE(pid.lift.h.has_value());
    CHECK(is_identity(*pid.lift.h));
    CHECK(pid.lift.sign == 1);

    // SN = [-1] at ell = 5 = 1 mod 4: -1 is a 5-adic square, so the
    // descended quadratic lift is 5-integrally unimodular
    auto bb = vec({1, 0, 0, 0, 0, 1});
    auto cc = vec({0, 1, 0, 0, 1, 0});
    MatQ g = reflection_matrix(bb) * reflection_matrix(cc);
    PrimeToEllLift p2 = prime_to_ell_lift(g, 5);
    CHECK(p2.report.unimodular);
    REQUIRE(p2.lift.h_quad.has_value());

    // at ell = 7 = 3 mod 4 the -1 class is not a square, but -g has SN 1:
    // the engine flips the sign and lifts rationally
    PrimeToEllLift p3 = prime_to_ell_lift(g, 7);
    CHECK(p3.lift.sign == -1);
    REQUIRE(p3.lift.h.has_value());
    CHECK(p3.report.unimodular);
    CHECK(wedge_square(*p3.lift.h) == -g);

    // genuine obstruction: SN = [2] at ell = 5, and -2 = 3 is also a
    // nonresidue mod 5
    auto d4 = vec({1, 0, 0, 0, 0, 2});
    MatQ g2 = reflection_matrix(bb) * reflection_matrix(d4);
    CHECK_THROWS_AS(prime_to_ell_lift(g2, 5), wl_error);

    CHECK_THROWS_AS(prime_to_ell_lift(g, 2), wl_error);
    // non-integral input at ell
    MatQ g0 = random_det_n2(rng, 3);
    CHECK_THROWS_AS(prime_to_ell_lift(make_rat(1, 3) * wedge_square(g0), 3),
                    wl_error);
}
