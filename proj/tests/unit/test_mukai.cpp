#include "doctest.h"

#include <random>

#include "test_helpers.hpp"
#include "wedgelift/lift.hpp"
#include "wedgelift/mukai.hpp"

using namespace wedgelift;
using namespace wltest;

namespace {

MukaiVector mv(long r, std::initializer_list<long> c, long chi) {
    MukaiVector m = MukaiVector::zero();
    m.r = Rat(r);
    int i = 0;
    for (long x : c) m.c[static_cast<size_t>(i++)] = Rat(x);
    m.chi = Rat(chi);
    return m;
}

VecQ rational_bfield(std::mt19937_64& rng, long max_den) {
    VecQ b(6);
    for (auto& x : b) {
        long num = static_cast<long>(rng() % 13) - 6;
        long den = 1 + static_cast<long>(rng() % max_den);
        x = make_rat(num, den);
    }
    return b;
}

}  // namespace

TEST_CASE("Mukai pairing on the worked examples") {
    CHECK(mukai_pairing(mv(1, {0, 0, 0, 0, 0, 0}, 0),
                        mv(0, {0, 0, 0, 0, 0, 0}, 1)) == -1);
    CHECK(mukai_pairing(mv(0, {1, 0, 0, 0, 0, 2}, 0),
                        mv(0, {1, 0, 0, 0, 0, 3}, 0)) == 5);  // q(c, c')
    CHECK(mukai_pairing(mv(1, {0, 0, 0, 0, 0, 0}, 0),
                        mv(1, {0, 0, 0, 0, 0, 0}, 0)) == 0);  // isotropic
    CHECK(det(gram_mukai()) == 1);
}

TEST_CASE("exp(B) formulas") {
    VecQ zero(6, Rat(0));
    CHECK(is_identity(exp_b(zero)));

    std::mt19937_64 rng(22);
    for (int t = 0; t < 50; ++t) {
        VecQ B = rational_bfield(rng, 12);
        MatQ E = exp_b(B);
        // fixes (0,0,1)
        std::vector<Rat> delta(8, Rat(0));
        delta[7] = 1;
        CHECK(mat_apply(E, delta) == delta);
        // (1,0,0) -> (1, B, q(B,B)/2)
        std::vector<Rat> e0(8, Rat(0));
        e0[0] = 1;
        std::vector<Rat> img = mat_apply(E, e0);
        CHECK(img[0] == 1);
        for (int i = 0; i < 6; ++i) CHECK(img[static_cast<size_t>(i + 1)] == B[static_cast<size_t>(i)]);
        CHECK(img[7] == lambda_pairing(B, B) / 2);
        // isometry and homomorphism laws
        CHECK(is_mukai_isometry(E));
        VecQ B2 = rational_bfield(rng, 12);
        VecQ sum(6);
        for (int i = 0; i < 6; ++i) sum[static_cast<size_t>(i)] = B[static_cast<size_t>(i)] + B2[static_cast<size_t>(i)];
        CHECK(exp_b(B) * exp_b(B2) == exp_b(sum));
    }
}

TEST_CASE("B-field order and normalization") {
    VecQ b(6, Rat(0));
    b[0] = make_rat(7, 3);
    b[5] = make_rat(1, 2);
    BField B = BField::from_vector(b);
    CHECK(B.order == 6);
    std::vector<Int> shift;
    BField Bn = B.normalized(&shift);
    CHECK(Bn.b[0] == make_rat(1, 3));
    CHECK(shift[0] == 2);
    CHECK(Bn.b[5] == make_rat(1, 2));
    CHECK(shift[5] == 0);
    // twisted lattices of B and its normalization agree as lattices
    TwistedLattice L1 = TwistedLattice::of(B), L2 = TwistedLattice::of(Bn);
    for (int j = 0; j < 8; ++j) {
        std::vector<Rat> col(8);
        for (int i = 0; i < 8; ++i) col[static_cast<size_t>(i)] = L1.basis.at(i, j);
        CHECK(L2.contains(col));
    }
}

TEST_CASE("reflexive twisted isometry on the worked examples") {
    // q(b,b) = 2: B = b integral, order 1, untwisted lattice is stabilized
    std::vector<Rat> b2(6, Rat(0));
    b2[0] = 1;
    b2[5] = 1;
    ReflexiveTwist t1 = reflexive_twisted_isometry(b2);
    CHECK(t1.n == 1);
    CHECK(t1.B.order == 1);
    CHECK(t1.integral);
    CHECK(matq_integral(t1.tilde_psi));  // stabilizes the untwisted lattice

    // b = v12 + 3 v34: q = 6, n = 3, B = b/3 of order 3
    std::vector<Rat> b6(6, Rat(0));
    b6[0] = 1;
    b6[5] = 3;
    ReflexiveTwist t2 = reflexive_twisted_isometry(b6);
    CHECK(t2.n == 3);
    CHECK(t2.brauer_order_bound == 3);
    CHECK(t2.B.order == 3);
    CHECK(t2.B.b[0] == make_rat(1, 3));
    CHECK(t2.integral);
    // B' = -psi_b(B) comes out equal to B for a single reflection
    CHECK(t2.Bprime.b == t2.B.b);

    // rescaled input gives the same reflection
    std::vector<Rat> b2x(6, Rat(0));
    b2x[0] = 2;
    b2x[5] = 2;
    CHECK(reflexive_twisted_isometry(b2x).psi == t1.psi);

    std::vector<Rat> iso(6, Rat(0));
    iso[0] = 1;  // v12 is isotropic
    CHECK_THROWS_AS(reflexive_twisted_isometry(iso), wl_error);
}

TEST_CASE("reflexive twist integrality across random vectors") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 120; ++t) {
        auto b = random_aniso_vector(rng, 40);
        ReflexiveTwist tw = reflexive_twisted_isometry(b);
        CHECK(tw.integral);
        CHECK(is_mukai_isometry(tw.tilde_psi));
        CHECK(matq_integral(tw.change_of_basis));
        CHECK(matq_integral(inverse(tw.change_of_basis)));
        // tilde_psi restricts to -psi on the middle block
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                CHECK(tw.tilde_psi.at(i + 1, j + 1) == -tw.psi.at(i, j));
        // reflexive: the extension is an involution
        CHECK(is_identity(tw.tilde_psi * tw.tilde_psi));
    }
}

TEST_CASE("filtered test") {
    VecQ zero(6, Rat(0));
    BField B0 = BField::from_vector(zero);
    CHECK(is_filtered(MatQ::identity(8, Rat(1)), B0, B0));

    // exp of an integral B-field is filtered for the untwisted lattices
    VecQ intB(6, Rat(0));
    intB[0] = 2;
    intB[5] = -1;
    CHECK(is_filtered(exp_b(intB), B0, B0));

    // Mukai duality swap (r,c,chi) -> (-chi, c, -r) moves (0,0,1) off F^2
    MatQ J(8, 8, Rat(0));
    J.at(0, 7) = -1;
    J.at(7, 0) = -1;
    for (int i = 1; i < 7; ++i) J.at(i, i) = 1;
    REQUIRE(is_mukai_isometry(J));
    CHECK_FALSE(is_filtered(J, B0, B0));

    CHECK_THROWS_AS(is_filtered(Rat(2) * MatQ::identity(8, Rat(1)), B0, B0),
                    wl_error);
}

TEST_CASE("zig-zag certificates") {
    std::vector<Int> primes{2, 3, 5, 7};
    ZigzagCertificate c0 =
        zigzag_factorize(MatQ::identity(6, Rat(1)), primes);
    CHECK(c0.steps.empty());
    CHECK(verify_zigzag(c0));
    for (const auto& [ell, flag] : c0.prime_to) CHECK(flag);

    // phi = R_b R_c: two steps with n = q/2 each
    std::vector<Rat> b(6, Rat(0)), c(6, Rat(0));
    b[0] = 1;
    b[5] = 1;          // q = 2, n = 1
    c[1] = 1;
    c[4] = -3;         // v13 - 3 v24: q = 6, n = 3
    MatQ phi = reflection_matrix(b) * reflection_matrix(c);
    ZigzagCertificate c1 = zigzag_factorize(phi, primes);
    CHECK(c1.steps.size() % 2 == 0);
    CHECK(c1.steps.size() <= 8);
    // the factorization is not unique, but the square class of the product
    // of step norms is: SN(phi) = [2 * 6] = [3]
    SquareClass sn;
    for (const auto& s : c1.steps) sn = sn * square_class(Rat(2) * s.n);
    CHECK(sn.representative() == 3);
    CHECK(verify_zigzag(c1));
    // an odd power of 3 divides the norm product, so some step has 3 | n
    CHECK_FALSE(is_prime_to_ell_zigzag(c1, 3));
    CHECK_FALSE(c1.prime_to.at(Int(3)));

    // from an integral matrix of determinant 25
    std::mt19937_64 rng(24);
    MatQ g0 = random_det_n2(rng, 5);
    MatQ phi5 = make_rat(1, 5) * wedge_square(g0);
    ZigzagCertificate c2 = zigzag_factorize(phi5, primes);
    CHECK(verify_zigzag(c2));
    CHECK(c2.composite == phi5);

    CHECK_THROWS_AS(zigzag_factorize(poincare_duality(), primes), wl_error);
}

TEST_CASE("prime-to-ell zig-zags have ell-unimodular composites") {
    std::mt19937_64 rng(25);
    for (long ellv : {3L, 5L}) {
        Int ell(ellv);
        for (int t = 0; t < 10; ++t) {
            MatQ A = random_reflection_product(rng, 2 + 2 * static_cast<int>(rng() % 2), ell);
            if (det(A) != 1) continue;
            ZigzagCertificate cert = zigzag_factorize(A, {ell});
            if (is_prime_to_ell_zigzag(cert, ell))
                CHECK(local_report(cert.composite, ell).unimodular);
        }
    }
}

TEST_CASE("tampered certificates fail verification") {
    std::vector<Rat> b(6, Rat(0));
    b[0] = 1;
    b[5] = 1;
    MatQ phi = reflection_matrix(b) * reflection_matrix(b);  // identity
    ZigzagCertificate cert = zigzag_factorize(phi, {2});
    REQUIRE(verify_zigzag(cert));
    ZigzagCertificate bad = cert;
    bad.composite.at(0, 0) += 1;
    std::string why;
    CHECK_FALSE(verify_zigzag(bad, &why));
    ZigzagCertificate bad2 = zigzag_factorize(
        reflection_matrix(b) *
            reflection_matrix([] {
                std::vector<Rat> c(6, Rat(0));
                c[1] = 1;
                c[4] = -1;
                return c;
            }()),
        {});
    bad2.steps[0].n += 1;
    CHECK_FALSE(verify_zigzag(bad2, &why));
    bad2 = cert;
    bad2.prime_to[Int(2)] = !bad2.prime_to[Int(2)];
    CHECK_FALSE(verify_zigzag(bad2, &why));
}
