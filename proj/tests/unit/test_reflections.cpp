#include "doctest.h"

#include <random>
#include <set>

#include "test_helpers.hpp"
#include "wedgelift/reflections.hpp"

using namespace wedgelift;
using namespace wltest;

namespace {
std::vector<Rat> vec(std::initializer_list<long> l) {
    std::vector<Rat> v;
    for (long x : l) v.push_back(Rat(x));
    return v;
}
}  // namespace

TEST_CASE("reflect on the worked examples") {
    auto b = vec({1, 0, 0, 0, 0, 1});  // v12 + v34, q = 2
    CHECK(reflect(b, vec({1, 0, 0, 0, 0, 0})) ==
          vec({0, 0, 0, 0, 0, -1}));                   // v12 -> -v34
    CHECK(reflect(b, b) == vec({-1, 0, 0, 0, 0, -1})); // b -> -b
    CHECK(reflect(b, vec({0, 1, 0, 0, 0, 0})) ==
          vec({0, 1, 0, 0, 0, 0}));                    // fixed hyperplane
    CHECK_THROWS_AS(reflect(vec({1, 0, 0, 0, 0, 0}), b), wl_error);
}

TEST_CASE("reflection is scale invariant and stored primitively") {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 50; ++t) {
        auto b = random_aniso_vector(rng);
        std::vector<Rat> b3(6);
        for (int i = 0; i < 6; ++i) b3[static_cast<size_t>(i)] = make_rat(-3, 7) * b[static_cast<size_t>(i)];
        CHECK(reflection_matrix(b) == reflection_matrix(b3));
    }
    auto p = primitivize(vec({-2, 0, 4, 0, -6, 0}));
    CHECK(p == std::vector<Int>({1, 0, -2, 0, 3, 0}));
}

TEST_CASE("cd_decompose on the worked examples") {
    CHECK(cd_decompose(MatQ::identity(6, Rat(1))).factors.empty());

    auto b = vec({1, 0, 0, 0, 0, 1});
    MatQ R = reflection_matrix(b);
    CDDecomposition cd = cd_decompose(R);
    REQUIRE(cd.factors.size() == 1);
    CHECK(reflection_matrix(cd.factors[0]) == R);

    auto c = vec({0, 1, 0, 0, -1, 0});
    MatQ A = reflection_matrix(b) * reflection_matrix(c);
    CDDecomposition cd2 = cd_decompose(A);
    CHECK(cd2.factors.size() % 2 == 0);
    CHECK(compose_factors(cd2.factors) == A);

    MatQ bad = Rat(2) * MatQ::identity(6, Rat(1));
    CHECK_THROWS_AS(cd_decompose(bad), wl_error);
}

TEST_CASE("reconstruction, parity and factor bound on random products") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        int k = 1 + static_cast<int>(rng() % 6);
        MatQ A = random_reflection_product(rng, k);
        CDDecomposition cd = cd_decompose(A);
        CHECK(compose_factors(cd.factors) == A);
        CHECK(cd.factors.size() <= 8);
        Rat d = det(A);
        CHECK((cd.factors.size() % 2 == 0) == (d == 1));
    }
}

TEST_CASE("skew-escape path: Eichler-style unipotent isometries") {
    // E(x) = x - q(a,x) e + q(e,x) a for isotropic orthogonal e, a gives
    // G(E - I) skew-symmetric, which forces Scherk step iii.
    auto e = vec({1, 0, 0, 0, 0, 0});  // v12
    auto a = vec({0, 1, 0, 0, 0, 0});  // v13; q(e,e)=q(a,a)=q(e,a)=0
    MatQ G = gram_lambda();
    MatQ E = MatQ::identity(6, Rat(1));
    VecQ Ge = mat_apply(G, e), Ga = mat_apply(G, a);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            E.at(i, j) += -a[static_cast<size_t>(i)] * Ge[static_cast<size_t>(j)] +
                          e[static_cast<size_t>(i)] * Ga[static_cast<size_t>(j)];
    REQUIRE(is_isometry(E));
    MatQ S = G * (E - MatQ::identity(6, Rat(1)));
    CHECK(S + transpose(S) == MatQ(6, 6, Rat(0)));  // genuinely skew
    CDDecomposition cd = cd_decompose(E);
    CHECK(compose_factors(cd.factors) == E);
    CHECK(cd.factors.size() <= 8);
}

TEST_CASE("spinor norm on the worked examples") {
    CHECK(spinor_norm(MatQ::identity(6, Rat(1))).is_trivial());

    auto b = vec({1, 0, 0, 0, 0, 1});   // q = 2
    CHECK(spinor_norm(reflection_matrix(b)).representative() == 2);

    auto c = vec({0, 1, 0, 0, 1, 0});   // v13 + v24, q = -2
    MatQ g = reflection_matrix(b) * reflection_matrix(c);
    CHECK(spinor_norm(g).representative() == -1);  // [2 * -2] = [-1]
}

TEST_CASE("spinor norm is seed independent and multiplicative") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 25; ++t) {
        MatQ g = random_reflection_product(rng, 2 + static_cast<int>(rng() % 4));
        SquareClass base = spinor_norm(g, CDOptions{0, 16});
        for (unsigned long seed : {1UL, 2UL, 3UL})
            CHECK(spinor_norm(g, CDOptions{seed, 16}) == base);
        MatQ h = random_reflection_product(rng, 2 + static_cast<int>(rng() % 4));
        CHECK(spinor_norm(g * h) == spinor_norm(g) * spinor_norm(h));
    }
}

TEST_CASE("prime-to-ell decomposition") {
    for (long ellv : {3L, 5L, 7L}) {
        Int ell(ellv);
        CHECK(cd_decompose_prime_to_ell(MatQ::identity(6, Rat(1)), ell)
                  .factors.empty());

        std::mt19937_64 rng(100 + ellv);
        for (int t = 0; t < 15; ++t) {
            MatQ A = random_reflection_product(rng, 1 + static_cast<int>(rng() % 5),
                                               ell);
            CDDecomposition cd = cd_decompose_prime_to_ell(A, ell);
            CHECK(compose_factors(cd.factors) == A);
            for (const auto& f : cd.factors) {
                CHECK(*ell_valuation(f.norm, ell) == 0);
                CHECK(local_report(reflection_matrix(f), ell).unimodular);
            }
        }
    }
    // single prime-to-ell reflection comes back as itself
    auto b = vec({1, 0, 0, 0, 0, 1});  // q = 2, coprime to 5
    CDDecomposition cd = cd_decompose_prime_to_ell(reflection_matrix(b), 5);
    REQUIRE(cd.factors.size() == 1);
    CHECK(cd.factors[0].b == std::vector<Int>({1, 0, 0, 0, 0, 1}));
}

TEST_CASE("prime-to-ell rejects bad inputs") {
    CHECK_THROWS_AS(cd_decompose_prime_to_ell(MatQ::identity(6, Rat(1)), 2),
                    wl_error);
    // (1/3) wedge of a det-9 matrix is an isometry but not 3-integral
    std::mt19937_64 rng(13);
    MatQ g0 = random_det_n2(rng, 3);
    MatQ phi = (make_rat(1, 3)) * wedge_square(g0);
    REQUIRE(is_isometry(phi));
    CHECK_THROWS_AS(cd_decompose_prime_to_ell(phi, 3), wl_error);
}

TEST_CASE("local integrality reports") {
    MatQ M = MatQ::identity(6, Rat(1));
    M.at(0, 0) = make_rat(1, 5);
    LocalIntegralityReport rep = local_report(M, 5);
    CHECK(rep.min_valuation == -1);
    CHECK_FALSE(rep.integral);
    LocalIntegralityReport rep2 = local_report(MatQ::identity(6, Rat(1)), 5);
    CHECK(rep2.unimodular);
    // integral but not unimodular
    MatQ M3 = MatQ::identity(6, Rat(1));
    M3.at(0, 0) = Rat(5);
    LocalIntegralityReport rep3 = local_report(M3, 5);
    CHECK(rep3.integral);
    CHECK_FALSE(rep3.unimodular);
}
