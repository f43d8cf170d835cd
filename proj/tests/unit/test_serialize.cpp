#include "doctest.h"

#include <random>

#include "test_helpers.hpp"
#include "wedgelift/serialize.hpp"

using namespace wedgelift;
using namespace wltest;

TEST_CASE("matrix JSON round trip, canonical bytes") {
    std::mt19937_64 rng(33);
    MatQ g = wedge_square(random_sl4(rng));
    std::string s1 = matq_to_json(g);
    MatQ back = matq_from_json(s1, 6, 6);
    CHECK(back == g);
    CHECK(matq_to_json(back) == s1);

    MatQ frac(2, 2, Rat(0));
    frac.at(0, 0) = make_rat(-8, 6);
    std::string s2 = matq_to_json(frac);
    CHECK(s2.find("-4/3") != std::string::npos);
    CHECK(matq_from_json(s2, 2, 2) == frac);

    CHECK_THROWS_AS(matq_from_json("[1,2,3]", 2, 2), wl_error);
    CHECK_THROWS_AS(matq_from_json("nonsense", 2, 2), wl_error);
}

TEST_CASE("decomposition and certificate JSON") {
    std::mt19937_64 rng(34);
    MatQ A = random_reflection_product(rng, 3);
    CDDecomposition cd = cd_decompose(A);
    std::string js = cd_to_json(cd);
    CHECK(js.find("\"factors\"") != std::string::npos);
    CHECK(js.find("\"norms\"") != std::string::npos);
    CHECK(js.find("\"spinor_norm\"") != std::string::npos);

    MatQ phi = random_reflection_product(rng, 4);
    if (det(phi) != 1) phi = phi * phi;
    ZigzagCertificate cert = zigzag_factorize(phi, {2, 3, 5});
    std::string cj = zigzag_to_json(cert);
    ZigzagCertificate back = zigzag_from_json(cj);
    CHECK(back.composite == cert.composite);
    CHECK(back.steps.size() == cert.steps.size());
    CHECK(back.prime_to == cert.prime_to);
    CHECK(zigzag_to_json(back) == cj);  // byte-stable round trip
    CHECK(verify_zigzag(back));
}

TEST_CASE("crystal pair JSON") {
    std::string text = R"({
      "rho": [[1],[0],[0],[0],[0],[1],[0],[0],[0],[0],[1],[0],[0],[0],[0],[1]],
      "CX":  [[1],[0],[0],[0],[0],[1],[0],[0],[0],[0],[1],[0],[0],[0],[0],[1]],
      "CY":  [[2],[0],[0],[0],[0],[2],[0],[0],[0],[0],[2],[0],[0],[0],[0],[2]]
    })";
    CrystalPair pair = crystal_pair_from_json(text, 3, 1, 6);
    CHECK(pair.CY.at(0, 0) == WittScalar(pair.ring, 2));
    FCrystalH1 X(pair.ring, pair.CX), Y(pair.ring, pair.CY);
    CrystalMorphismReport rep = is_crystal_morphism(pair.rho, X, Y);
    CHECK(rep.verdict == CrystalVerdict::neither);
    std::string rj = crystal_report_to_json(rep);
    CHECK(rj.find("neither") != std::string::npos);
    CHECK(rj.find("\"precision\":6") != std::string::npos);

    // full scalar objects are accepted when they agree with the ambient ring
    std::string full = R"({
      "rho": [{"p":3,"s":1,"N":6,"coeffs":[1]},[0],[0],[0],
              [0],[1],[0],[0],[0],[0],[1],[0],[0],[0],[0],[1]],
      "CX": [[1],[0],[0],[0],[0],[1],[0],[0],[0],[0],[1],[0],[0],[0],[0],[1]],
      "CY": [[1],[0],[0],[0],[0],[1],[0],[0],[0],[0],[1],[0],[0],[0],[0],[1]]
    })";
    CrystalPair p2 = crystal_pair_from_json(full, 3, 1, 6);
    CHECK(p2.rho.at(0, 0) == WittScalar(p2.ring, 1));
    CHECK_THROWS_AS(crystal_pair_from_json(full, 5, 1, 6), wl_error);
}
