#pragma once

#include <algorithm>
#include <optional>
#include <string>

#include "wedgelift/matrix.hpp"
#include "wedgelift/reflections.hpp"

namespace wedgelift {

/// Which coefficient field a lift lives in.
struct FieldDescriptor {
    bool quadratic = false;
    Int d = 0;  // squarefree discriminant when quadratic

    std::string str() const {
        return quadratic ? "Q(sqrt " + d.get_str() + ")" : "Q";
    }
};

/// Result of inverting the wedge-square map. Exactly one of `h` (over Q),
/// `h_quad` (over Q(sqrt d)) or `obstruction` is set; the valid lifts are
/// exactly {h, -h}, and the returned representative is sign-normalized
/// (first nonzero entry in row-major order positive; for Q(sqrt d), positive
/// rational part with the sqrt(d)-part breaking ties).
struct LiftResult {
    std::optional<MatQ> h;
    std::optional<MatQuad> h_quad;
    std::optional<SquareClass> obstruction;
    FieldDescriptor field;
    int sign = 0;  // for prime-to-ell lifts: wedge_square(h) = sign * phi
};

/// Principal-isogeny data extracted from an admissible rational isometry:
/// wedge_square(g0) = sign * n * (phi, pre-composed with Poincare duality
/// when dualized), det(g0) = n^2, and the represented isogeny degree is n^2.
/// sign is +1 whenever the spinor-norm representative is positive.
struct IsogenyData {
    MatQ g0;
    Int n;  // positive squarefree
    int sign = 1;
    bool dualized = false;
};

/// Pair operator T_{b,c}: V -> V, x -> iota_{mu(b ^ x)} c, where mu is the
/// isomorphism wedge^3 V ~ V* induced by the trace form
/// (<mu(beta), y> = tr(beta ^ y)) and iota is contraction. This is Clifford
/// multiplication by the even element b*c on the half-spinor module V, so
/// T_{b,b} = -(q(b,b)/2) id and wedge_square(T_{b,c}) is proportional to
/// R_b R_c; the calibration (constant and composition order) is frozen by
/// the unit tests against the b = c = v12 + v34 oracle.
template <class S>
Matrix<S> pair_operator(const std::vector<S>& b, const std::vector<S>& c) {
    if (b.size() != 6 || c.size() != 6)
        fail(errc::bad_input, "pair operator expects Lambda vectors");
    S zero = ring_traits<S>::zero_like(b[0]);
    Matrix<S> T(4, 4, zero);
    // triples of wedge^3 V indexed by their sorted entries
    static constexpr int kTriples[4][3] = {
        {0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    for (int m = 0; m < 4; ++m) {
        // w = b ^ e_m in wedge^3 coordinates
        S w[4] = {zero, zero, zero, zero};
        for (int pi = 0; pi < 6; ++pi) {
            int i = kPairs[pi][0], j = kPairs[pi][1];
            if (i == m || j == m) continue;
            int t[3] = {i, j, m};
            std::sort(t, t + 3);
            int ti = 0;
            while (kTriples[ti][0] != t[0] || kTriples[ti][1] != t[1] ||
                   kTriples[ti][2] != t[2])
                ++ti;
            // sign sorting (i, j, m) into ascending order
            int sgn = 1;
            int u[3] = {i, j, m};
            for (int x = 0; x < 3; ++x)
                for (int y = x + 1; y < 3; ++y)
                    if (u[x] > u[y]) sgn = -sgn;
            if (sgn == 1)
                w[ti] = w[ti] + b[static_cast<size_t>(pi)];
            else
                w[ti] = w[ti] - b[static_cast<size_t>(pi)];
        }
        // f = mu(w): f_k = sum_t w_t * sign(t1, t2, t3, k)
        S f[4] = {zero, zero, zero, zero};
        for (int ti = 0; ti < 4; ++ti)
            for (int k = 0; k < 4; ++k) {
                int sgn = perm_sign4(kTriples[ti][0], kTriples[ti][1],
                                     kTriples[ti][2], k);
                if (sgn == 1) f[k] = f[k] + w[ti];
                if (sgn == -1) f[k] = f[k] - w[ti];
            }
        // column m of T is iota_f(c) = sum_{i<j} c_ij (f_i e_j - f_j e_i)
        for (int pi = 0; pi < 6; ++pi) {
            int i = kPairs[pi][0], j = kPairs[pi][1];
            const S& cij = c[static_cast<size_t>(pi)];
            T.at(j, m) = T.at(j, m) + cij * f[i];
            T.at(i, m) = T.at(i, m) - cij * f[j];
        }
    }
    return T;
}

/// Lift an admissible isometry through the wedge-square map over Q.
/// Returns h with wedge_square(h) = g and det(h) = 1 when SN(g) is a square,
/// otherwise the obstruction class SN(g). Errors: not_an_isometry,
/// not_admissible (det = -1; callers should pre-compose with
/// poincare_duality), search_exhausted; proportionality failures are
/// internal errors.
LiftResult lift_so_to_sl(const MatQ& g, const CDOptions& opts = {});

/// Same inversion over the quadratic extension Q(sqrt n), n = SN(g).
/// When SN(g) = 1 this delegates to lift_so_to_sl.
LiftResult lift_over_quadratic(const MatQ& g, const CDOptions& opts = {});

/// Shioda's trick on admissible rational isometries: recovers the matrix of
/// a principal quasi-isogeny. If det(phi) = -1, pre-composes with Poincare
/// duality and reports dualized = true.
IsogenyData principal_isogeny_data(const MatQ& phi, const CDOptions& opts = {});

/// Prime-to-ell lift: an ell-integrally invertible h with
/// wedge_square(h) = sign * phi, together with the integrality report at
/// ell for h (over Q when +-SN is globally trivial, otherwise over
/// Q(sqrt d) with sqrt(d) evaluated in Z_ell). Errors: ell_is_two,
/// not_ell_integral, not_admissible, obstruction_at_ell.
struct PrimeToEllLift {
    LiftResult lift;
    LocalIntegralityReport report;
};
PrimeToEllLift prime_to_ell_lift(const MatQ& phi, const Int& ell,
                                 const CDOptions& opts = {});

/// ell-adic valuation of a + b*sqrt(d) under an embedding sqrt(d) -> Z_ell
/// (d must be an ell-adic unit square; the embedding picks the Hensel root
/// congruent to the smaller residue). Empty optional encodes +infinity.
std::optional<long> quad_ell_valuation(const QuadScalar& x, const Int& ell);

/// Test-only style brute force: all 4x4 integer matrices with entries in
/// [lo, hi] satisfying wedge_square(h) = g, found by row-pruned search.
/// Used by the tests to cross-check two-valuedness of the lift engine.
std::vector<Matrix<Rat>> brute_force_lifts(const MatQ& g, int lo, int hi);

}  // namespace wedgelift
