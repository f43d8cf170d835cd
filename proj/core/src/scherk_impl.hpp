#pragma once

// Scherk's constructive Cartan-Dieudonne procedure, generic over a field of
// coefficients (Q, or the residue field F_{p^s} presented as a Witt ring at
// precision 1). The classical steps:
//   i)   rank(A - I) = 1  =>  A is itself a reflection;
//   ii)  S = G(A - I) not skew: pick a with a^T S a invertible, set
//        b = (A - I) a (then q(b,b) = -2 a^T S a), and A R_b has strictly
//        smaller rank(. - I);
//   iii) S skew: no a works (a^T S a = 0 identically away from char 2), so
//        first multiply by one reflection that breaks skewness.
// Candidates are enumerated deterministically; each is accepted only after
// the step's conclusions (rank drop, non-skew successor) are verified on the
// spot, so a rejected candidate costs a check rather than a wrong output.
// The prime-to-ell refinement only changes what "invertible" means (an
// ell-adic unit) and inherits the same skeleton.

#include <cstdlib>
#include <iostream>
#include <vector>

#include "wedgelift/errors.hpp"
#include "wedgelift/matrix.hpp"
#include "wedgelift/wedge.hpp"

namespace wedgelift::detail {

inline bool scherk_trace_enabled() {
    static bool on = std::getenv("WEDGELIFT_SCHERK_TRACE") != nullptr;
    return on;
}

template <class S>
Matrix<S> reflection_matrix_generic(const std::vector<S>& b,
                                    const Matrix<S>& G) {
    S nb = lambda_pairing(b, b);
    if (!ring_traits<S>::is_unit(nb))
        fail(errc::isotropic_vector, "reflection along an isotropic vector");
    S two = ring_traits<S>::one_like(nb) + ring_traits<S>::one_like(nb);
    S coef = two * ring_traits<S>::inverse(nb);
    std::vector<S> w = mat_apply(G, b);  // q(x, b) = (Gb)^T x
    Matrix<S> R = Matrix<S>::identity(6, ring_traits<S>::one_like(nb));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            R.at(i, j) = R.at(i, j) - coef * b[static_cast<size_t>(i)] *
                                          w[static_cast<size_t>(j)];
    return R;
}

template <class S>
bool is_skew(const Matrix<S>& M) {
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
            if (!ring_traits<S>::is_zero(M.at(i, j) + M.at(j, i))) return false;
    return true;
}

/// Policy hooks:
///   bool unit(const S&)                       valid pivot / reflection norm
///   void normalize(std::vector<S>&)           canonical rescaling
///   template<class F> bool for_each_candidate(F f)
///       enumerate candidate vectors a in deterministic order; f returns
///       true to stop. Returns whether f ever accepted.
template <class S, class Policy>
std::vector<std::vector<S>> scherk_factor(const Matrix<S>& A0, Policy& pol,
                                          int max_factors) {
    const S one = ring_traits<S>::one_like(A0.at(0, 0));
    const Matrix<S> G = gram_lambda_as(one);
    const Matrix<S> I = Matrix<S>::identity(6, one);

    Matrix<S> A = A0;
    std::vector<std::vector<S>> factors;

    while (!(A == I)) {
        if (static_cast<int>(factors.size()) >= max_factors)
            fail(errc::search_exhausted,
                 "reflection factor bound exceeded (internal bound " +
                     std::to_string(max_factors) + ")");

        Matrix<S> AmI = A - I;
        int rk = unit_rank(AmI);
        invariant(rk >= 1, errc::internal_error,
                  "A != I with rank(A - I) = 0 over a field");
        Matrix<S> Smat = G * AmI;
        if (scherk_trace_enabled())
            std::cerr << "[scherk] factors=" << factors.size() << " rank=" << rk
                      << " skew=" << is_skew(Smat + transpose(Smat))
                      << " Sskew=" << is_skew(Smat) << "\n";

        if (rk == 1) {
            // step i): extract the axis from any column with a unit entry
            std::vector<S> c;
            for (int j = 0; j < 6 && c.empty(); ++j) {
                for (int i = 0; i < 6; ++i)
                    if (ring_traits<S>::is_unit(AmI.at(i, j))) {
                        c.resize(6, ring_traits<S>::zero_like(one));
                        for (int r = 0; r < 6; ++r) c[static_cast<size_t>(r)] = AmI.at(r, j);
                        break;
                    }
            }
            invariant(!c.empty(), errc::internal_error,
                      "rank-1 matrix without unit column");
            pol.normalize(c);  // unit-ness of the norm is judged primitively
            S nc = lambda_pairing(c, c);
            invariant(pol.unit(nc), errc::internal_error,
                      "rank-1 orthogonal defect with non-unit norm");
            Matrix<S> R = reflection_matrix_generic(c, G);
            invariant(R == A, errc::internal_error,
                      "rank-1 isometry is not the expected reflection");
            factors.push_back(c);
            A = I;
            continue;
        }

        if (is_skew(Smat)) {
            // step iii): one escape reflection to leave the skew locus
            bool found = pol.for_each_candidate([&](const std::vector<S>& cand) {
                std::vector<S> b = cand;
                pol.normalize(b);
                S nb = lambda_pairing(b, b);
                if (!pol.unit(nb)) return false;
                Matrix<S> R = reflection_matrix_generic(b, G);
                Matrix<S> A2 = A * R;
                if (is_skew(G * (A2 - I))) return false;
                factors.push_back(b);
                A = A2;
                return true;
            });
            if (!found)
                fail(errc::search_exhausted,
                     "no escape reflection within the search bound");
            continue;
        }

        // step ii)
        long tried = 0;
        bool found = pol.for_each_candidate([&](const std::vector<S>& a) {
            if (scherk_trace_enabled() && (++tried % 50000 == 0))
                std::cerr << "[scherk]   tried " << tried << " candidates\n";
            std::vector<S> Sa = mat_apply(Smat, a);
            S t = ring_traits<S>::zero_like(one);
            for (int i = 0; i < 6; ++i) t = t + a[static_cast<size_t>(i)] * Sa[static_cast<size_t>(i)];
            if (!pol.unit(t)) return false;
            // b = (A - I) a = G^-1 S a = G S a (G is an involution);
            // q(b, b) = -2 a^T S a
            std::vector<S> b = mat_apply(G, Sa);
            pol.normalize(b);
            S nb = lambda_pairing(b, b);
            if (!pol.unit(nb)) return false;
            Matrix<S> R = reflection_matrix_generic(b, G);
            Matrix<S> A2 = A * R;
            Matrix<S> A2mI = A2 - I;
            if (unit_rank(A2mI) != rk - 1) return false;
            if (rk - 1 > 1 && is_skew(G * A2mI)) return false;
            factors.push_back(b);
            A = A2;
            return true;
        });
        if (!found)
            fail(errc::search_exhausted,
                 "no Scherk step-ii vector within the search bound");
    }
    return factors;
}

}  // namespace wedgelift::detail
