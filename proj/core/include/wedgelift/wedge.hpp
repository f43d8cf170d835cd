#pragma once

#include <array>

#include "wedgelift/matrix.hpp"

namespace wedgelift {

/// Fixed basis order of Lambda = wedge^2 Z^4:
///   (v12, v13, v14, v23, v24, v34),  v_ij = v_i ^ v_j, i < j.
/// All 6x6 matrices in the toolkit use this order. kPairs[k] gives the
/// (zero-based) index pair of basis slot k.
inline constexpr std::array<std::array<int, 2>, 6> kPairs = {{
    {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
}};

/// Index of the pair (i, j), i < j, in the fixed basis order.
int pair_index(int i, int j);

/// Sign of the permutation sorting (i, j, k, l); 0 if any repeat.
int perm_sign4(int i, int j, int k, int l);

/// Gram matrix of the wedge pairing q(x, y) = tr(x ^ y) with the trace
/// normalization tr(e1^e2^e3^e4) = 1. Computed from the permutation-sign
/// rule; the frozen antidiagonal form is asserted in the tests.
MatQ gram_lambda();

/// Same Gram matrix with entries in an arbitrary coefficient ring.
template <class S>
Matrix<S> gram_lambda_as(const S& one) {
    S zero = ring_traits<S>::zero_like(one);
    Matrix<S> G(6, 6, zero);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            int s = perm_sign4(kPairs[a][0], kPairs[a][1], kPairs[b][0],
                               kPairs[b][1]);
            if (s == 1) G.at(a, b) = one;
            if (s == -1) G.at(a, b) = -one;
        }
    return G;
}

/// Second compound matrix: the action of wedge^2(h) on the fixed basis.
/// Functorial, det(wedge_square(h)) = det(h)^3, and
/// wedge_square(h)^T G wedge_square(h) = det(h) G.
template <class S>
Matrix<S> wedge_square(const Matrix<S>& h) {
    if (h.rows() != 4 || h.cols() != 4)
        fail(errc::bad_input, "wedge_square expects a 4x4 matrix");
    Matrix<S> W(6, 6, ring_traits<S>::zero_like(h.at(0, 0)));
    for (int row = 0; row < 6; ++row) {
        int k = kPairs[row][0], l = kPairs[row][1];
        for (int col = 0; col < 6; ++col) {
            int i = kPairs[col][0], j = kPairs[col][1];
            W.at(row, col) = h.at(k, i) * h.at(l, j) - h.at(k, j) * h.at(l, i);
        }
    }
    return W;
}

/// q(x, y) for Lambda vectors over any ring.
template <class S>
S lambda_pairing(const std::vector<S>& x, const std::vector<S>& y) {
    if (x.size() != 6 || y.size() != 6)
        fail(errc::bad_input, "lambda vectors have 6 coordinates");
    S acc = ring_traits<S>::zero_like(x[0]);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            int s = perm_sign4(kPairs[a][0], kPairs[a][1], kPairs[b][0],
                               kPairs[b][1]);
            if (s == 0) continue;
            S term = x[static_cast<size_t>(a)] * y[static_cast<size_t>(b)];
            if (s == 1)
                acc = acc + term;
            else
                acc = acc - term;
        }
    return acc;
}

/// Membership test for O(Lambda)(R): phi^T G phi = G exactly.
template <class S>
bool is_isometry(const Matrix<S>& phi) {
    if (phi.rows() != 6 || phi.cols() != 6) return false;
    Matrix<S> G = gram_lambda_as(ring_traits<S>::one_like(phi.at(0, 0)));
    return transpose(phi) * G * phi == G;
}

/// det(phi) in the fixed coordinates; this is the admissibility degree, and
/// phi is admissible iff it equals 1. Errors with singular_input when the
/// determinant vanishes.
Rat admissibility_degree(const MatQ& phi);

/// The Poincare-duality matrix D in the fixed basis; numerically equal to
/// gram_lambda(), determinant -1, squares to the identity.
MatQ poincare_duality();

}  // namespace wedgelift
