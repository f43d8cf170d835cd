#include "wedgelift/wedge.hpp"

namespace wedgelift {

int pair_index(int i, int j) {
    for (int k = 0; k < 6; ++k)
        if (kPairs[k][0] == i && kPairs[k][1] == j) return k;
    fail(errc::internal_error, "bad basis pair");
}

int perm_sign4(int i, int j, int k, int l) {
    int idx[4] = {i, j, k, l};
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            if (idx[a] == idx[b]) return 0;
    int sign = 1;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            if (idx[a] > idx[b]) sign = -sign;
    return sign;
}

MatQ gram_lambda() { return gram_lambda_as(Rat(1)); }

Rat admissibility_degree(const MatQ& phi) {
    if (phi.rows() != 6 || phi.cols() != 6)
        fail(errc::bad_input, "admissibility degree expects a 6x6 matrix");
    Rat d = det(phi);
    if (d == 0) fail(errc::singular_input, "singular matrix has no admissibility degree");
    return d;
}

MatQ poincare_duality() {
    // v12 -> v34*, v13 -> -v24*, v14 -> v23*, v23 -> v14*, v24 -> -v13*,
    // v34 -> v12*; identifying duals through the wedge pairing makes this
    // numerically the Gram matrix itself.
    return gram_lambda();
}

}  // namespace wedgelift
