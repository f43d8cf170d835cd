#pragma once

#include <random>

#include "wedgelift/matrix.hpp"
#include "wedgelift/reflections.hpp"
#include "wedgelift/wedge.hpp"

namespace wltest {

using namespace wedgelift;

// Random SL4(Z) with entries in [-3,3]: shear products, rejecting any step
// that would leave the box. det stays 1 throughout.
inline MatQ random_sl4(std::mt19937_64& rng, int steps = 40, long bound = 3) {
    MatQ h = MatQ::identity(4, Rat(1));
    for (int s = 0; s < steps; ++s) {
        int i = static_cast<int>(rng() % 4), j = static_cast<int>(rng() % 4);
        if (i == j) continue;
        int sg = (rng() % 2) ? 1 : -1;
        MatQ h2 = h;
        for (int col = 0; col < 4; ++col)
            h2.at(i, col) += Rat(sg) * h.at(j, col);
        bool ok = true;
        for (const auto& x : h2.data())
            if (abs(x) > bound) ok = false;
        if (ok) h = h2;
    }
    return h;
}

// Random integral vector with nonzero even norm, coordinates in [-4,4].
inline std::vector<Rat> random_aniso_vector(std::mt19937_64& rng,
                                            long max_abs_norm = 0) {
    while (true) {
        std::vector<Rat> b(6);
        for (auto& x : b) x = Rat(static_cast<long>(rng() % 9) - 4);
        Rat q = lambda_pairing(b, b);
        if (q == 0) continue;
        if (max_abs_norm > 0 && abs(q) > max_abs_norm) continue;
        return b;
    }
}

// Random product of k reflections along integral vectors; optionally keeps
// every factor norm coprime to ell.
inline MatQ random_reflection_product(std::mt19937_64& rng, int k,
                                      const Int& ell = 0) {
    MatQ M = MatQ::identity(6, Rat(1));
    for (int t = 0; t < k; ++t) {
        while (true) {
            std::vector<Rat> b = random_aniso_vector(rng);
            Rat q = lambda_pairing(b, b);
            if (ell != 0 && q.get_num() % ell == 0) continue;
            M = M * reflection_matrix(b);
            break;
        }
    }
    return M;
}

// Random integral 4x4 with det n^2: diag(n, n, 1, 1) conjugated and sheared
// by SL4(Z) on both sides.
inline MatQ random_det_n2(std::mt19937_64& rng, long n) {
    MatQ D(4, 4, Rat(0));
    D.at(0, 0) = Rat(n);
    D.at(1, 1) = Rat(n);
    D.at(2, 2) = Rat(1);
    D.at(3, 3) = Rat(1);
    return random_sl4(rng, 24) * D * random_sl4(rng, 24);
}

inline bool matq_integral(const MatQ& M) {
    for (const auto& x : M.data())
        if (!is_integer(x)) return false;
    return true;
}

}  // namespace wltest
