#pragma once

#include <vector>

#include "wedgelift/local.hpp"
#include "wedgelift/matrix.hpp"
#include "wedgelift/square_class.hpp"
#include "wedgelift/wedge.hpp"

namespace wedgelift {

/// A reflection of Lambda_Q along a nonisotropic vector, stored primitively:
/// integer coordinates with gcd 1 and first nonzero coordinate positive.
/// The matrix action x -> x - (2 q(x,b) / q(b,b)) b is invariant under
/// rescaling b, so this normalization is purely cosmetic.
struct Reflection {
    std::vector<Int> b;  // 6 coordinates
    Rat norm;            // q(b, b), nonzero (and even: Lambda is even)
};

/// Primitive integral rescaling of a nonzero rational Lambda vector.
std::vector<Int> primitivize(const std::vector<Rat>& v);

/// reflect(b, x) = x - (2 q(x,b)/q(b,b)) b. Errors with isotropic_vector
/// when q(b,b) = 0.
std::vector<Rat> reflect(const std::vector<Rat>& b, const std::vector<Rat>& x);

/// The 6x6 matrix of the reflection along b.
MatQ reflection_matrix(const std::vector<Rat>& b);
MatQ reflection_matrix(const Reflection& r);

/// Knobs for the constructive decomposition. The candidate search enumerates
/// integer vectors by increasing sup-norm; `seed` permutes the order inside
/// each shell (0 keeps lexicographic order) and exists so the spinor-norm
/// well-definedness tests can vary the tie-breaking. `max_height` bounds the
/// search; beyond it the routine errors with search_exhausted.
struct CDOptions {
    unsigned long seed = 0;
    int max_height = 16;
};

/// Product of reflections equal to a given isometry. factors[0] applies
/// first: target = R(factors[k-1]) * ... * R(factors[0]) as matrices.
struct CDDecomposition {
    std::vector<Reflection> factors;
    MatQ target;

    /// Number of factors has the parity of det(target).
    size_t size() const { return factors.size(); }
};

/// Recomposes the ordered factor list (factors[0] applied first).
MatQ compose_factors(const std::vector<Reflection>& factors);

/// Cartan-Dieudonne decomposition over Q by Scherk's constructive procedure.
/// At most 8 factors (6 generic rank-dropping steps plus skew-escape
/// corrections). Errors: not_an_isometry, search_exhausted.
CDDecomposition cd_decompose(const MatQ& A, const CDOptions& opts = {});

/// Prime-to-ell refinement: factors are primitive integral vectors whose
/// norms are ell-units, so every reflection matrix is Z_(ell)-unimodular.
/// Requires A to be ell-integral with ell-integral inverse and ell odd.
/// Errors: ell_is_two, not_ell_integral, not_an_isometry, search_exhausted.
CDDecomposition cd_decompose_prime_to_ell(const MatQ& A, const Int& ell,
                                          const CDOptions& opts = {});

/// Spinor norm: the square class of the product of factor norms of any
/// Cartan-Dieudonne decomposition (Remark 4.8 convention, no sign twist).
SquareClass spinor_norm(const MatQ& g, const CDOptions& opts = {});

/// ell-integrality summary of a rational matrix (and its inverse, when the
/// matrix is invertible).
LocalIntegralityReport local_report(const MatQ& M, const Int& ell);

}  // namespace wedgelift
