#pragma once

#include <map>
#include <vector>

#include "wedgelift/matrix.hpp"
#include "wedgelift/reflections.hpp"

namespace wedgelift {

/// Element (r, c, chi) of the rank-8 Mukai lattice Z + Lambda + Z with
/// pairing <(r,c,chi),(r',c',chi')> = q(c,c') - r chi' - r' chi.
/// Coordinates are ordered (r, c1..c6, chi) in all 8x8 matrices.
struct MukaiVector {
    Rat r;
    VecQ c;  // 6 coordinates
    Rat chi;

    static MukaiVector zero();
    std::vector<Rat> coords() const;
    static MukaiVector from_coords(const std::vector<Rat>& v8);
};

Rat mukai_pairing(const MukaiVector& u, const MukaiVector& v);

/// Gram matrix of the Mukai pairing in the fixed coordinate order.
MatQ gram_mukai();

bool is_mukai_isometry(const MatQ& Phi8);

/// A rational B-field: a Lambda_Q vector together with its order, the
/// smallest positive integer n with n*b integral.
struct BField {
    VecQ b;    // 6 rational coordinates
    Int order;

    static BField from_vector(const VecQ& b);
    /// Representative with coordinates in [0, 1) plus the integral shift:
    /// b = normalized + shift.
    BField normalized(std::vector<Int>* shift = nullptr) const;
};

/// exp(B) = 1 + B + B^2/2 acting on the Mukai lattice:
/// (r, c, chi) -> (r, c + rB, chi + q(c,B) + r q(B,B)/2).
/// An isometry; exp(0) = id and exp(B)exp(B') = exp(B+B').
MatQ exp_b(const BField& B);
MatQ exp_b(const VecQ& b);

/// The exp(B)-translate of the integral Mukai lattice: columns of `basis`
/// span exp(B) (Z + Lambda + Z). Always contains (0,0,1); unimodular for the
/// Mukai pairing.
struct TwistedLattice {
    BField bfield;
    MatQ basis;

    static TwistedLattice of(const BField& B);
    /// Membership: v in the lattice iff basis^-1 v is integral.
    bool contains(const std::vector<Rat>& v8) const;
};

/// The reflexive isometry package of a nonisotropic b: the reflection psi_b
/// on Lambda, the canonical B-fields B = 2b/(b,b) and B' = -psi_b(B), the
/// Mukai extension tilde_psi mapping TwistedLattice(B) onto
/// TwistedLattice(B'), and the integrality verdict for the change of basis
/// (guaranteed true; false would be an invariant violation and is surfaced
/// as a diagnostic rather than an error).
struct ReflexiveTwist {
    std::vector<Int> b;   // primitive representative actually used
    Rat n;                // q(b,b)/2, nonzero (sign kept)
    MatQ psi;             // 6x6 reflection
    BField B;
    BField Bprime;
    MatQ tilde_psi;       // 8x8 Mukai isometry
    MatQ change_of_basis; // exp(B')^-1 tilde_psi exp(B), integral unimodular
    bool integral = false;
    Int brauer_order_bound;  // |n|
};

ReflexiveTwist reflexive_twisted_isometry(const std::vector<Rat>& b);

/// Filtered test: Phi preserves the codimension filtration of the twisted
/// lattices, i.e. fixes (0,0,1) and maps F^1(B) into F^1(B'). Requires Phi
/// to preserve the Mukai pairing.
bool is_filtered(const MatQ& Phi8, const BField& B, const BField& Bprime);

/// One step of a zig-zag factorization with its B-field bookkeeping.
struct ZigzagStep {
    std::vector<Int> b;
    Rat n;  // q(b,b)/2
    VecQ B;
    VecQ Bprime;
    Int brauer_order_bound;  // |n|
};

/// Factorization of an admissible isometry into reflexive steps, with the
/// composite kept for re-verification. Composition order matches
/// CDDecomposition: steps[0] applies first.
struct ZigzagCertificate {
    std::vector<ZigzagStep> steps;
    MatQ composite;
    std::map<Int, bool> prime_to;  // filled for a configurable prime list
};

ZigzagCertificate zigzag_factorize(const MatQ& phi,
                                   const std::vector<Int>& primes = {},
                                   const CDOptions& opts = {});

/// True iff ell divides no step's n.
bool is_prime_to_ell_zigzag(const ZigzagCertificate& cert, const Int& ell);

/// Recomposition + flag audit; returns false (with a reason) when the
/// certificate does not verify.
bool verify_zigzag(const ZigzagCertificate& cert, std::string* why = nullptr);

}  // namespace wedgelift
