#pragma once

#include <string>
#include <vector>

#include "wedgelift/matrix.hpp"
#include "wedgelift/witt.hpp"

namespace wedgelift {

/// F-crystal presentation of the first cohomology of an abelian surface over
/// F_{p^s}: a free rank-4 module over the truncated Witt ring with the
/// sigma-semilinear Frobenius
///     F(v) = C * diag(p^alpha) * sigma(v),   alpha = (0, 0, 1, 1),
/// in an admissible slope basis. C is invertible at precision N; with C = I
/// the action is exactly diag(1,1,p,p) on sigma-twisted coordinates, and the
/// image lattice of F is H0 + p H1 for every unit C (elementary divisor
/// exponents (0,0,1,1), checked by Smith-form diagnostics in the tests).
struct FCrystalH1 {
    WittRing witt;
    MatW C;  // 4x4, invertible at precision N

    static const std::vector<int>& slopes();  // fixed (0, 0, 1, 1)

    FCrystalH1(const WittRing& ring, const MatW& C_matrix);

    /// Matrix of the semilinear action: C * diag(p^alpha).
    MatW frobenius_matrix() const;
};

/// F applied to a coordinate vector (entrywise sigma, then the matrix).
std::vector<WittScalar> frobenius_action(const FCrystalH1& X,
                                         const std::vector<WittScalar>& v);

enum class CrystalVerdict { commutes, anticommutes, neither };

const char* verdict_name(CrystalVerdict v);

/// Verdict of the intertwining test for rho : H1(X) -> H1(Y), exact at the
/// stated precision.
struct CrystalMorphismReport {
    CrystalVerdict verdict;
    int precision;
    /// Verdict for the squared Frobenius (delta applied twice); commutes
    /// whenever the single verdict is commutes or anticommutes.
    CrystalVerdict f2_verdict;
};

/// Lemma test: rho is a morphism of F-crystals iff
/// Delta(rho) := C_Y^-1 sigma(rho) C_X equals rho; it anticommutes iff
/// Delta(rho) = -rho. The slope twists are already absorbed into the
/// admissible-basis convention for C. Errors with witt_mismatch when the
/// two crystals live over different Witt descriptors.
CrystalMorphismReport is_crystal_morphism(const MatW& rho, const FCrystalH1& X,
                                          const FCrystalH1& Y);

/// p-adic wedge lift: a rho over W with wedge_square(rho) = sign * phi,
/// computed by the lift engine on the residue field followed by Hensel
/// refinement to precision N. Requires phi admissible (unit determinant 1)
/// and intertwining the induced Frobenius on wedge^2 up to sign. Errors:
/// not_admissible, witt_obstruction (the needed square root does not exist
/// over F_{p^s}; impossible over algebraically closed residue fields).
struct WedgeCrystalResult {
    MatW rho;
    int sign;  // wedge_square(rho) = sign * phi
    CrystalMorphismReport report;  // intertwining report for rho
};

WedgeCrystalResult wedge_crystal_check(const MatW& phi, const FCrystalH1& X,
                                       const FCrystalH1& Y);

/// Repairs an anticommuting intertwiner: multiplies by a Teichmueller
/// element xi with xi^(p-1) = -1 in W(F_{p^2}), after extending scalars to
/// s = 2 if needed. Errors with no_anticommutation when the input does not
/// anticommute. Returns the twisted matrix together with xi and the crystals
/// extended to the s = 2 Witt ring.
struct XiTwistResult {
    WittScalar xi;
    MatW rho_twisted;
    FCrystalH1 X2, Y2;  // crystals over W(F_{p^2})/p^N
    CrystalMorphismReport report;  // verdict for rho_twisted (commutes)
};

XiTwistResult xi_twist(const MatW& rho, const FCrystalH1& X,
                       const FCrystalH1& Y);

/// Valuations of the elementary divisors of a Witt matrix (Smith form over
/// W/p^N); used for the slope-profile diagnostics.
std::vector<int> valuation_profile(const MatW& M);

/// Scalar extension helpers between s = 1 and s = 2 rings.
MatW extend_to_s2(const MatW& M);
WittRing ring_s2_of(const WittRing& r);

}  // namespace wedgelift
