#pragma once

#include <optional>
#include <string>

#include "wedgelift/rational.hpp"
#include "wedgelift/square_class.hpp"

namespace wedgelift {

/// ell-adic valuation of a rational. Empty optional encodes +infinity (x = 0).
std::optional<long> ell_valuation(const Rat& x, const Int& ell);

inline bool is_ell_integral(const Rat& x, const Int& ell) {
    auto v = ell_valuation(x, ell);
    return !v || *v >= 0;
}

/// Local unit-group descriptor for square-class membership tests: either
/// Z_ell^* for a prime ell, W(F_{p^s})^* for an odd prime p and s in {1,2},
/// or the Witt ring of an algebraically closed residue field of odd
/// characteristic (where every unit is a square).
struct LocalUnits {
    enum class Kind { ell_adic, witt, witt_closed } kind;
    Int prime;  // ell, or p
    int s = 1;  // residue degree, witt only

    static LocalUnits ZellUnits(const Int& ell) {
        return {Kind::ell_adic, ell, 1};
    }
    static LocalUnits Witt(const Int& p, int s) {
        return {Kind::witt, p, s};
    }
    static LocalUnits WittClosed(const Int& p) {
        return {Kind::witt_closed, p, 1};
    }
};

/// Whether the square class c is trivial in the stated local unit group.
/// For Z_ell (ell odd) a unit is a square iff it is a quadratic residue
/// mod ell; for ell = 2 iff it is 1 mod 8; for W(F_{p^s}) iff the residue is
/// a square in F_{p^s} (Hensel). Errors with non_unit_class when the
/// representative has odd valuation at the prime.
bool class_in_local_units(const SquareClass& c, const LocalUnits& ring);

/// Integrality summary of a matrix at a prime, as produced by the lift and
/// decomposition routines.
struct LocalIntegralityReport {
    Int prime;
    long min_valuation = 0;  // minimum over matrix entries
    bool integral = false;   // min_valuation >= 0
    bool unimodular = false; // integral and the inverse is integral too
};

/// Quadratic-residue test mod an odd prime.
bool is_quadratic_residue(const Int& a, const Int& p);

}  // namespace wedgelift
