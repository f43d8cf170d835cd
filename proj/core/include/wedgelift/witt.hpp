#pragma once

#include <optional>
#include <string>

#include "wedgelift/rational.hpp"

namespace wedgelift {

/// Descriptor of a truncated Witt ring W(F_{p^s})/p^N for an odd prime p and
/// s in {1,2}. Since W(F_{p^s}) is unramified, it is presented exactly as
/// (Z/p^N)[u]/(u^2 - r) where r lifts a quadratic nonresidue mod p; the
/// canonical choice is r = -1 when p = 3 mod 4 and otherwise the smallest
/// positive nonresidue. Frobenius is the Hensel lift of x -> x^p, which on
/// this presentation is simply u -> -u.
struct WittRing {
    Int p;
    int s = 1;
    int N = 1;
    Int r = 0;    // modulus constant, s = 2 only: u^2 = r
    Int pN = 0;   // cached p^N

    WittRing() = default;
    WittRing(const Int& p_, int s_, int N_);

    bool operator==(const WittRing& o) const {
        return p == o.p && s == o.s && N == o.N;
    }
    bool operator!=(const WittRing& o) const { return !(*this == o); }

    WittRing residue_ring() const { return WittRing(p, s, 1); }
    WittRing truncated(int M) const { return WittRing(p, s, M); }
};

/// Element c0 + c1*u of a truncated Witt ring, coefficients canonical in
/// [0, p^N). All arithmetic checks ring compatibility and throws
/// witt_mismatch on disagreement.
class WittScalar {
public:
    WittScalar() = default;
    WittScalar(const WittRing& ring, const Int& c0, const Int& c1 = 0);

    static WittScalar zero(const WittRing& R) { return WittScalar(R, 0, 0); }
    static WittScalar one(const WittRing& R) { return WittScalar(R, 1, 0); }
    /// The generator u (s = 2 rings only).
    static WittScalar gen(const WittRing& R);

    const WittRing& ring() const { return ring_; }
    const Int& c0() const { return c0_; }
    const Int& c1() const { return c1_; }

    bool is_zero() const { return c0_ == 0 && c1_ == 0; }
    /// Units are exactly the elements with nonzero residue.
    bool is_unit() const;

    /// p-adic valuation, capped at the precision N for the zero element.
    int valuation() const;

    WittScalar operator-() const;
    friend WittScalar operator+(const WittScalar& x, const WittScalar& y);
    friend WittScalar operator-(const WittScalar& x, const WittScalar& y);
    friend WittScalar operator*(const WittScalar& x, const WittScalar& y);
    friend bool operator==(const WittScalar& x, const WittScalar& y);
    friend bool operator!=(const WittScalar& x, const WittScalar& y) {
        return !(x == y);
    }

    /// Multiplicative inverse of a unit.
    WittScalar inverse() const;

    /// Frobenius sigma: identity for s = 1, u -> -u for s = 2. A ring map
    /// that reduces to x -> x^p mod p, with sigma^s = id.
    WittScalar frobenius() const;

    /// Image in W/p^M for M <= N (truncation) or the tautological lift for
    /// M >= N (upper coefficients zero).
    WittScalar to_precision(int M) const;
    WittScalar residue() const { return to_precision(1); }

    /// Division by p. Only defined when the value is divisible by p; the
    /// result lives at precision N-1. This is the only precision-losing
    /// operation ("isogeny-ambient" division); empty optional if p does not
    /// divide the value or N = 1.
    std::optional<WittScalar> div_p_ambient() const;

    std::string str() const;

private:
    void reduce();

    WittRing ring_;
    Int c0_ = 0, c1_ = 0;
};

/// Teichmueller lift: the unique x with x^(p^s - 1) = 1 at precision N whose
/// residue is the given nonzero residue-field element. Errors with zero_input
/// on zero.
WittScalar teichmueller(const WittRing& ring, const WittScalar& residue_elt);

/// Square root of a unit by Hensel lifting; empty when the residue is a
/// nonsquare in F_{p^s}.
std::optional<WittScalar> witt_sqrt(const WittScalar& x);

/// Whether a unit's residue is a square in F_{p^s}.
bool witt_residue_is_square(const WittScalar& x);

/// A xi with xi^(p-1) = -1 in W(F_{p^2})/p^N, as a Teichmueller element.
WittScalar xi_with_power_minus_one(const WittRing& ring_s2);

}  // namespace wedgelift
