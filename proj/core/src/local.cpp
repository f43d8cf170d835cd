#include "wedgelift/local.hpp"

namespace wedgelift {

std::optional<long> ell_valuation(const Rat& x, const Int& ell) {
    if (ell < 2) fail(errc::bad_input, "valuation prime must be >= 2");
    if (x == 0) return std::nullopt;
    auto val_z = [&](Int m) {
        long v = 0;
        while (m % ell == 0) {
            m /= ell;
            ++v;
        }
        return v;
    };
    return val_z(x.get_num()) - val_z(x.get_den());
}

bool is_quadratic_residue(const Int& a, const Int& p) {
    Int r = a % p;
    if (r < 0) r += p;
    if (r == 0) fail(errc::bad_input, "residue test of a non-unit");
    Int e = (p - 1) / 2;
    Int out;
    mpz_powm(out.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return out == 1;
}

bool class_in_local_units(const SquareClass& c, const LocalUnits& ring) {
    const Int& rep = c.representative();
    const Int& p = ring.prime;
    if (rep % p == 0)
        fail(errc::non_unit_class,
             "square class " + c.str() + " is not a unit class at " + p.get_str());

    switch (ring.kind) {
    case LocalUnits::Kind::ell_adic: {
        if (p == 2) {
            // Z_2^*/(Z_2^*)^2 = {+-1} x {+-5}: a unit is a square iff = 1 mod 8
            Int r = rep % 8;
            if (r < 0) r += 8;
            return r == 1;
        }
        return is_quadratic_residue(rep, p);
    }
    case LocalUnits::Kind::witt: {
        if (p == 2) fail(errc::ell_is_two, "Witt rings here require p odd");
        if (ring.s == 1) return is_quadratic_residue(rep, p);
        // F_p^* lands inside the squares of F_{p^2}^* (index-2 subgroup of a
        // cyclic group of order p^2-1, and (p-1) | (p^2-1)/2 for odd p), so
        // every unit class with an integer representative is a square.
        return true;
    }
    case LocalUnits::Kind::witt_closed:
        if (p == 2) fail(errc::ell_is_two, "Witt rings here require p odd");
        return true;
    }
    fail(errc::internal_error, "unreachable");
}

}  // namespace wedgelift
