#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "wedgelift/errors.hpp"

namespace wedgelift {

/// Exact coefficient scalars. `Int` and `Rat` are GMP arbitrary-precision
/// integers and rationals; `Rat` values are kept canonical (reduced, positive
/// denominator), which is what gmp's canonicalize guarantees.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) fail(errc::bad_input, "rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Parses the canonical serialization "p/q" (or "p"). Rejects anything gmp
/// would not round-trip byte-identically.
Rat parse_rat(const std::string& s);

/// Canonical serialization: "p/q" reduced, "p" when the denominator is 1.
std::string rat_to_string(const Rat& q);

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

/// Exact square root of a rational if it exists.
std::optional<Rat> rat_sqrt(const Rat& q);

/// Squarefree part of a nonzero integer, sign preserved: n = s * m^2 with s
/// squarefree, returns s. Plain trial division; inputs in this toolkit stay
/// far below anything that would need a serious factoring backend.
Int squarefree_part(const Int& n);

}  // namespace wedgelift
