#pragma once

#include <string>
#include <vector>

#include "wedgelift/crystal.hpp"
#include "wedgelift/lift.hpp"
#include "wedgelift/matrix.hpp"
#include "wedgelift/mukai.hpp"
#include "wedgelift/reflections.hpp"

namespace wedgelift {

/// JSON wire formats. Matrices serialize as row-major arrays of scalar
/// strings in canonical reduced form ("p/q", or "p" when q = 1); Witt
/// scalars as coefficient arrays [c0, c1] under an ambient (p, s, N).
/// Emission is canonicalized (sorted keys, fixed scalar formatting) so that
/// identical inputs produce identical bytes.

std::string matq_to_json(const MatQ& M);
MatQ matq_from_json(const std::string& text, int rows, int cols);

/// Parses a JSON *value* (already-extracted array) into a matrix; used by
/// the CLI. Throws wl_error(bad_input) on malformed input.
MatQ matq_from_json_array(const std::string& array_text, int rows, int cols);

std::string cd_to_json(const CDDecomposition& cd);
std::string lift_to_json(const LiftResult& r);
std::string isogeny_to_json(const IsogenyData& d);
std::string twist_to_json(const ReflexiveTwist& t);
std::string zigzag_to_json(const ZigzagCertificate& c);
ZigzagCertificate zigzag_from_json(const std::string& text);

struct CrystalPair {
    WittRing ring;
    MatW rho;
    MatW CX;
    MatW CY;
};
CrystalPair crystal_pair_from_json(const std::string& text, const Int& p,
                                   int s, int N);
MatW matw_from_json_array(const std::string& array_text, const WittRing& R,
                          int rows, int cols);
std::string crystal_report_to_json(const CrystalMorphismReport& r);
std::string wedge_crystal_to_json(const WedgeCrystalResult& r, int precision);
std::string xi_twist_to_json(const XiTwistResult& r);
std::string matw_to_json(const MatW& M);

}  // namespace wedgelift
