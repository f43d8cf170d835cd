#include "wedgelift/errors.hpp"

namespace wedgelift {

const char* errc_name(errc c) {
    switch (c) {
    case errc::zero_input: return "ZeroInput";
    case errc::non_unit_class: return "NonUnitClass";
    case errc::isotropic_vector: return "IsotropicVector";
    case errc::singular_input: return "SingularInput";
    case errc::not_an_isometry: return "NotAnIsometry";
    case errc::not_admissible: return "NotAdmissible";
    case errc::not_ell_integral: return "NotEllIntegral";
    case errc::ell_is_two: return "EllIsTwo";
    case errc::witt_mismatch: return "WittMismatch";
    case errc::no_anticommutation: return "NoAnticommutation";
    case errc::bad_input: return "BadInput";
    case errc::search_exhausted: return "SearchExhausted";
    case errc::obstruction_at_ell: return "ObstructionAtEll";
    case errc::witt_obstruction: return "WittObstruction";
    case errc::proportionality_failure: return "ProportionalityFailure";
    case errc::galois_test_failure: return "GaloisTestFailure";
    case errc::integrality_violation: return "IntegralityViolation";
    case errc::internal_error: return "InternalError";
    }
    return "UnknownError";
}

}  // namespace wedgelift
