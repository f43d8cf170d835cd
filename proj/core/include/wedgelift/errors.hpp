#pragma once

#include <stdexcept>
#include <string>

namespace wedgelift {

/// Reason codes shared by the whole toolkit. Every thrown error carries one,
/// and the CLI maps them onto its stable exit-code table.
enum class errc {
    zero_input,
    non_unit_class,
    isotropic_vector,
    singular_input,
    not_an_isometry,
    not_admissible,
    not_ell_integral,
    ell_is_two,
    witt_mismatch,
    no_anticommutation,
    bad_input,            // malformed JSON, wrong dimensions, wrong field

    search_exhausted,     // candidate-vector search bound hit

    obstruction_at_ell,   // neither +SN nor -SN is a square in Z_ell^*
    witt_obstruction,     // SN class is not a residue square in W(F_{p^s})

    proportionality_failure,  // internal invariant violations: always a bug
    galois_test_failure,
    integrality_violation,
    internal_error,
};

/// Severity buckets, in one-to-one correspondence with CLI exit codes:
/// invalid_input -> 3, resource_bound -> 4, obstruction -> 2, internal -> 5.
enum class error_kind { invalid_input, resource_bound, obstruction, internal };

constexpr error_kind kind_of(errc c) {
    switch (c) {
    case errc::search_exhausted:
        return error_kind::resource_bound;
    case errc::obstruction_at_ell:
    case errc::witt_obstruction:
        return error_kind::obstruction;
    case errc::proportionality_failure:
    case errc::galois_test_failure:
    case errc::integrality_violation:
    case errc::internal_error:
        return error_kind::internal;
    default:
        return error_kind::invalid_input;
    }
}

const char* errc_name(errc c);

class wl_error : public std::runtime_error {
public:
    wl_error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }
    error_kind kind() const { return kind_of(code_); }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw wl_error(code, what);
}

/// Internal invariant check. A failure here is a bug in the engine, never a
/// property of the input; the CLI reports it as exit code 5.
inline void invariant(bool cond, errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace wedgelift
