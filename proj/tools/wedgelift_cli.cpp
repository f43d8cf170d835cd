// Batch front end: exact matrices in as JSON, certificates and reports out.
//
// Exit codes (part of the public contract):
//   0  success
//   2  mathematical obstruction (the obstruction object is still printed)
//   3  invalid input (not an isometry, not admissible, malformed JSON, ...)
//   4  resource bound hit (candidate search exhausted)
//   5  internal invariant violation -- always a bug, never an input property

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "wedgelift/crystal.hpp"
#include "wedgelift/lift.hpp"
#include "wedgelift/mukai.hpp"
#include "wedgelift/reflections.hpp"
#include "wedgelift/serialize.hpp"
#include "wedgelift/wedge.hpp"

namespace wl = wedgelift;
using json = nlohmann::json;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-" || path.empty()) {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) wl::fail(wl::errc::bad_input, "cannot open input file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Accepts either a bare JSON array or an object holding it under `key`.
std::string unwrap_array(const std::string& text, const std::string& key) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) wl::fail(wl::errc::bad_input, "malformed JSON input");
    if (j.is_object()) {
        if (!j.contains(key))
            wl::fail(wl::errc::bad_input, "expected key \"" + key + "\"");
        return j[key].dump();
    }
    return j.dump();
}

void emit(const std::string& jsonline) { std::cout << jsonline << "\n"; }

int exit_code_for(const wl::wl_error& e) {
    switch (e.kind()) {
    case wl::error_kind::obstruction: return 2;
    case wl::error_kind::invalid_input: return 3;
    case wl::error_kind::resource_bound: return 4;
    case wl::error_kind::internal: return 5;
    }
    return 5;
}

struct CrystalFlags {
    long p = 3;
    int s = 1;
    int N = 6;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lattice engine for wedge-square lifting, reflection "
                 "decompositions, twisted Mukai lattices and F-crystal checks"};
    app.require_subcommand(1);

    std::string input_path = "-";
    unsigned long seed = 0;
    int max_height = 16;
    app.add_option("--seed", seed, "tie-breaking seed for the candidate search")
        ->capture_default_str();
    app.add_option("--max-height", max_height,
                   "sup-norm bound for the candidate search")
        ->capture_default_str();

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("input", input_path,
                        "input file (defaults to standard input)");
    };

    auto* c_gram = app.add_subcommand("gram", "Gram matrix of the wedge pairing");
    auto* c_wedge = app.add_subcommand("wedge", "wedge-square of a 4x4 matrix");
    add_input(c_wedge);
    auto* c_dec = app.add_subcommand("decompose",
                                     "Cartan-Dieudonne reflection decomposition");
    add_input(c_dec);
    long dec_ell = 0;
    c_dec->add_option("--prime-to", dec_ell,
                      "odd prime: produce prime-to-ell factors");
    auto* c_sn = app.add_subcommand("spinor-norm", "spinor norm square class");
    add_input(c_sn);
    auto* c_lift = app.add_subcommand("lift", "invert the wedge-square map");
    add_input(c_lift);
    bool lift_quadratic = false;
    long lift_ell = 0;
    c_lift->add_flag("--quadratic", lift_quadratic,
                     "lift over Q(sqrt SN) when SN is not a square");
    c_lift->add_option("--prime-to", lift_ell,
                       "odd prime: lift +-phi with an ell-integrality report");
    auto* c_iso = app.add_subcommand("isogeny", "principal-isogeny data");
    add_input(c_iso);
    auto* c_twist = app.add_subcommand("twist",
                                       "reflexive twisted isometry of a vector");
    add_input(c_twist);
    auto* c_zig = app.add_subcommand("zigzag", "zig-zag factorization certificate");
    add_input(c_zig);
    std::string zig_primes = "2,3,5,7";
    c_zig->add_option("--primes", zig_primes, "comma-separated prime-to flags")
        ->capture_default_str();
    auto* c_verify = app.add_subcommand("verify", "re-verify a certificate");
    add_input(c_verify);

    CrystalFlags cf;
    auto add_crystal_flags = [&](CLI::App* cmd) {
        cmd->add_option("--p", cf.p, "odd prime")->required();
        cmd->add_option("--s", cf.s, "residue degree (1 or 2)")->capture_default_str();
        cmd->add_option("--N", cf.N, "Witt precision")->capture_default_str();
    };
    auto* c_cryst = app.add_subcommand("crystal-check",
                                       "Frobenius intertwining verdict");
    add_input(c_cryst);
    add_crystal_flags(c_cryst);
    auto* c_xi = app.add_subcommand("xi-twist",
                                    "repair an anticommuting intertwiner");
    add_input(c_xi);
    add_crystal_flags(c_xi);
    auto* c_wcheck = app.add_subcommand(
        "wedge-crystal", "p-adic wedge lift of an admissible 6x6 over W");
    add_input(c_wcheck);
    add_crystal_flags(c_wcheck);

    CLI11_PARSE(app, argc, argv);

    wl::CDOptions opts{seed, max_height};

    try {
        if (c_gram->parsed()) {
            emit(wl::matq_to_json(wl::gram_lambda()));
            return 0;
        }
        if (c_wedge->parsed()) {
            wl::MatQ h = wl::matq_from_json_array(
                unwrap_array(read_input(input_path), "h"), 4, 4);
            emit(wl::matq_to_json(wl::wedge_square(h)));
            return 0;
        }
        if (c_dec->parsed()) {
            wl::MatQ g = wl::matq_from_json_array(
                unwrap_array(read_input(input_path), "g"), 6, 6);
            wl::CDDecomposition cd =
                dec_ell ? wl::cd_decompose_prime_to_ell(g, wl::Int(dec_ell), opts)
                        : wl::cd_decompose(g, opts);
            emit(wl::cd_to_json(cd));
            return 0;
        }
        if (c_sn->parsed()) {
            wl::MatQ g = wl::matq_from_json_array(
                unwrap_array(read_input(input_path), "g"), 6, 6);
            json j;
            j["spinor_norm"] = wl::spinor_norm(g, opts).str();
            emit(j.dump());
            return 0;
        }
        if (c_lift->parsed()) {
            wl::MatQ g = wl::matq_from_json_array(
                unwrap_array(read_input(input_path), "g"), 6, 6);
            wl::LiftResult r;
            if (lift_ell) {
                wl::PrimeToEllLift pl =
                    wl::prime_to_ell_lift(g, wl::Int(lift_ell), opts);
                json j = json::parse(wl::lift_to_json(pl.lift));
                j["report"] = {{"prime", pl.report.prime.get_si()},
                               {"min_valuation", pl.report.min_valuation},
                               {"integral", pl.report.integral},
                               {"unimodular", pl.report.unimodular}};
                emit(j.dump());
                return 0;
            }
            r = lift_quadratic ? wl::lift_over_quadratic(g, opts)
                               : wl::lift_so_to_sl(g, opts);
            emit(wl::lift_to_json(r));
            return r.obstruction ? 2 : 0;
        }
        if (c_iso->parsed()) {
            wl::MatQ phi = wl::matq_from_json_array(
                unwrap_array(read_input(input_path), "phi"), 6, 6);
            emit(wl::isogeny_to_json(wl::principal_isogeny_data(phi, opts)));
            return 0;
        }
        if (c_twist->parsed()) {
            wl::MatQ bm = wl::matq_from_json_array(
                unwrap_array(read_input(input_path), "b"), 1, 6);
            std::vector<wl::Rat> b(6);
            for (int i = 0; i < 6; ++i) b[static_cast<size_t>(i)] = bm.at(0, i);
            emit(wl::twist_to_json(wl::reflexive_twisted_isometry(b)));
            return 0;
        }
        if (c_zig->parsed()) {
            wl::MatQ phi = wl::matq_from_json_array(
                unwrap_array(read_input(input_path), "phi"), 6, 6);
            std::vector<wl::Int> primes;
            std::stringstream ss(zig_primes);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) primes.emplace_back(tok);
            emit(wl::zigzag_to_json(wl::zigzag_factorize(phi, primes, opts)));
            return 0;
        }
        if (c_verify->parsed()) {
            wl::ZigzagCertificate cert =
                wl::zigzag_from_json(read_input(input_path));
            std::string why;
            bool ok = wl::verify_zigzag(cert, &why);
            json j;
            j["verified"] = ok;
            if (!ok) j["reason"] = why;
            emit(j.dump());
            return ok ? 0 : 3;
        }
        if (c_cryst->parsed()) {
            wl::CrystalPair pair = wl::crystal_pair_from_json(
                read_input(input_path), wl::Int(cf.p), cf.s, cf.N);
            wl::FCrystalH1 X(pair.ring, pair.CX), Y(pair.ring, pair.CY);
            emit(wl::crystal_report_to_json(wl::is_crystal_morphism(pair.rho, X, Y)));
            return 0;
        }
        if (c_xi->parsed()) {
            wl::CrystalPair pair = wl::crystal_pair_from_json(
                read_input(input_path), wl::Int(cf.p), cf.s, cf.N);
            wl::FCrystalH1 X(pair.ring, pair.CX), Y(pair.ring, pair.CY);
            emit(wl::xi_twist_to_json(wl::xi_twist(pair.rho, X, Y)));
            return 0;
        }
        if (c_wcheck->parsed()) {
            std::string text = read_input(input_path);
            json j = json::parse(text, nullptr, false);
            if (j.is_discarded() || !j.is_object() || !j.contains("phi") ||
                !j.contains("CX") || !j.contains("CY"))
                wl::fail(wl::errc::bad_input, "expected phi, CX, CY");
            wl::WittRing ring(wl::Int(cf.p), cf.s, cf.N);
            wl::MatW phi = wl::matw_from_json_array(j["phi"].dump(), ring, 6, 6);
            wl::MatW CX = wl::matw_from_json_array(j["CX"].dump(), ring, 4, 4);
            wl::MatW CY = wl::matw_from_json_array(j["CY"].dump(), ring, 4, 4);
            wl::FCrystalH1 X(ring, CX), Y(ring, CY);
            emit(wl::wedge_crystal_to_json(wl::wedge_crystal_check(phi, X, Y),
                                           cf.N));
            return 0;
        }
        wl::fail(wl::errc::bad_input, "no subcommand selected");
    } catch (const wl::wl_error& e) {
        if (e.kind() == wl::error_kind::obstruction) {
            json j;
            j["obstruction"] = e.what();
            j["error"] = wl::errc_name(e.code());
            emit(j.dump());
        }
        std::cerr << "wedgelift: " << wl::errc_name(e.code()) << ": " << e.what()
                  << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "wedgelift: InternalError: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
