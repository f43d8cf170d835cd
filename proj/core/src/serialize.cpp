#include "wedgelift/serialize.hpp"

#include <nlohmann/json.hpp>

namespace wedgelift {

using json = nlohmann::json;

namespace {

json matq_json(const MatQ& M) {
    json arr = json::array();
    for (const auto& x : M.data()) arr.push_back(rat_to_string(x));
    return arr;
}

json vecq_json(const VecQ& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(rat_to_string(x));
    return arr;
}

json veci_json(const std::vector<Int>& v) {
    json arr = json::array();
    for (const auto& x : v) {
        if (!x.fits_slong_p())
            fail(errc::internal_error, "integer vector entry overflows JSON");
        arr.push_back(x.get_si());
    }
    return arr;
}

MatQ matq_of(const json& arr, int rows, int cols) {
    if (!arr.is_array() || arr.size() != static_cast<size_t>(rows * cols))
        fail(errc::bad_input, "matrix array must have " +
                                  std::to_string(rows * cols) + " entries");
    MatQ M(rows, cols, Rat(0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const json& e = arr[static_cast<size_t>(i * cols + j)];
            if (e.is_number_integer())
                M.at(i, j) = Rat(Int(e.get<long>()));
            else if (e.is_string())
                M.at(i, j) = parse_rat(e.get<std::string>());
            else
                fail(errc::bad_input, "matrix entries must be strings or integers");
        }
    return M;
}

VecQ vecq_of(const json& arr, int len) {
    MatQ M = matq_of(arr, 1, len);
    VecQ out(static_cast<size_t>(len));
    for (int i = 0; i < len; ++i) out[static_cast<size_t>(i)] = M.at(0, i);
    return out;
}

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(errc::bad_input, "malformed JSON input");
    return j;
}

json witt_matrix_json(const MatW& M) {
    json arr = json::array();
    for (const auto& x : M.data()) {
        json coeffs = json::array();
        coeffs.push_back(x.c0().get_str());
        if (x.ring().s == 2) coeffs.push_back(x.c1().get_str());
        arr.push_back(coeffs);
    }
    return arr;
}

MatW witt_matrix_of(const json& arr, const WittRing& R, int rows, int cols) {
    if (!arr.is_array() || arr.size() != static_cast<size_t>(rows * cols))
        fail(errc::bad_input, "Witt matrix array must have " +
                                  std::to_string(rows * cols) + " entries");
    MatW M(rows, cols, WittScalar::zero(R));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const json& e = arr[static_cast<size_t>(i * cols + j)];
            Int c0 = 0, c1 = 0;
            auto as_int = [](const json& v) -> Int {
                if (v.is_number_integer()) return Int(v.get<long>());
                if (v.is_string()) return Int(v.get<std::string>());
                fail(errc::bad_input, "Witt coefficients must be integers");
            };
            if (e.is_array()) {
                if (e.empty() || e.size() > 2)
                    fail(errc::bad_input, "Witt coefficient arrays have 1 or 2 entries");
                c0 = as_int(e[0]);
                if (e.size() == 2) c1 = as_int(e[1]);
            } else if (e.is_object()) {
                // full scalar form {"p":..,"s":..,"N":..,"coeffs":[..]}
                if (Int(e.at("p").get<long>()) != R.p ||
                    e.at("s").get<int>() != R.s || e.at("N").get<int>() != R.N)
                    fail(errc::witt_mismatch, "scalar object disagrees with ambient ring");
                const json& cf = e.at("coeffs");
                c0 = as_int(cf.at(0));
                if (cf.size() > 1) c1 = as_int(cf.at(1));
            } else {
                c0 = as_int(e);
            }
            if (R.s == 1 && c1 != 0)
                fail(errc::bad_input, "u-coefficient in a degree-1 Witt ring");
            M.at(i, j) = WittScalar(R, c0, c1);
        }
    return M;
}

}  // namespace

std::string matq_to_json(const MatQ& M) { return matq_json(M).dump(); }

MatQ matq_from_json(const std::string& text, int rows, int cols) {
    return matq_of(parse_text(text), rows, cols);
}

MatQ matq_from_json_array(const std::string& array_text, int rows, int cols) {
    return matq_from_json(array_text, rows, cols);
}

std::string cd_to_json(const CDDecomposition& cd) {
    json j;
    json factors = json::array();
    json norms = json::array();
    SquareClass sn;
    for (const auto& f : cd.factors) {
        factors.push_back(veci_json(f.b));
        norms.push_back(rat_to_string(f.norm));
        sn = sn * square_class(f.norm);
    }
    j["factors"] = factors;
    j["norms"] = norms;
    j["spinor_norm"] = sn.str();
    return j.dump();
}

std::string lift_to_json(const LiftResult& r) {
    json j;
    if (r.h) {
        j["h"] = matq_json(*r.h);
    } else if (r.h_quad) {
        json a = json::array(), b = json::array();
        for (const auto& x : r.h_quad->data()) {
            a.push_back(rat_to_string(x.a()));
            b.push_back(rat_to_string(x.b()));
        }
        j["h"] = {{"rational_part", a}, {"sqrt_part", b}};
    } else {
        j["h"] = nullptr;
    }
    j["sign"] = (r.sign == 0) ? "n/a" : (r.sign > 0 ? "+" : "-");
    j["obstruction"] = r.obstruction ? json(r.obstruction->str()) : json(nullptr);
    j["field"] = r.field.quadratic ? "Q(sqrt " + r.field.d.get_str() + ")" : "Q";
    return j.dump();
}

std::string isogeny_to_json(const IsogenyData& d) {
    json j;
    j["g0"] = matq_json(d.g0);
    j["n"] = d.n.get_si();
    j["sign"] = d.sign > 0 ? "+" : "-";
    j["dualized"] = d.dualized;
    return j.dump();
}

std::string twist_to_json(const ReflexiveTwist& t) {
    json j;
    j["b"] = veci_json(t.b);
    j["n"] = t.n.get_num().get_si();
    j["brauer_order_bound"] = t.brauer_order_bound.get_si();
    j["psi"] = matq_json(t.psi);
    j["B"] = vecq_json(t.B.b);
    j["Bprime"] = vecq_json(t.Bprime.b);
    j["B_order"] = t.B.order.get_si();
    j["tilde_psi"] = matq_json(t.tilde_psi);
    j["change_of_basis"] = matq_json(t.change_of_basis);
    j["integral"] = t.integral;
    return j.dump();
}

std::string zigzag_to_json(const ZigzagCertificate& c) {
    json j;
    json steps = json::array();
    for (const auto& s : c.steps) {
        json st;
        st["b"] = veci_json(s.b);
        st["n"] = s.n.get_num().get_si();
        st["B"] = vecq_json(s.B);
        st["Bprime"] = vecq_json(s.Bprime);
        st["brauer_order_bound"] = s.brauer_order_bound.get_si();
        steps.push_back(st);
    }
    j["steps"] = steps;
    j["composite"] = matq_json(c.composite);
    json pt = json::object();
    for (const auto& [ell, flag] : c.prime_to) pt[ell.get_str()] = flag;
    j["prime_to"] = pt;
    return j.dump();
}

ZigzagCertificate zigzag_from_json(const std::string& text) {
    json j = parse_text(text);
    ZigzagCertificate c;
    if (!j.contains("steps") || !j.contains("composite"))
        fail(errc::bad_input, "certificate needs steps and composite");
    c.composite = matq_of(j["composite"], 6, 6);
    for (const json& st : j["steps"]) {
        ZigzagStep s;
        VecQ b = vecq_of(st.at("b"), 6);
        s.b.resize(6);
        for (int i = 0; i < 6; ++i) {
            if (!is_integer(b[static_cast<size_t>(i)]))
                fail(errc::bad_input, "step vectors must be integral");
            s.b[static_cast<size_t>(i)] = b[static_cast<size_t>(i)].get_num();
        }
        if (st.contains("n"))
            s.n = Rat(Int(st.at("n").get<long>()));
        s.B = vecq_of(st.at("B"), 6);
        s.Bprime = vecq_of(st.at("Bprime"), 6);
        if (st.contains("brauer_order_bound"))
            s.brauer_order_bound = Int(st.at("brauer_order_bound").get<long>());
        else
            s.brauer_order_bound = abs(s.n.get_num());
        c.steps.push_back(std::move(s));
    }
    if (j.contains("prime_to"))
        for (auto& [key, val] : j["prime_to"].items())
            c.prime_to[Int(key)] = val.get<bool>();
    return c;
}

CrystalPair crystal_pair_from_json(const std::string& text, const Int& p,
                                   int s, int N) {
    json j = parse_text(text);
    CrystalPair out{WittRing(p, s, N), MatW(), MatW(), MatW()};
    if (!j.contains("rho") || !j.contains("CX") || !j.contains("CY"))
        fail(errc::bad_input, "crystal input needs rho, CX, CY");
    out.rho = witt_matrix_of(j["rho"], out.ring, 4, 4);
    out.CX = witt_matrix_of(j["CX"], out.ring, 4, 4);
    out.CY = witt_matrix_of(j["CY"], out.ring, 4, 4);
    return out;
}

std::string crystal_report_to_json(const CrystalMorphismReport& r) {
    json j;
    j["verdict"] = verdict_name(r.verdict);
    j["f2_verdict"] = verdict_name(r.f2_verdict);
    j["precision"] = r.precision;
    return j.dump();
}

std::string matw_to_json(const MatW& M) { return witt_matrix_json(M).dump(); }

MatW matw_from_json_array(const std::string& array_text, const WittRing& R,
                          int rows, int cols) {
    return witt_matrix_of(parse_text(array_text), R, rows, cols);
}

std::string wedge_crystal_to_json(const WedgeCrystalResult& r, int precision) {
    json j;
    j["rho"] = witt_matrix_json(r.rho);
    j["sign"] = r.sign > 0 ? "+" : "-";
    j["verdict"] = verdict_name(r.report.verdict);
    j["f2_verdict"] = verdict_name(r.report.f2_verdict);
    j["precision"] = precision;
    return j.dump();
}

std::string xi_twist_to_json(const XiTwistResult& r) {
    json j;
    json xi = json::array();
    xi.push_back(r.xi.c0().get_str());
    xi.push_back(r.xi.c1().get_str());
    j["xi"] = xi;
    j["rho_twisted"] = witt_matrix_json(r.rho_twisted);
    j["verdict"] = verdict_name(r.report.verdict);
    j["precision"] = r.report.precision;
    j["s"] = 2;
    return j.dump();
}

}  // namespace wedgelift
