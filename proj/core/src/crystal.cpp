#include "wedgelift/crystal.hpp"

#include "scherk_impl.hpp"
#include "wedgelift/lift.hpp"
#include "wedgelift/wedge.hpp"

namespace wedgelift {

namespace {

MatW matw_frobenius(const MatW& M) {
    MatW out = M;
    for (auto& x : out.data()) x = x.frobenius();
    return out;
}

MatW matw_residue(const MatW& M) {
    WittRing res = M.at(0, 0).ring().residue_ring();
    MatW out(M.rows(), M.cols(), WittScalar::zero(res));
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) out.at(i, j) = M.at(i, j).residue();
    return out;
}

void check_same_ring(const FCrystalH1& X, const FCrystalH1& Y) {
    if (X.witt != Y.witt)
        fail(errc::witt_mismatch, "crystals live over different Witt rings");
}

MatW delta_map(const MatW& rho, const FCrystalH1& X, const FCrystalH1& Y) {
    return inverse(Y.C) * matw_frobenius(rho) * X.C;
}

CrystalVerdict classify(const MatW& delta, const MatW& rho) {
    if (delta == rho) return CrystalVerdict::commutes;
    if (delta == -rho) return CrystalVerdict::anticommutes;
    return CrystalVerdict::neither;
}

// Candidate vectors over the residue field F_{p^s}, enumerated by shells of
// the coordinate index (an integer in [0, q) encoding c0 + c1 p).
struct FqPolicy {
    WittRing res;

    bool unit(const WittScalar& x) const { return x.is_unit(); }

    void normalize(std::vector<WittScalar>& b) const {
        for (const auto& x : b)
            if (x.is_unit()) {
                WittScalar inv = x.inverse();
                for (auto& y : b) y = inv * y;
                return;
            }
    }

    WittScalar decode(long idx) const {
        long p = res.p.get_si();
        return WittScalar(res, idx % p, idx / p);
    }

    template <class F>
    bool for_each_candidate(F&& f) const {
        long q = res.p.get_si();
        if (res.s == 2) q *= q;
        std::vector<long> a(6, 0);
        std::vector<WittScalar> v(6, WittScalar::zero(res));
        for (long h = 1; h < q; ++h) {
            // all index vectors with sup exactly h
            std::fill(a.begin(), a.end(), 0L);
            while (true) {
                long sup = 0;
                for (long x : a) sup = std::max(sup, x);
                if (sup == h) {
                    for (int i = 0; i < 6; ++i) v[static_cast<size_t>(i)] = decode(a[static_cast<size_t>(i)]);
                    if (f(v)) return true;
                }
                int k = 5;
                while (k >= 0 && a[static_cast<size_t>(k)] == h) {
                    a[static_cast<size_t>(k)] = 0;
                    --k;
                }
                if (k < 0) break;
                ++a[static_cast<size_t>(k)];
            }
        }
        return false;
    }
};

// Unique Z with dw(Z) = Delta over the residue field, where
// dw(Z)(v^w) = Zv^w + v^Zw; solved as a 36x16 linear system.
MatW solve_dw(const MatW& Delta) {
    const WittRing res = Delta.at(0, 0).ring();
    invariant(res.N == 1, errc::internal_error, "dw solve expects residue field");
    WittScalar zero = WittScalar::zero(res), one = WittScalar::one(res);
    MatW sys(36, 17, zero);
    for (int row = 0; row < 36; ++row) {
        int J = row / 6, I = row % 6;
        int k = kPairs[J][0], l = kPairs[J][1];
        int i = kPairs[I][0], j = kPairs[I][1];
        auto add = [&](int zr, int zc, int sgn) {
            int col = zr * 4 + zc;
            sys.at(row, col) = sys.at(row, col) + (sgn == 1 ? one : -one);
        };
        if (j == l) add(k, i, 1);
        if (j == k) add(l, i, -1);
        if (i == k) add(l, j, 1);
        if (i == l) add(k, j, -1);
        sys.at(row, 16) = Delta.at(J, I);
    }
    // elimination with unit pivots
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < 16; ++col) {
        int piv = -1;
        for (int r = rank; r < 36; ++r)
            if (sys.at(r, col).is_unit()) { piv = r; break; }
        if (piv < 0) continue;
        for (int j2 = 0; j2 <= 16; ++j2) std::swap(sys.at(piv, j2), sys.at(rank, j2));
        WittScalar inv = sys.at(rank, col).inverse();
        for (int j2 = 0; j2 <= 16; ++j2) sys.at(rank, j2) = inv * sys.at(rank, j2);
        for (int r = 0; r < 36; ++r) {
            if (r == rank || sys.at(r, col).is_zero()) continue;
            WittScalar f = sys.at(r, col);
            for (int j2 = 0; j2 <= 16; ++j2)
                sys.at(r, j2) = sys.at(r, j2) - f * sys.at(rank, j2);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    invariant(rank == 16, errc::internal_error, "dw is injective; rank must be 16");
    for (int r = rank; r < 36; ++r)
        invariant(sys.at(r, 16).is_zero(), errc::internal_error,
                  "inconsistent Hensel correction system");
    MatW Z(4, 4, zero);
    for (int r = 0; r < rank; ++r) {
        int col = pivot_col[static_cast<size_t>(r)];
        Z.at(col / 4, col % 4) = sys.at(r, 16);
    }
    return Z;
}

void witt_sign_normalize(MatW& h) {
    const WittRing& R = h.at(0, 0).ring();
    for (const auto& x : h.data()) {
        if (!x.is_unit()) continue;
        WittScalar r = x.residue();
        Int key = (r.c0() != 0) ? r.c0() : r.c1();
        if (key > (R.p - 1) / 2) h = -h;
        return;
    }
}

}  // namespace

const std::vector<int>& FCrystalH1::slopes() {
    static const std::vector<int> s{0, 0, 1, 1};
    return s;
}

FCrystalH1::FCrystalH1(const WittRing& ring, const MatW& C_matrix)
    : witt(ring), C(C_matrix) {
    if (C.rows() != 4 || C.cols() != 4)
        fail(errc::bad_input, "crystal C-matrix must be 4x4");
    for (const auto& x : C.data())
        if (x.ring() != ring) fail(errc::witt_mismatch, "C entries off-ring");
    if (unit_rank(matw_residue(C)) != 4)
        fail(errc::bad_input, "crystal C-matrix must be invertible at precision N");
}

MatW FCrystalH1::frobenius_matrix() const {
    MatW D = MatW::identity(4, WittScalar::one(witt));
    WittScalar p(witt, witt.p, 0);
    D.at(2, 2) = p;
    D.at(3, 3) = p;
    return C * D;
}

std::vector<WittScalar> frobenius_action(const FCrystalH1& X,
                                         const std::vector<WittScalar>& v) {
    if (v.size() != 4) fail(errc::bad_input, "H1 vectors have 4 coordinates");
    std::vector<WittScalar> sv = v;
    for (auto& x : sv) x = x.frobenius();
    return mat_apply(X.frobenius_matrix(), sv);
}

const char* verdict_name(CrystalVerdict v) {
    switch (v) {
    case CrystalVerdict::commutes: return "commutes";
    case CrystalVerdict::anticommutes: return "anticommutes";
    case CrystalVerdict::neither: return "neither";
    }
    return "?";
}

CrystalMorphismReport is_crystal_morphism(const MatW& rho, const FCrystalH1& X,
                                          const FCrystalH1& Y) {
    check_same_ring(X, Y);
    if (rho.rows() != 4 || rho.cols() != 4)
        fail(errc::bad_input, "rho must be 4x4");
    for (const auto& x : rho.data())
        if (x.ring() != X.witt) fail(errc::witt_mismatch, "rho entries off-ring");
    MatW d1 = delta_map(rho, X, Y);
    MatW d2 = delta_map(d1, X, Y);
    CrystalMorphismReport rep;
    rep.verdict = classify(d1, rho);
    rep.f2_verdict = classify(d2, rho);
    rep.precision = X.witt.N;
    return rep;
}

WedgeCrystalResult wedge_crystal_check(const MatW& phi, const FCrystalH1& X,
                                       const FCrystalH1& Y) {
    check_same_ring(X, Y);
    const WittRing& R = X.witt;
    if (phi.rows() != 6 || phi.cols() != 6)
        fail(errc::bad_input, "phi must be 6x6");
    for (const auto& x : phi.data())
        if (x.ring() != R) fail(errc::witt_mismatch, "phi entries off-ring");
    if (!(det(phi) == WittScalar::one(R)))
        fail(errc::not_admissible, "phi must have determinant 1 at precision N");
    {
        // intertwining precondition on the wedge-square crystals, up to sign
        MatW d6 = inverse(wedge_square(Y.C)) * matw_frobenius(phi) * wedge_square(X.C);
        if (!(d6 == phi) && !(d6 == -phi))
            fail(errc::not_admissible,
                 "phi does not intertwine the induced Frobenius on wedge^2");
    }

    // residue-field lift through the pair-operator engine
    MatW phi_res = matw_residue(phi);
    WittRing res = R.residue_ring();
    FqPolicy pol{res};
    auto factors = detail::scherk_factor(phi_res, pol, /*max_factors=*/8);
    invariant(factors.size() % 2 == 0, errc::internal_error,
              "admissible residue isometry decomposed into oddly many reflections");
    MatW H = MatW::identity(4, WittScalar::one(res));
    for (size_t i = 0; i + 1 < factors.size(); i += 2)
        H = pair_operator(factors[i], factors[i + 1]) * H;
    MatW Wres = wedge_square(H);
    WittScalar c = WittScalar::one(res);
    bool found = false;
    for (int i = 0; i < 6 && !found; ++i)
        for (int j = 0; j < 6 && !found; ++j)
            if (phi_res.at(i, j).is_unit()) {
                c = Wres.at(i, j) * phi_res.at(i, j).inverse();
                found = true;
            }
    invariant(found && Wres == c * phi_res, errc::proportionality_failure,
              "residue wedge-square is not proportional to phi");

    int sign = 0;
    WittScalar s0 = WittScalar::zero(res);
    if (auto s = witt_sqrt(c.inverse())) {
        sign = 1;
        s0 = *s;
    } else if (auto sm = witt_sqrt(-(c.inverse()))) {
        sign = -1;
        s0 = *sm;
    } else {
        fail(errc::witt_obstruction,
             "the spinor class is not a residue square in F_{p^s} for either "
             "sign; no W-linear lift of +-phi exists");
    }
    MatW target = (sign == 1) ? phi : -phi;
    MatW h_res = s0 * H;
    invariant(wedge_square(h_res) == matw_residue(target), errc::internal_error,
              "residue lift does not wedge back");

    // Hensel refinement, one p-digit at a time: h <- h + p^k h Z with
    // dw(Z) = (wedge h)^-1 (target - wedge h) / p^k over the residue field
    MatW h(4, 4, WittScalar::zero(R));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            h.at(i, j) = WittScalar(R, h_res.at(i, j).c0(), h_res.at(i, j).c1());
    for (int k = 1; k < R.N; ++k) {
        MatW diff = target - wedge_square(h);
        bool done = true;
        for (const auto& x : diff.data())
            if (!x.is_zero()) done = false;
        if (done) break;
        MatW delta = inverse(wedge_square(h)) * diff;
        // every entry must be divisible by p^k
        MatW delta_k(6, 6, WittScalar::zero(res));
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                WittScalar x = delta.at(i, j);
                invariant(x.valuation() >= k, errc::internal_error,
                          "Hensel defect below current precision layer");
                for (int t = 0; t < k; ++t) {
                    auto q = x.div_p_ambient();
                    invariant(q.has_value(), errc::internal_error, "bad division");
                    x = *q;
                }
                delta_k.at(i, j) = x.residue();
            }
        MatW Z = solve_dw(delta_k);
        // h += p^k h lift(Z)
        WittScalar pk = WittScalar::one(R);
        WittScalar p_scal(R, R.p, 0);
        for (int t = 0; t < k; ++t) pk = pk * p_scal;
        MatW Zlift(4, 4, WittScalar::zero(R));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                Zlift.at(i, j) = WittScalar(R, Z.at(i, j).c0(), Z.at(i, j).c1());
        h = h + pk * (h * Zlift);
    }
    invariant(wedge_square(h) == target, errc::internal_error,
              "Hensel refinement did not converge at precision N");
    invariant(det(h) == WittScalar::one(R), errc::internal_error,
              "W-linear lift is not in SL4");
    witt_sign_normalize(h);

    WedgeCrystalResult out{h, sign, is_crystal_morphism(h, X, Y)};
    return out;
}

WittRing ring_s2_of(const WittRing& r) {
    return r.s == 2 ? r : WittRing(r.p, 2, r.N);
}

MatW extend_to_s2(const MatW& M) {
    const WittRing& r = M.at(0, 0).ring();
    if (r.s == 2) return M;
    WittRing r2 = ring_s2_of(r);
    MatW out(M.rows(), M.cols(), WittScalar::zero(r2));
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
            out.at(i, j) = WittScalar(r2, M.at(i, j).c0(), 0);
    return out;
}

XiTwistResult xi_twist(const MatW& rho, const FCrystalH1& X,
                       const FCrystalH1& Y) {
    CrystalMorphismReport before = is_crystal_morphism(rho, X, Y);
    if (before.verdict != CrystalVerdict::anticommutes)
        fail(errc::no_anticommutation,
             std::string("xi twist needs an anticommuting input, got ") +
                 verdict_name(before.verdict));
    WittRing r2 = ring_s2_of(X.witt);
    FCrystalH1 X2(r2, extend_to_s2(X.C));
    FCrystalH1 Y2(r2, extend_to_s2(Y.C));
    WittScalar xi = xi_with_power_minus_one(r2);
    MatW rho2 = xi * extend_to_s2(rho);
    CrystalMorphismReport after = is_crystal_morphism(rho2, X2, Y2);
    invariant(after.verdict == CrystalVerdict::commutes, errc::internal_error,
              "xi twist failed to repair the anticommutation");
    return XiTwistResult{xi, rho2, X2, Y2, after};
}

std::vector<int> valuation_profile(const MatW& M) {
    std::vector<int> profile;
    MatW A = M;
    int add = 0;
    int rows = A.rows(), cols = A.cols();
    int size = std::min(rows, cols);
    while (static_cast<int>(profile.size()) < size) {
        int N = A.at(0, 0).ring().N;
        // find a unit pivot
        int pi = -1, pj = -1;
        for (int i = 0; i < A.rows() && pi < 0; ++i)
            for (int j = 0; j < A.cols(); ++j)
                if (A.at(i, j).is_unit()) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) {
            bool all_zero = true;
            for (const auto& x : A.data())
                if (!x.is_zero()) all_zero = false;
            if (all_zero || N == 1) {
                // remaining divisors exceed the usable precision
                while (static_cast<int>(profile.size()) < size)
                    profile.push_back(add + N);
                break;
            }
            // every entry divisible by p: strip one factor, lose one digit
            MatW B(A.rows(), A.cols(),
                   WittScalar::zero(A.at(0, 0).ring().truncated(N - 1)));
            for (int i = 0; i < A.rows(); ++i)
                for (int j = 0; j < A.cols(); ++j) {
                    auto q = A.at(i, j).div_p_ambient();
                    invariant(q.has_value(), errc::internal_error, "bad division");
                    B.at(i, j) = *q;
                }
            A = B;
            ++add;
            continue;
        }
        profile.push_back(add);
        if (A.rows() == 1 || A.cols() == 1) break;
        // eliminate and shrink
        WittScalar inv = A.at(pi, pj).inverse();
        MatW B(A.rows() - 1, A.cols() - 1, WittScalar::zero(A.at(0, 0).ring()));
        int bi = 0;
        for (int i = 0; i < A.rows(); ++i) {
            if (i == pi) continue;
            WittScalar f = A.at(i, pj) * inv;
            int bj = 0;
            for (int j = 0; j < A.cols(); ++j) {
                if (j == pj) continue;
                B.at(bi, bj) = A.at(i, j) - f * A.at(pi, j);
                ++bj;
            }
            ++bi;
        }
        A = B;
    }
    std::sort(profile.begin(), profile.end());
    return profile;
}

}  // namespace wedgelift
