#include "wedgelift/lift.hpp"

#include <array>
#include <cstdint>

#include "wedgelift/local.hpp"

namespace wedgelift {

namespace {

// H = product of pair operators matching the reflection product of an even
// factor list: target = R(f[2m-1]) ... R(f[0]) (f[0] applies first), paired
// as T(f[1], f[0]) first. wedge_square(H) is then a scalar multiple of the
// target; the scalar is solved from the first unit entry and re-verified on
// all 36 entries.
template <class S>
struct RawLift {
    Matrix<S> H;
    S c;
};

template <class S>
RawLift<S> pair_product(const std::vector<std::vector<S>>& f,
                        const Matrix<S>& target) {
    invariant(f.size() % 2 == 0, errc::internal_error,
              "odd reflection count cannot lift through wedge-square");
    S one = ring_traits<S>::one_like(target.at(0, 0));
    Matrix<S> H = Matrix<S>::identity(4, one);
    for (size_t i = 0; i + 1 < f.size(); i += 2) {
        // wedge_square(T_{b,c}) = (q(b)q(c)/4) R_c R_b, so the consecutive
        // pair "f[i] first, then f[i+1]" is covered by T_{f[i], f[i+1]}
        Matrix<S> T = pair_operator(f[i], f[i + 1]);
        H = T * H;
    }
    Matrix<S> W = wedge_square(H);
    // proportionality scalar from the first unit entry of the target
    S c = one;
    bool found = false;
    for (int i = 0; i < 6 && !found; ++i)
        for (int j = 0; j < 6 && !found; ++j)
            if (ring_traits<S>::is_unit(target.at(i, j))) {
                c = W.at(i, j) * ring_traits<S>::inverse(target.at(i, j));
                found = true;
            }
    invariant(found, errc::internal_error, "isometry without unit entries");
    invariant(W == c * target, errc::proportionality_failure,
              "wedge-square of the pair-operator product is not proportional "
              "to the target");
    invariant(ring_traits<S>::is_unit(c), errc::proportionality_failure,
              "degenerate proportionality scalar");
    return {H, c};
}

std::vector<std::vector<Rat>> factor_vectors(const CDDecomposition& cd) {
    std::vector<std::vector<Rat>> out;
    for (const auto& r : cd.factors) {
        std::vector<Rat> v(6);
        for (int i = 0; i < 6; ++i) v[static_cast<size_t>(i)] = Rat(r.b[static_cast<size_t>(i)]);
        out.push_back(std::move(v));
    }
    return out;
}

SquareClass spinor_norm_of(const CDDecomposition& cd) {
    SquareClass sn;
    for (const auto& r : cd.factors) sn = sn * square_class(r.norm);
    return sn;
}

void sign_normalize(MatQ& h) {
    for (const auto& x : h.data()) {
        if (x == 0) continue;
        if (x < 0) h = -h;
        return;
    }
}

void sign_normalize(MatQuad& h) {
    for (const auto& x : h.data()) {
        if (x.is_zero()) continue;
        bool neg = x.a() < 0 || (x.a() == 0 && x.b() < 0);
        if (neg) h = -h;
        return;
    }
}

MatQuad to_quad(const MatQ& M, const Int& d) {
    MatQuad out(M.rows(), M.cols(), QuadScalar(d, Rat(0), Rat(0)));
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
            out.at(i, j) = QuadScalar(d, M.at(i, j), Rat(0));
    return out;
}

void check_liftable(const MatQ& g) {
    if (!is_isometry(g)) fail(errc::not_an_isometry, "input is not in O(Lambda)(Q)");
    Rat d = admissibility_degree(g);
    if (d != 1)
        fail(errc::not_admissible,
             "determinant is " + rat_to_string(d) +
                 "; pre-compose with poincare_duality to reach SO");
}

}  // namespace

namespace {

// [c] = [prod of factor norms] iff c * prod is a rational square; the
// perfect-square test keeps this check factorization-free even when the
// product has hundreds of digits.
void check_scalar_matches_sn(const Rat& c, const CDDecomposition& cd) {
    Rat prod(1);
    for (const auto& f : cd.factors) prod *= f.norm;
    invariant(rat_sqrt(c * prod).has_value(), errc::proportionality_failure,
              "pair-operator scalar disagrees with the spinor norm");
}

}  // namespace

LiftResult lift_so_to_sl(const MatQ& g, const CDOptions& opts) {
    check_liftable(g);
    CDDecomposition cd = cd_decompose(g, opts);
    auto raw = pair_product(factor_vectors(cd), g);
    check_scalar_matches_sn(raw.c, cd);

    LiftResult res;
    if (auto s = rat_sqrt(Rat(1) / raw.c)) {
        MatQ h = (*s) * raw.H;
        invariant(wedge_square(h) == g, errc::internal_error,
                  "lift does not wedge back to its input");
        invariant(det(h) == 1, errc::internal_error, "lift is not in SL4");
        sign_normalize(h);
        res.h = h;
        res.field = FieldDescriptor{};
        return res;
    }
    SquareClass sn = spinor_norm_of(cd);
    invariant(!sn.is_trivial(), errc::internal_error,
              "square spinor norm but no rational square root");
    res.obstruction = sn;
    res.field = FieldDescriptor{};
    return res;
}

LiftResult lift_over_quadratic(const MatQ& g, const CDOptions& opts) {
    check_liftable(g);
    CDDecomposition cd = cd_decompose(g, opts);
    auto raw = pair_product(factor_vectors(cd), g);
    check_scalar_matches_sn(raw.c, cd);

    LiftResult res;
    if (auto s = rat_sqrt(Rat(1) / raw.c)) {
        MatQ h = (*s) * raw.H;
        sign_normalize(h);
        res.h = h;
        res.field = FieldDescriptor{};
        return res;
    }
    SquareClass sn = spinor_norm_of(cd);
    Int d = sn.representative();
    auto s = quad_sqrt_of_rational(Rat(1) / raw.c, d);
    invariant(s.has_value(), errc::internal_error,
              "1/c is not a square over Q(sqrt SN)");
    MatQuad h = (*s) * to_quad(raw.H, d);
    MatQuad gq = to_quad(g, d);
    invariant(wedge_square(h) == gq, errc::internal_error,
              "quadratic lift does not wedge back to its input");
    invariant(det(h) == QuadScalar(d, Rat(1), Rat(0)), errc::internal_error,
              "quadratic lift is not in SL4");
    sign_normalize(h);
    res.h_quad = h;
    res.field = FieldDescriptor{true, d};
    return res;
}

IsogenyData principal_isogeny_data(const MatQ& phi, const CDOptions& opts) {
    if (!is_isometry(phi)) fail(errc::not_an_isometry, "input is not in O(Lambda)(Q)");
    IsogenyData data;
    MatQ target = phi;
    Rat ddeg = admissibility_degree(phi);
    if (ddeg == -1) {
        target = poincare_duality() * phi;
        data.dualized = true;
    }

    CDDecomposition cd = cd_decompose(target, opts);
    auto raw = pair_product(factor_vectors(cd), target);
    SquareClass sn = spinor_norm_of(cd);
    Int m = sn.representative();

    if (m == 1) {
        auto s = rat_sqrt(Rat(1) / raw.c);
        invariant(s.has_value(), errc::internal_error,
                  "trivial spinor norm but no rational square root");
        MatQ h = (*s) * raw.H;
        sign_normalize(h);
        invariant(wedge_square(h) == target, errc::internal_error,
                  "unit-degree lift does not wedge back");
        data.g0 = h;
        data.n = 1;
        data.sign = 1;
        return data;
    }

    // g = t sqrt(m) H with t^2 = 1/(c m); the Galois conjugate is -g, so
    // g0 = sqrt(m) g = m t H is rational with wedge_square(g0) = m * target.
    Rat tm = Rat(1) / (raw.c * Rat(m));
    auto t = rat_sqrt(tm);
    if (!t)
        fail(errc::galois_test_failure,
             "sqrt(m) g is not rational: engine scalar does not match SN");
    Rat scale = Rat(m) * (*t);
    Rat mrat = Rat(m);
    MatQ g0 = scale * raw.H;
    invariant(wedge_square(g0) == mrat * target, errc::internal_error,
              "isogeny matrix does not satisfy wedge_square(g0) = m target");
    invariant(det(g0) == mrat * mrat, errc::internal_error,
              "isogeny matrix determinant is not n^2");
    sign_normalize(g0);
    data.g0 = g0;
    data.sign = (m > 0) ? 1 : -1;
    data.n = abs(m);
    return data;
}

std::optional<long> quad_ell_valuation(const QuadScalar& x, const Int& ell) {
    if (x.is_zero()) return std::nullopt;
    const Rat& a = x.a();
    const Rat& b = x.b();
    if (b == 0) return ell_valuation(a, ell);
    const Int& d = x.d();
    {
        auto vd = ell_valuation(Rat(d), ell);
        if (!vd || *vd != 0 || !is_quadratic_residue(d, ell))
            fail(errc::bad_input,
                 "sqrt(" + d.get_str() + ") does not embed into Z_" + ell.get_str());
    }
    if (a == 0) return *ell_valuation(b, ell);
    long va = *ell_valuation(a, ell);
    long vb = *ell_valuation(b, ell);
    if (va != vb) return std::min(va, vb);

    // Equal valuations: v(x) = v(norm) - v(conjugate); at least one of x,
    // conj(x) has valuation exactly mu = min(va, vb), so approximating
    // sqrt(d) to precision K = v(norm) - mu + 1 decides it.
    Rat norm = x.norm();
    long vn = *ell_valuation(norm, ell);
    long mu = va;
    long K = vn - mu + 1;
    // Hensel root of u^2 = d, canonical branch: smaller residue root
    Int r0 = d % ell;
    if (r0 < 0) r0 += ell;
    Int root = 0;
    for (Int t = 1; t < ell; ++t)
        if ((t * t - r0) % ell == 0) { root = t; break; }
    if (root > ell - root) root = ell - root;
    Int mod = ell;
    Int u = root;
    while (true) {
        long prec = 1;
        Int mm = mod;
        while (mm > ell) { mm /= ell; ++prec; }
        if (prec >= K) break;
        // Newton: u <- (u + d/u) / 2 mod mod^2
        Int mod2 = mod * mod;
        Int uinv, two_inv;
        Int two = 2;
        mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), mod2.get_mpz_t());
        mpz_invert(two_inv.get_mpz_t(), two.get_mpz_t(), mod2.get_mpz_t());
        u = ((u + d * uinv) % mod2) * two_inv % mod2;
        if (u < 0) u += mod2;
        mod = mod2;
    }
    Rat w = a + b * Rat(u);
    auto vw = ell_valuation(w, ell);
    if (vw && *vw < K) return *vw;
    // x is the large-valuation branch; the conjugate carries mu
    return vn - mu;
}

namespace {

LocalIntegralityReport quad_local_report(const MatQuad& M, const Int& ell) {
    LocalIntegralityReport rep;
    rep.prime = ell;
    long minv = 0;
    bool first = true;
    auto scan = [&](const MatQuad& X) {
        for (const auto& x : X.data()) {
            auto v = quad_ell_valuation(x, ell);
            if (!v) continue;
            if (first || *v < minv) minv = *v;
            first = false;
        }
    };
    scan(M);
    rep.min_valuation = first ? 0 : minv;
    rep.integral = rep.min_valuation >= 0;
    MatQuad inv = inverse(M);
    long minv_inv = 0;
    bool first_inv = true;
    for (const auto& x : inv.data()) {
        auto v = quad_ell_valuation(x, ell);
        if (!v) continue;
        if (first_inv || *v < minv_inv) minv_inv = *v;
        first_inv = false;
    }
    rep.unimodular = rep.integral && (first_inv || minv_inv >= 0);
    return rep;
}

}  // namespace

PrimeToEllLift prime_to_ell_lift(const MatQ& phi, const Int& ell,
                                 const CDOptions& opts) {
    if (ell == 2) fail(errc::ell_is_two, "prime-to-ell lift needs ell odd");
    if (!is_isometry(phi)) fail(errc::not_an_isometry, "input is not in O(Lambda)(Q)");
    if (admissibility_degree(phi) != 1)
        fail(errc::not_admissible, "prime-to-ell lift needs determinant 1");
    LocalIntegralityReport in_rep = local_report(phi, ell);
    if (!in_rep.unimodular)
        fail(errc::not_ell_integral,
             "input is not Z_(ell)-unimodular at ell = " + ell.get_str());

    SquareClass sn = spinor_norm(phi, opts);
    Int m = sn.representative();
    auto unit_square = [&](const Int& rep) {
        if (rep % ell == 0) return false;
        if (rep == 1) return true;
        return class_in_local_units(SquareClass(rep), LocalUnits::ZellUnits(ell));
    };
    int sign;
    Int mm;  // spinor norm of the lifted side
    if (unit_square(m)) {
        sign = 1;
        mm = m;
    } else if (unit_square(squarefree_part(-m))) {
        sign = -1;
        mm = squarefree_part(-m);
    } else {
        fail(errc::obstruction_at_ell,
             "neither +-" + m.get_str() + " is a square in Z_" + ell.get_str() +
                 "^*: no Z_ell lift of either sign");
    }

    MatQ target = (sign == 1) ? phi : -phi;
    PrimeToEllLift out;
    if (mm == 1) {
        LiftResult lr = lift_so_to_sl(target, opts);
        invariant(lr.h.has_value(), errc::internal_error,
                  "trivial SN side failed to lift rationally");
        out.report = local_report(*lr.h, ell);
        out.lift = std::move(lr);
        out.lift.sign = sign;
        return out;
    }
    LiftResult lr = lift_over_quadratic(target, opts);
    invariant(lr.h_quad.has_value(), errc::internal_error,
              "quadratic lift missing for nontrivial SN");
    out.report = quad_local_report(*lr.h_quad, ell);
    out.lift = std::move(lr);
    out.lift.sign = sign;
    return out;
}

std::vector<Matrix<Rat>> brute_force_lifts(const MatQ& g, int lo, int hi) {
    // exhaustive search with row pruning; g rows are checked as soon as the
    // participating h rows are fixed
    std::vector<MatQ> found;
    long gi[6][6];
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const Rat& x = g.at(i, j);
            if (!is_integer(x) || !x.get_num().fits_slong_p())
                fail(errc::bad_input, "brute-force oracle expects small integral g");
            gi[i][j] = x.get_num().get_si();
        }
    std::array<long, 4> r1{}, r2{}, r3{}, r4{};
    auto minor_ok = [&](const std::array<long, 4>& ra, const std::array<long, 4>& rb,
                        int grow) {
        for (int col = 0; col < 6; ++col) {
            int i = kPairs[col][0], j = kPairs[col][1];
            long m = ra[static_cast<size_t>(i)] * rb[static_cast<size_t>(j)] -
                     ra[static_cast<size_t>(j)] * rb[static_cast<size_t>(i)];
            if (m != gi[grow][col]) return false;
        }
        return true;
    };
    auto iterate_row = [&](std::array<long, 4>& row, auto&& body) {
        for (int a = lo; a <= hi; ++a)
            for (int b = lo; b <= hi; ++b)
                for (int c = lo; c <= hi; ++c)
                    for (int d = lo; d <= hi; ++d) {
                        row = {a, b, c, d};
                        body();
                    }
    };
    iterate_row(r1, [&] {
        iterate_row(r2, [&] {
            if (!minor_ok(r1, r2, 0)) return;  // (12)-row
            iterate_row(r3, [&] {
                if (!minor_ok(r1, r3, 1)) return;  // (13)-row
                if (!minor_ok(r2, r3, 3)) return;  // (23)-row
                iterate_row(r4, [&] {
                    if (!minor_ok(r1, r4, 2)) return;  // (14)-row
                    if (!minor_ok(r2, r4, 4)) return;  // (24)-row
                    if (!minor_ok(r3, r4, 5)) return;  // (34)-row
                    MatQ h(4, 4, Rat(0));
                    for (int j = 0; j < 4; ++j) {
                        h.at(0, j) = Rat(r1[static_cast<size_t>(j)]);
                        h.at(1, j) = Rat(r2[static_cast<size_t>(j)]);
                        h.at(2, j) = Rat(r3[static_cast<size_t>(j)]);
                        h.at(3, j) = Rat(r4[static_cast<size_t>(j)]);
                    }
                    found.push_back(h);
                });
            });
        });
    });
    return found;
}

}  // namespace wedgelift
