#include "wedgelift/witt.hpp"

#include "wedgelift/local.hpp"

namespace wedgelift {

namespace {

Int mod_reduce(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

Int pow_int(const Int& base, int e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return out;
}

long padic_val_capped(const Int& x, const Int& p, int cap) {
    if (x == 0) return cap;
    Int m = x;
    long v = 0;
    while (v < cap && m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

}  // namespace

WittRing::WittRing(const Int& p_, int s_, int N_) : p(p_), s(s_), N(N_) {
    if (p == 2) fail(errc::ell_is_two, "Witt rings here require an odd prime");
    if (p < 3 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        fail(errc::bad_input, "Witt prime must be an odd prime, got " + p.get_str());
    if (s != 1 && s != 2)
        fail(errc::bad_input, "residue degree must be 1 or 2");
    if (N < 1) fail(errc::bad_input, "Witt precision must be >= 1");
    pN = pow_int(p, N);
    if (s == 2) {
        // canonical nonresidue: -1 when p = 3 mod 4, else the smallest
        // positive nonresidue
        if (mod_reduce(p, 4) == 3) {
            r = pN - 1;  // -1, lifted canonically: the modulus is u^2 + 1
        } else {
            Int cand = 2;
            while (is_quadratic_residue(cand, p)) ++cand;
            r = cand;
        }
    }
}

WittScalar::WittScalar(const WittRing& ring, const Int& c0, const Int& c1)
    : ring_(ring), c0_(c0), c1_(c1) {
    reduce();
    if (ring_.s == 1 && c1_ != 0)
        fail(errc::bad_input, "u-coefficient in a degree-1 Witt ring");
}

void WittScalar::reduce() {
    c0_ = mod_reduce(c0_, ring_.pN);
    c1_ = mod_reduce(c1_, ring_.pN);
}

WittScalar WittScalar::gen(const WittRing& R) {
    if (R.s != 2) fail(errc::bad_input, "generator u needs s = 2");
    return WittScalar(R, 0, 1);
}

bool WittScalar::is_unit() const {
    return c0_ % ring_.p != 0 || c1_ % ring_.p != 0;
}

int WittScalar::valuation() const {
    long v0 = padic_val_capped(c0_, ring_.p, ring_.N);
    long v1 = padic_val_capped(c1_, ring_.p, ring_.N);
    return static_cast<int>(std::min(v0, v1));
}

WittScalar WittScalar::operator-() const {
    return WittScalar(ring_, ring_.pN - c0_, ring_.pN - c1_);
}

static void check_rings(const WittScalar& x, const WittScalar& y) {
    if (x.ring() != y.ring())
        fail(errc::witt_mismatch, "Witt scalars from different rings");
}

WittScalar operator+(const WittScalar& x, const WittScalar& y) {
    check_rings(x, y);
    return WittScalar(x.ring(), x.c0() + y.c0(), x.c1() + y.c1());
}

WittScalar operator-(const WittScalar& x, const WittScalar& y) {
    check_rings(x, y);
    return WittScalar(x.ring(), x.c0() - y.c0(), x.c1() - y.c1());
}

WittScalar operator*(const WittScalar& x, const WittScalar& y) {
    check_rings(x, y);
    const WittRing& R = x.ring();
    if (R.s == 1) return WittScalar(R, x.c0() * y.c0(), 0);
    // (a0 + a1 u)(b0 + b1 u), u^2 = r
    Int c0 = x.c0() * y.c0() + R.r * x.c1() * y.c1();
    Int c1 = x.c0() * y.c1() + x.c1() * y.c0();
    return WittScalar(R, c0, c1);
}

bool operator==(const WittScalar& x, const WittScalar& y) {
    check_rings(x, y);
    return x.c0() == y.c0() && x.c1() == y.c1();
}

WittScalar WittScalar::inverse() const {
    if (!is_unit()) fail(errc::singular_input, "inverse of a non-unit Witt scalar");
    if (ring_.s == 1) {
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), c0_.get_mpz_t(), ring_.pN.get_mpz_t()) == 0)
            fail(errc::internal_error, "unit without modular inverse");
        return WittScalar(ring_, inv, 0);
    }
    // x * conj(x) = c0^2 - r c1^2 lies in Z/p^N and is a unit
    Int n = mod_reduce(c0_ * c0_ - ring_.r * c1_ * c1_, ring_.pN);
    Int ninv;
    if (mpz_invert(ninv.get_mpz_t(), n.get_mpz_t(), ring_.pN.get_mpz_t()) == 0)
        fail(errc::internal_error, "unit norm without modular inverse");
    return WittScalar(ring_, c0_ * ninv, -c1_ * ninv);
}

WittScalar WittScalar::frobenius() const {
    if (ring_.s == 1) return *this;
    return WittScalar(ring_, c0_, ring_.pN - c1_);
}

WittScalar WittScalar::to_precision(int M) const {
    WittRing R(ring_.p, ring_.s, M);
    return WittScalar(R, c0_, c1_);
}

std::optional<WittScalar> WittScalar::div_p_ambient() const {
    if (ring_.N <= 1) return std::nullopt;
    if (c0_ % ring_.p != 0 || c1_ % ring_.p != 0) return std::nullopt;
    WittRing R(ring_.p, ring_.s, ring_.N - 1);
    return WittScalar(R, c0_ / ring_.p, c1_ / ring_.p);
}

std::string WittScalar::str() const {
    if (ring_.s == 1) return c0_.get_str();
    return c0_.get_str() + "+" + c1_.get_str() + "*u";
}

WittScalar teichmueller(const WittRing& ring, const WittScalar& residue_elt) {
    WittScalar r0 = residue_elt.to_precision(1);
    if (r0.is_zero()) fail(errc::zero_input, "Teichmueller lift of zero");
    WittScalar x(ring, r0.c0(), r0.c1());
    // x -> x^(p^s) gains at least one p-digit of agreement with the
    // Teichmueller representative per iteration
    Int q = ring.p;
    if (ring.s == 2) q = q * q;
    for (int it = 0; it < ring.N + 1; ++it) {
        WittScalar y = WittScalar::one(ring);
        WittScalar base = x;
        Int e = q;
        while (e > 0) {
            if (mod_reduce(e, 2) == 1) y = y * base;
            base = base * base;
            e /= 2;
        }
        x = y;
    }
    return x;
}

bool witt_residue_is_square(const WittScalar& x) {
    if (!x.is_unit()) fail(errc::non_unit_class, "residue square test of a non-unit");
    const WittRing& R = x.ring();
    WittRing Rres = R.residue_ring();
    WittScalar r = x.residue();
    Int q = R.p;
    if (R.s == 2) q = q * q;
    Int e = (q - 1) / 2;
    WittScalar acc = WittScalar::one(Rres);
    WittScalar base = r;
    while (e > 0) {
        if (mod_reduce(e, 2) == 1) acc = acc * base;
        base = base * base;
        e /= 2;
    }
    return acc == WittScalar::one(Rres);
}

std::optional<WittScalar> witt_sqrt(const WittScalar& x) {
    if (!x.is_unit()) return std::nullopt;
    if (!witt_residue_is_square(x)) return std::nullopt;
    const WittRing& R = x.ring();
    // residue square root by exhaustive search; the residue fields in play
    // are tiny (q <= p^2 for small p)
    WittRing Rres = R.residue_ring();
    WittScalar target = x.residue();
    std::optional<WittScalar> root;
    for (Int c0 = 0; c0 < R.p && !root; ++c0)
        for (Int c1 = 0; c1 < (R.s == 2 ? R.p : Int(1)); ++c1) {
            WittScalar cand(Rres, c0, c1);
            if (cand * cand == target) {
                root = cand;
                break;
            }
        }
    if (!root) fail(errc::internal_error, "square residue without a root");
    // Newton: s -> (s + x/s)/2, quadratic convergence; p odd so 2 is a unit
    WittScalar s(R, root->c0(), root->c1());
    WittScalar two = WittScalar(R, 2, 0);
    WittScalar half = two.inverse();
    for (int it = 0; it < R.N + 2; ++it)
        s = half * (s + x * s.inverse());
    if (!(s * s == x)) fail(errc::internal_error, "Hensel sqrt failed to converge");
    return s;
}

WittScalar xi_with_power_minus_one(const WittRing& ring_s2) {
    if (ring_s2.s != 2)
        fail(errc::bad_input, "xi lives in W(F_{p^2}); pass an s = 2 ring");
    const Int& p = ring_s2.p;
    WittRing Rres = ring_s2.residue_ring();
    WittScalar minus_one = -WittScalar::one(Rres);
    auto pow_res = [&](const WittScalar& b, Int e) {
        WittScalar acc = WittScalar::one(Rres);
        WittScalar base = b;
        while (e > 0) {
            if (mod_reduce(e, 2) == 1) acc = acc * base;
            base = base * base;
            e /= 2;
        }
        return acc;
    };
    for (Int c1 = 0; c1 < p; ++c1)
        for (Int c0 = 0; c0 < p; ++c0) {
            if (c0 == 0 && c1 == 0) continue;
            WittScalar cand(Rres, c0, c1);
            if (pow_res(cand, p - 1) == minus_one) {
                WittScalar xi = teichmueller(ring_s2, cand);
                // exact check at precision N
                WittScalar acc = WittScalar::one(ring_s2);
                for (Int k = 0; k < p - 1; ++k) acc = acc * xi;
                invariant(acc == -WittScalar::one(ring_s2), errc::internal_error,
                          "Teichmueller xi lost the xi^(p-1) = -1 identity");
                return xi;
            }
        }
    fail(errc::internal_error, "no xi with xi^(p-1) = -1 in F_{p^2}");
}

}  // namespace wedgelift
