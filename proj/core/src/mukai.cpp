#include "wedgelift/mukai.hpp"

#include "wedgelift/lift.hpp"

namespace wedgelift {

MukaiVector MukaiVector::zero() {
    return MukaiVector{Rat(0), VecQ(6, Rat(0)), Rat(0)};
}

std::vector<Rat> MukaiVector::coords() const {
    std::vector<Rat> v(8, Rat(0));
    v[0] = r;
    for (int i = 0; i < 6; ++i) v[static_cast<size_t>(i + 1)] = c[static_cast<size_t>(i)];
    v[7] = chi;
    return v;
}

MukaiVector MukaiVector::from_coords(const std::vector<Rat>& v8) {
    if (v8.size() != 8) fail(errc::bad_input, "Mukai vectors have 8 coordinates");
    MukaiVector m = zero();
    m.r = v8[0];
    for (int i = 0; i < 6; ++i) m.c[static_cast<size_t>(i)] = v8[static_cast<size_t>(i + 1)];
    m.chi = v8[7];
    return m;
}

Rat mukai_pairing(const MukaiVector& u, const MukaiVector& v) {
    return lambda_pairing(u.c, v.c) - u.r * v.chi - v.r * u.chi;
}

MatQ gram_mukai() {
    MatQ G(8, 8, Rat(0));
    MatQ GL = gram_lambda();
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) G.at(i + 1, j + 1) = GL.at(i, j);
    G.at(0, 7) = Rat(-1);
    G.at(7, 0) = Rat(-1);
    return G;
}

bool is_mukai_isometry(const MatQ& Phi8) {
    if (Phi8.rows() != 8 || Phi8.cols() != 8) return false;
    MatQ G = gram_mukai();
    return transpose(Phi8) * G * Phi8 == G;
}

BField BField::from_vector(const VecQ& b) {
    if (b.size() != 6) fail(errc::bad_input, "B-fields have 6 coordinates");
    Int order = 1;
    for (const auto& x : b) {
        Int d = x.get_den();
        Int g;
        mpz_gcd(g.get_mpz_t(), order.get_mpz_t(), d.get_mpz_t());
        order = order / g * d;
    }
    return BField{b, order};
}

BField BField::normalized(std::vector<Int>* shift) const {
    VecQ nb(6);
    if (shift) shift->assign(6, Int(0));
    for (int i = 0; i < 6; ++i) {
        Rat x = b[static_cast<size_t>(i)];
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
        nb[static_cast<size_t>(i)] = x - Rat(fl);
        if (shift) (*shift)[static_cast<size_t>(i)] = fl;
    }
    return BField::from_vector(nb);
}

MatQ exp_b(const BField& B) { return exp_b(B.b); }

MatQ exp_b(const VecQ& b) {
    if (b.size() != 6) fail(errc::bad_input, "B-fields have 6 coordinates");
    MatQ E = MatQ::identity(8, Rat(1));
    MatQ G = gram_lambda();
    VecQ Gb = mat_apply(G, b);
    for (int i = 0; i < 6; ++i) {
        E.at(i + 1, 0) = b[static_cast<size_t>(i)];              // c += r B
        E.at(7, i + 1) = Gb[static_cast<size_t>(i)];             // chi += q(B, c)
    }
    E.at(7, 0) = lambda_pairing(b, b) / Rat(2);                  // chi += r q(B,B)/2
    return E;
}

TwistedLattice TwistedLattice::of(const BField& B) {
    return TwistedLattice{B, exp_b(B)};
}

bool TwistedLattice::contains(const std::vector<Rat>& v8) const {
    std::vector<Rat> x = solve(basis, v8);
    for (const auto& c : x)
        if (!is_integer(c)) return false;
    return true;
}

ReflexiveTwist reflexive_twisted_isometry(const std::vector<Rat>& b_in) {
    Rat nb = lambda_pairing(b_in, b_in);
    if (nb == 0) fail(errc::isotropic_vector, "reflexive isometry needs q(b,b) != 0");
    ReflexiveTwist t;
    t.b = primitivize(b_in);
    std::vector<Rat> b(6);
    for (int i = 0; i < 6; ++i) b[static_cast<size_t>(i)] = Rat(t.b[static_cast<size_t>(i)]);
    Rat q = lambda_pairing(b, b);
    t.n = q / 2;
    invariant(is_integer(t.n), errc::internal_error, "odd norm in the even lattice");
    t.brauer_order_bound = abs(t.n.get_num());
    t.psi = reflection_matrix(b);

    VecQ Bvec(6);
    for (int i = 0; i < 6; ++i) Bvec[static_cast<size_t>(i)] = Rat(2) * b[static_cast<size_t>(i)] / q;
    t.B = BField::from_vector(Bvec);
    t.Bprime = BField::from_vector(mat_apply(-t.psi, Bvec));
    invariant(t.B.order == t.brauer_order_bound, errc::internal_error,
              "B-field order of a primitive reflection vector must be |n|");

    // Mukai extension (r, c, chi) -> (n chi, -psi c, r/n); an involution
    // that preserves the Mukai pairing and restricts to -psi on the middle
    // block.
    MatQ tp(8, 8, Rat(0));
    tp.at(0, 7) = t.n;
    tp.at(7, 0) = Rat(1) / t.n;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) tp.at(i + 1, j + 1) = -t.psi.at(i, j);
    t.tilde_psi = tp;
    invariant(is_mukai_isometry(tp), errc::internal_error,
              "Mukai extension lost the pairing");

    MatQ EB = exp_b(t.B);
    MatQ EBp = exp_b(t.Bprime);
    t.change_of_basis = inverse(EBp) * tp * EB;
    bool ok = true;
    for (const auto& x : t.change_of_basis.data())
        if (!is_integer(x)) ok = false;
    if (ok) {
        MatQ inv = inverse(t.change_of_basis);
        for (const auto& x : inv.data())
            if (!is_integer(x)) ok = false;
    }
    t.integral = ok;
    return t;
}

bool is_filtered(const MatQ& Phi8, const BField& B, const BField& Bprime) {
    if (!is_mukai_isometry(Phi8))
        fail(errc::not_an_isometry, "filtered test needs a Mukai isometry");
    // Gr^2: (0,0,1) must map to (0,0,1) on the nose
    std::vector<Rat> delta(8, Rat(0));
    delta[7] = Rat(1);
    if (mat_apply(Phi8, delta) != delta) return false;
    // F^1 into F^1: the twisted lattice of B has exp(B) e_1..e_7 as a basis
    // of its r = 0 part; images must have r = 0 and lie in the B' lattice
    TwistedLattice LB = TwistedLattice::of(B);
    TwistedLattice LBp = TwistedLattice::of(Bprime);
    for (int j = 1; j < 8; ++j) {
        std::vector<Rat> g(8, Rat(0));
        for (int i = 0; i < 8; ++i) g[static_cast<size_t>(i)] = LB.basis.at(i, j);
        std::vector<Rat> y = mat_apply(Phi8, g);
        if (y[0] != 0) return false;
        if (!LBp.contains(y)) return false;
    }
    return true;
}

ZigzagCertificate zigzag_factorize(const MatQ& phi, const std::vector<Int>& primes,
                                   const CDOptions& opts) {
    if (!is_isometry(phi)) fail(errc::not_an_isometry, "input is not in O(Lambda)(Q)");
    if (admissibility_degree(phi) != 1)
        fail(errc::not_admissible, "zig-zag factorization needs determinant 1");
    CDDecomposition cd = cd_decompose(phi, opts);
    ZigzagCertificate cert;
    cert.composite = phi;
    for (const auto& f : cd.factors) {
        std::vector<Rat> b(6);
        for (int i = 0; i < 6; ++i) b[static_cast<size_t>(i)] = Rat(f.b[static_cast<size_t>(i)]);
        ReflexiveTwist t = reflexive_twisted_isometry(b);
        invariant(t.integral, errc::integrality_violation,
                  "reflexive step failed twisted-lattice integrality");
        ZigzagStep step;
        step.b = f.b;
        step.n = t.n;
        step.B = t.B.b;
        step.Bprime = t.Bprime.b;
        step.brauer_order_bound = t.brauer_order_bound;
        cert.steps.push_back(std::move(step));
    }
    for (const auto& ell : primes)
        cert.prime_to[ell] = is_prime_to_ell_zigzag(cert, ell);
    return cert;
}

bool is_prime_to_ell_zigzag(const ZigzagCertificate& cert, const Int& ell) {
    for (const auto& s : cert.steps) {
        Int n = s.n.get_num();
        if (n % ell == 0) return false;
    }
    return true;
}

bool verify_zigzag(const ZigzagCertificate& cert, std::string* why) {
    auto reject = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (!is_isometry(cert.composite)) return reject("composite is not an isometry");
    MatQ M = MatQ::identity(6, Rat(1));
    for (size_t k = 0; k < cert.steps.size(); ++k) {
        const auto& s = cert.steps[k];
        std::vector<Rat> b(6);
        for (int i = 0; i < 6; ++i) b[static_cast<size_t>(i)] = Rat(s.b[static_cast<size_t>(i)]);
        Rat q = lambda_pairing(b, b);
        if (q == 0) return reject("isotropic step vector");
        if (s.n != q / 2) return reject("step n does not match q(b,b)/2");
        ReflexiveTwist t = reflexive_twisted_isometry(b);
        if (t.B.b != s.B) return reject("step B-field mismatch");
        if (t.Bprime.b != s.Bprime) return reject("step B'-field mismatch");
        if (!t.integral) return reject("step failed twisted integrality");
        M = reflection_matrix(b) * M;  // steps[0] applies first
    }
    if (M != cert.composite) return reject("steps do not recompose to the composite");
    for (const auto& [ell, flag] : cert.prime_to) {
        if (flag != is_prime_to_ell_zigzag(cert, ell))
            return reject("prime-to flag inconsistent with step norms at " +
                          ell.get_str());
        if (flag) {
            LocalIntegralityReport rep = local_report(cert.composite, ell);
            if (!rep.unimodular)
                return reject("prime-to-" + ell.get_str() +
                              " certificate with non-unimodular composite");
        }
    }
    return true;
}

}  // namespace wedgelift
