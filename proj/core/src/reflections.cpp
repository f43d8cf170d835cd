#include "wedgelift/reflections.hpp"

#include <algorithm>
#include <random>

#include "scherk_impl.hpp"

namespace wedgelift {

namespace {

// Deterministic enumeration of integer vectors by increasing sup-norm.
// Within a shell the order is lexicographic; a nonzero seed shuffles the
// shells that are small enough to materialize (the tie-breaking knob used by
// the spinor-norm well-definedness tests).
class ShellEnumerator {
public:
    ShellEnumerator(int max_height, unsigned long seed)
        : max_height_(max_height), seed_(seed) {}

    template <class F>
    bool for_each(F&& f) const {
        for (int h = 1; h <= max_height_; ++h) {
            if (seed_ != 0 && h <= kShuffleHeight) {
                std::vector<std::vector<Rat>> shell;
                enumerate_shell(h, [&](const std::vector<Rat>& v) {
                    shell.push_back(v);
                    return false;
                });
                std::mt19937_64 rng(seed_ * 1000003ULL +
                                    static_cast<unsigned long>(h));
                for (size_t i = shell.size(); i > 1; --i) {
                    size_t j = static_cast<size_t>(rng() % i);
                    std::swap(shell[i - 1], shell[j]);
                }
                for (const auto& v : shell)
                    if (f(v)) return true;
            } else {
                if (enumerate_shell(h, f)) return true;
            }
        }
        return false;
    }

private:
    static constexpr int kShuffleHeight = 3;

    template <class F>
    bool enumerate_shell(int h, F&& f) const {
        std::vector<long> a(6, -h);
        std::vector<Rat> v(6);
        while (true) {
            long sup = 0;
            for (long x : a) sup = std::max(sup, std::abs(x));
            if (sup == h) {
                for (int i = 0; i < 6; ++i) v[static_cast<size_t>(i)] = Rat(a[static_cast<size_t>(i)]);
                if (f(v)) return true;
            }
            int k = 5;
            while (k >= 0 && a[static_cast<size_t>(k)] == h) {
                a[static_cast<size_t>(k)] = -h;
                --k;
            }
            if (k < 0) return false;
            ++a[static_cast<size_t>(k)];
        }
    }

    int max_height_;
    unsigned long seed_;
};

struct RatPolicy {
    ShellEnumerator shells;
    // empty: plain Q; set: prime-to-ell (norms and pivots must be ell-units)
    std::optional<Int> ell;

    bool unit(const Rat& x) const {
        if (x == 0) return false;
        if (!ell) return true;
        auto v = ell_valuation(x, *ell);
        return v && *v == 0;
    }

    void normalize(std::vector<Rat>& b) const {
        std::vector<Int> p = primitivize(b);
        for (int i = 0; i < 6; ++i) b[static_cast<size_t>(i)] = Rat(p[static_cast<size_t>(i)]);
    }

    template <class F>
    bool for_each_candidate(F&& f) const {
        return shells.for_each(std::forward<F>(f));
    }
};

}  // namespace

std::vector<Int> primitivize(const std::vector<Rat>& v) {
    if (v.size() != 6) fail(errc::bad_input, "lambda vectors have 6 coordinates");
    Int lcm_den = 1;
    for (const auto& x : v) {
        Int d = x.get_den();
        Int g;
        mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
        lcm_den = lcm_den / g * d;
    }
    std::vector<Int> w(6);
    Int content = 0;
    for (int i = 0; i < 6; ++i) {
        Rat scaled = v[static_cast<size_t>(i)] * Rat(lcm_den);
        w[static_cast<size_t>(i)] = scaled.get_num();
        Int g;
        mpz_gcd(g.get_mpz_t(), content.get_mpz_t(),
                w[static_cast<size_t>(i)].get_mpz_t());
        content = g;
    }
    if (content == 0) fail(errc::bad_input, "primitivize of the zero vector");
    int lead = -1;
    for (int i = 0; i < 6; ++i)
        if (w[static_cast<size_t>(i)] != 0) { lead = i; break; }
    Int sign = (w[static_cast<size_t>(lead)] < 0) ? Int(-1) : Int(1);
    for (auto& x : w) x /= (content * sign);
    return w;
}

std::vector<Rat> reflect(const std::vector<Rat>& b, const std::vector<Rat>& x) {
    Rat nb = lambda_pairing(b, b);
    if (nb == 0) fail(errc::isotropic_vector, "reflection along an isotropic vector");
    Rat coef = Rat(2) * lambda_pairing(x, b) / nb;
    std::vector<Rat> out = x;
    for (int i = 0; i < 6; ++i) out[static_cast<size_t>(i)] -= coef * b[static_cast<size_t>(i)];
    return out;
}

MatQ reflection_matrix(const std::vector<Rat>& b) {
    return detail::reflection_matrix_generic(b, gram_lambda());
}

MatQ reflection_matrix(const Reflection& r) {
    std::vector<Rat> b(6);
    for (int i = 0; i < 6; ++i) b[static_cast<size_t>(i)] = Rat(r.b[static_cast<size_t>(i)]);
    return reflection_matrix(b);
}

MatQ compose_factors(const std::vector<Reflection>& factors) {
    MatQ M = MatQ::identity(6, Rat(1));
    // factors[0] applies first, so it sits rightmost in the product
    for (const auto& f : factors) M = reflection_matrix(f) * M;
    return M;
}

namespace {

CDDecomposition run_decomposition(const MatQ& A, RatPolicy& pol) {
    if (!is_isometry(A)) fail(errc::not_an_isometry, "input is not in O(Lambda)(Q)");
    auto raw = detail::scherk_factor(A, pol, /*max_factors=*/8);
    CDDecomposition cd;
    cd.target = A;
    for (const auto& bv : raw) {
        Reflection r;
        r.b.resize(6);
        std::vector<Rat> br(6);
        for (int i = 0; i < 6; ++i) {
            invariant(is_integer(bv[static_cast<size_t>(i)]), errc::internal_error,
                      "normalized factor is not integral");
            r.b[static_cast<size_t>(i)] = bv[static_cast<size_t>(i)].get_num();
            br[static_cast<size_t>(i)] = bv[static_cast<size_t>(i)];
        }
        r.norm = lambda_pairing(br, br);
        cd.factors.push_back(std::move(r));
    }
    invariant(compose_factors(cd.factors) == A, errc::internal_error,
              "decomposition does not recompose to its input");
    return cd;
}

}  // namespace

CDDecomposition cd_decompose(const MatQ& A, const CDOptions& opts) {
    RatPolicy pol{ShellEnumerator(opts.max_height, opts.seed), std::nullopt};
    return run_decomposition(A, pol);
}

CDDecomposition cd_decompose_prime_to_ell(const MatQ& A, const Int& ell,
                                          const CDOptions& opts) {
    if (ell == 2) fail(errc::ell_is_two, "prime-to-ell decomposition needs ell odd");
    if (ell < 3 || mpz_probab_prime_p(ell.get_mpz_t(), 30) == 0)
        fail(errc::bad_input, "ell must be an odd prime");
    LocalIntegralityReport rep = local_report(A, ell);
    if (!rep.unimodular)
        fail(errc::not_ell_integral,
             "input is not Z_(ell)-unimodular at ell = " + ell.get_str());

    RatPolicy pol{ShellEnumerator(opts.max_height, opts.seed), ell};
    CDDecomposition cd = run_decomposition(A, pol);
    for (const auto& f : cd.factors) {
        auto v = ell_valuation(f.norm, ell);
        invariant(v && *v == 0, errc::internal_error,
                  "prime-to-ell factor with non-unit norm");
    }
    return cd;
}

SquareClass spinor_norm(const MatQ& g, const CDOptions& opts) {
    CDDecomposition cd = cd_decompose(g, opts);
    // reduce factor by factor; the full norm product can be enormous while
    // each individual norm stays factorable
    SquareClass sn;
    for (const auto& f : cd.factors) sn = sn * square_class(f.norm);
    return sn;
}

LocalIntegralityReport local_report(const MatQ& M, const Int& ell) {
    LocalIntegralityReport rep;
    rep.prime = ell;
    long minv = 0;
    bool first = true;
    for (const auto& x : M.data()) {
        auto v = ell_valuation(x, ell);
        if (!v) continue;  // zero entries do not constrain integrality
        if (first || *v < minv) minv = *v;
        first = false;
    }
    rep.min_valuation = first ? 0 : minv;
    rep.integral = rep.min_valuation >= 0;
    rep.unimodular = false;
    if (rep.integral && M.rows() == M.cols()) {
        Rat d = det(M);
        if (d != 0) {
            MatQ inv = inverse(M);
            bool ok = true;
            for (const auto& x : inv.data())
                if (!is_ell_integral(x, ell)) ok = false;
            rep.unimodular = ok;
        }
    }
    return rep;
}

}  // namespace wedgelift
