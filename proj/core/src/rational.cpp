#include "wedgelift/rational.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace wedgelift {

Rat parse_rat(const std::string& s) {
    if (s.empty()) fail(errc::bad_input, "empty rational literal");
    size_t slash = s.find('/');
    auto check_int = [&](const std::string& part) {
        if (part.empty()) fail(errc::bad_input, "bad rational literal: " + s);
        size_t k = (part[0] == '-') ? 1 : 0;
        if (k == part.size()) fail(errc::bad_input, "bad rational literal: " + s);
        for (; k < part.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(part[k])))
                fail(errc::bad_input, "bad rational literal: " + s);
    };
    if (slash == std::string::npos) {
        check_int(s);
        return Rat(Int(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check_int(num);
    check_int(den);
    Int d(den);
    if (d <= 0) fail(errc::bad_input, "denominator must be positive: " + s);
    return make_rat(Int(num), d);
}

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<Rat> rat_sqrt(const Rat& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return Rat(0);
    const Int& num = q.get_num();
    const Int& den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return make_rat(rn, rd);
}

namespace {

// Pollard-Brent rho: a nontrivial factor of an odd composite m.
Int pollard_brent(const Int& m, unsigned long seed) {
    gmp_randclass rnd(gmp_randinit_default);
    rnd.seed(seed);
    while (true) {
        Int y = rnd.get_z_range(m - 3) + 2;
        Int c = rnd.get_z_range(m - 1) + 1;
        Int x = y, q = 1, g = 1, ys = y;
        const long step = 128;
        long r = 1;
        while (g == 1) {
            x = y;
            for (long i = 0; i < r; ++i) y = (y * y + c) % m;
            long k = 0;
            while (k < r && g == 1) {
                ys = y;
                long lim = std::min(step, r - k);
                for (long i = 0; i < lim; ++i) {
                    y = (y * y + c) % m;
                    Int d = x - y;
                    if (d < 0) d = -d;
                    q = q * d % m;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), m.get_mpz_t());
                k += step;
            }
            r *= 2;
        }
        if (g == m) {
            // backtrack one step at a time
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % m;
                Int d = x - ys;
                if (d < 0) d = -d;
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
            }
        }
        if (g != m) return g;
        // cycle degenerated; retry with fresh parameters
    }
}

}  // namespace

Int squarefree_part(const Int& n) {
    if (n == 0) fail(errc::zero_input, "squarefree part of zero");
    Int m = abs(n);
    Int result = (n < 0) ? Int(-1) : Int(1);
    // trial division for the small primes, then probabilistic splitting
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e % 2 == 1) result *= p;
    }
    Int p = 41;
    while (p * p <= m && p < 100000) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            if (e % 2 == 1) result *= p;
        }
        p += 2;
    }
    if (m == 1) return result;
    if (p * p > m) return result * m;  // leftover prime
    // the remainder is 10+ digits with no small factors; factor it fully
    // with rho splits, folding exponents mod 2 via a multiset reduction
    std::vector<Int> stack{m};
    std::vector<Int> primes;
    while (!stack.empty()) {
        Int cur = stack.back();
        stack.pop_back();
        if (cur == 1) continue;
        if (mpz_probab_prime_p(cur.get_mpz_t(), 30) != 0) {
            primes.push_back(cur);
            continue;
        }
        if (mpz_perfect_square_p(cur.get_mpz_t()) != 0) {
            Int root;
            mpz_sqrt(root.get_mpz_t(), cur.get_mpz_t());
            stack.push_back(root);
            stack.push_back(root);
            continue;
        }
        Int f = pollard_brent(cur, 0x9e3779b97f4a7c15ULL + primes.size());
        stack.push_back(f);
        stack.push_back(cur / f);
    }
    std::sort(primes.begin(), primes.end());
    for (size_t i = 0; i < primes.size();) {
        size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        if ((j - i) % 2 == 1) result *= primes[i];
        i = j;
    }
    return result;
}

}  // namespace wedgelift
