#include "ambiclass/arith.hpp"

#include <algorithm>

namespace ambiclass {

namespace {

constexpr long TRIAL_BOUND = 1000000;

// Pollard rho (Brent variant) for a composite n with no factor < 10^6.
Int pollard_rho(const Int& n)
{
    if (n % 2 == 0) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xa5b1c3);
    while (true) {
        Int y = rng.get_z_range(n - 3) + 2;
        Int c = rng.get_z_range(n - 2) + 1;
        Int x = y, d = 1, q = 1, ys = 0;
        const unsigned m = 128;
        unsigned r = 1;
        while (d == 1) {
            x = y;
            for (unsigned i = 0; i < r; ++i) y = (y * y + c) % n;
            unsigned k = 0;
            while (k < r && d == 1) {
                ys = y;
                for (unsigned i = 0; i < std::min(m, r - k); ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                d = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (d == n) {
            d = 1;
            while (d == 1) {
                ys = (ys * ys + c) % n;
                d = gcd(abs(x - ys), n);
            }
        }
        if (d != n) return d;
    }
}

void factor_rec(const Int& n, std::vector<std::pair<Int, unsigned>>& out)
{
    if (n == 1) return;
    if (is_prime(n)) {
        out.emplace_back(n, 1);
        return;
    }
    Int d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime(const Int& n)
{
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Factorization factorize(const Int& n)
{
    if (n == 0) throw precondition_error("factorize: n must be nonzero");
    Factorization f;
    f.value = n;
    Int m = abs(n);
    for (long p = 2; p <= TRIAL_BOUND && Int(p) * p <= m; p = (p == 2 ? 3 : p + 2)) {
        if (m % p == 0) {
            unsigned e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            f.factors.emplace_back(p, e);
        }
    }
    if (m > 1) {
        if (is_prime(m)) {
            f.factors.emplace_back(m, 1);
        } else {
            std::vector<std::pair<Int, unsigned>> rest;
            factor_rec(m, rest);
            std::sort(rest.begin(), rest.end());
            for (size_t i = 0; i < rest.size();) {
                size_t j = i;
                unsigned e = 0;
                while (j < rest.size() && rest[j].first == rest[i].first) {
                    e += rest[j].second;
                    ++j;
                }
                f.factors.emplace_back(rest[i].first, e);
                i = j;
            }
        }
    }
    return f;
}

int kronecker(const Int& a, const Int& n)
{
    if (n == 0) {
        if (a == 0) throw precondition_error("kronecker: (0/0) undefined");
        return (a == 1 || a == -1) ? 1 : 0;
    }
    Int m = n;
    int k = 1;
    if (m < 0) {
        m = -m;
        if (a < 0) k = -k;
    }
    // powers of 2 in the bottom
    unsigned long v = mpz_scan1(m.get_mpz_t(), 0);
    if (v > 0) {
        if (a % 2 == 0) return 0;
        m >>= v;
        if (v % 2 == 1) {
            long a8 = mpz_fdiv_ui(a.get_mpz_t(), 8);
            if (a8 == 3 || a8 == 5) k = -k;
        }
    }
    // Jacobi loop for odd m > 0
    Int x = a % m;
    if (x < 0) x += m;
    while (x != 0) {
        unsigned long tz = mpz_scan1(x.get_mpz_t(), 0);
        x >>= tz;
        if (tz % 2 == 1) {
            long m8 = mpz_fdiv_ui(m.get_mpz_t(), 8);
            if (m8 == 3 || m8 == 5) k = -k;
        }
        if (mpz_fdiv_ui(x.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(m.get_mpz_t(), 4) == 3) k = -k;
        std::swap(x, m);
        x %= m;
    }
    return m == 1 ? k : 0;
}

Int crt(const CongruenceSystem& system)
{
    Int r = 0, m = 1;
    for (const auto& c : system) {
        if (c.modulus <= 0) throw precondition_error("crt: modulus must be positive");
        Int g, u, v;
        mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t(),
                   c.modulus.get_mpz_t());
        Int diff = c.residue - r;
        if (diff % g != 0) throw precondition_error("inconsistent system");
        Int m2 = c.modulus / g;
        Int t = (diff / g * u) % m2;
        r += m * t;
        m *= m2;
        r %= m;
        if (r < 0) r += m;
    }
    return r == 0 ? m : r;
}

long valuation(const Int& n, const Int& p)
{
    if (n == 0) throw precondition_error("valuation: argument must be nonzero");
    if (!is_prime(p)) throw precondition_error("valuation: p must be prime");
    Int m = abs(n);
    long v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

long valuation(const Rat& x, const Int& p)
{
    if (x == 0) throw precondition_error("valuation: argument must be nonzero");
    Int num(x.get_num()), den(x.get_den());
    long v = 0;
    if (num % p == 0) v = valuation(num, p);
    if (den % p == 0) v -= valuation(den, p);
    return v;
}

Int isqrt(const Int& n)
{
    if (n < 0) throw precondition_error("isqrt: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int& n)
{
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int gcd(const Int& a, const Int& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm(const Int& a, const Int& b)
{
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Int ext_gcd(const Int& a, const Int& b, Int& u, Int& v)
{
    Int g;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int inv_mod(const Int& a, const Int& m)
{
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw precondition_error("inv_mod: not invertible");
    return r;
}

Int pow_mod(const Int& base, const Int& exp, const Int& mod)
{
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

bool is_squarefree(const Int& n)
{
    if (n == 0) return false;
    auto f = factorize(n);
    for (const auto& [p, e] : f.factors)
        if (e > 1) return false;
    return true;
}

bool is_fundamental_discriminant(const Int& D)
{
    if (D == 0 || D == 1) return false;
    Int r = D % 4;
    if (r < 0) r += 4;
    if (r == 1) return is_squarefree(D);
    if (r != 0) return false;
    Int m = D / 4;
    Int s = m % 4;
    if (s < 0) s += 4;
    if (s != 2 && s != 3) return false;
    return is_squarefree(m);
}

std::vector<Int> fundamental_discriminants(long lo, long hi)
{
    std::vector<Int> out;
    for (long d = lo; d <= hi; ++d) {
        if (d == 0 || d == 1) continue;
        if (is_fundamental_discriminant(Int(d))) out.emplace_back(d);
    }
    return out;
}

std::vector<long> primes_up_to(long bound)
{
    std::vector<long> out;
    if (bound < 2) return out;
    std::vector<bool> sieve(bound + 1, true);
    for (long i = 2; i <= bound; ++i) {
        if (sieve[i]) {
            out.push_back(i);
            for (long j = 2 * i; j <= bound; j += i) sieve[j] = false;
        }
    }
    return out;
}

Int sqrt_mod_prime(const Int& a, const Int& p)
{
    Int x = a % p;
    if (x < 0) x += p;
    if (x == 0) return 0;
    if (p == 2) return x;
    if (kronecker(x, p) != 1) throw precondition_error("sqrt_mod_prime: non-residue");
    if (p % 4 == 3) return pow_mod(x, (p + 1) / 4, p);
    // Tonelli-Shanks
    Int q = p - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    q >>= s;
    Int z = 2;
    while (kronecker(z, p) != -1) ++z;
    Int c = pow_mod(z, q, p);
    Int r = pow_mod(x, (q + 1) / 2, p);
    Int t = pow_mod(x, q, p);
    unsigned long m = s;
    while (t != 1) {
        Int tt = t;
        unsigned long i = 0;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Int b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return r;
}

Int hensel_sqrt(const Int& d, const Int& q, unsigned prec, const Int& s0)
{
    if (prec == 0) return 0;
    Int qk;
    mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), prec);
    if (q == 2) {
        // d = 1 mod 8; the mod-4 class of s0 selects one of the two 2-adic roots.
        Int dm = d % 8;
        if (dm < 0) dm += 8;
        if (dm != 1) throw precondition_error("hensel_sqrt: d not a 2-adic square unit");
        Int s = s0 % 8;
        if (s < 0) s += 8;
        Int two_k = 8;  // 2^3
        for (unsigned k = 3; k < prec; ++k) {
            Int next = two_k * 2;
            if ((s * s - d) % next != 0) s += two_k / 2;
            two_k = next;
        }
        s %= qk;
        if (s < 0) s += qk;
        return s;
    }
    Int s = s0 % q;
    if (s < 0) s += q;
    if ((s * s - d) % q != 0) throw precondition_error("hensel_sqrt: bad initial root");
    Int mod = q;
    unsigned have = 1;
    while (have < prec) {
        unsigned next = std::min(2 * have, prec);
        Int nmod;
        mpz_pow_ui(nmod.get_mpz_t(), q.get_mpz_t(), next);
        Int f = (s * s - d) % nmod;
        Int corr = f * inv_mod(2 * s % nmod, nmod) % nmod;
        s = (s - corr) % nmod;
        if (s < 0) s += nmod;
        mod = nmod;
        have = next;
    }
    return s;
}

}  // namespace ambiclass
