#include "ambiclass/normic.hpp"

#include <algorithm>

namespace ambiclass {

namespace {

// Support of the modulus |D| * multiple as (prime, exponent) pairs.
std::vector<std::pair<Int, unsigned>> modulus_support(const QuadraticField& k,
                                                      const Int& multiple)
{
    if (multiple < 1) throw precondition_error("modulus multiple must be positive");
    Int M = abs(k.D) * multiple;
    return factorize(M).factors;
}

// Least positive integer t with t = unit-part(x) mod p^mp and t = p^-v mod
// q^mq at the other modulus primes.  x' = p^v * t.
Int associate_unit_part(const QuadraticField& k, const Rat& x, const Int& p,
                        const Int& multiple, long* v_out)
{
    if (x == 0) throw precondition_error("associate_number: x must be nonzero");
    auto support = modulus_support(k, multiple);
    bool found = false;
    for (const auto& [q, e] : support)
        if (q == p) found = true;
    if (!found) throw precondition_error("associate_number: place not in the modulus support");

    long v = valuation(x, p);
    if (v_out) *v_out = v;
    // unit part of x at p
    Rat u = x;
    if (v != 0) {
        Int pv;
        mpz_pow_ui(pv.get_mpz_t(), p.get_mpz_t(), std::abs(v));
        if (v > 0)
            u = x / Rat(pv);
        else
            u = x * Rat(pv);
        u.canonicalize();
    }
    CongruenceSystem sys;
    for (const auto& [q, e] : support) {
        Int qe;
        mpz_pow_ui(qe.get_mpz_t(), q.get_mpz_t(), e);
        if (q == p) {
            // t = u mod p^e, u a p-unit
            Int num = u.get_num() % qe, den = u.get_den() % qe;
            if (num < 0) num += qe;
            Int r = num * inv_mod(den, qe) % qe;
            sys.push_back({r, qe});
        } else {
            // t = p^-v mod q^e
            Int pv = pow_mod(p, Int(std::abs(v)), qe);
            Int r = v >= 0 ? (v == 0 ? Int(1) : inv_mod(pv, qe)) : pv;
            sys.push_back({r, qe});
        }
    }
    return crt(sys);
}

int sign_symbol_at_infinity(const QuadraticField& k, const Rat& x)
{
    // real K: the infinite place splits, Frobenius trivial; imaginary K: the
    // place complexifies and the symbol is (-1)^(sign indicator)
    if (k.real) return 1;
    return x > 0 ? 1 : -1;
}

}  // namespace

Rat associate_number(const QuadraticField& k, const Rat& x, const Int& p,
                     const Int& modulus_multiple)
{
    long v = 0;
    Int t = associate_unit_part(k, x, p, modulus_multiple, &v);
    Rat out(t);
    if (v != 0) {
        Int pv;
        mpz_pow_ui(pv.get_mpz_t(), p.get_mpz_t(), std::abs(v));
        if (v > 0)
            out = out * Rat(pv);
        else
            out = out / Rat(pv);
        out.canonicalize();
    }
    return out;
}

int hasse_symbol(const QuadraticField& k, const Rat& x, const Place& place,
                 const Int& modulus_multiple)
{
    if (x == 0) throw precondition_error("hasse_symbol: x must be nonzero");
    if (place.infinite) return sign_symbol_at_infinity(k, x);
    const Int& p = place.p;
    if (!is_prime(p)) throw precondition_error("hasse_symbol: place is not a prime");
    Int M = abs(k.D) * modulus_multiple;
    if (M % p != 0) {
        // unramified and outside the modulus: Frobenius^v
        long v = valuation(x, p);
        if (v % 2 == 0) return 1;
        return kronecker(k.D, p);
    }
    // modulus prime: symbol = Kronecker of the prime-to-modulus part of x'
    Int t = associate_unit_part(k, x, p, modulus_multiple, nullptr);
    int s = kronecker(k.D, t);
    if (s == 0) throw internal_error("hasse_symbol: associate not prime to D");
    return s;
}

int SymbolVector::product() const
{
    int p = at_infinity;
    for (const auto& [q, s] : at_ramified) p *= s;
    return p;
}

SymbolVector symbol_vector(const QuadraticField& k, const Rat& x)
{
    SymbolVector sv;
    for (const Int& q : k.ramified)
        sv.at_ramified.emplace_back(q, hasse_symbol(k, x, Place::at(q)));
    sv.at_infinity = sign_symbol_at_infinity(k, x);
    if (sv.product() != 1)
        throw internal_error("symbol_vector: product formula violated (nontrivial unramified symbols?)");
    return sv;
}

bool is_global_norm(const QuadraticField& k, const Rat& x)
{
    if (x == 0) throw precondition_error("is_global_norm: x must be nonzero");
    if (sign_symbol_at_infinity(k, x) != 1) return false;
    for (const Int& q : k.ramified)
        if (hasse_symbol(k, x, Place::at(q)) != 1) return false;
    Int support = x.get_num() * x.get_den();
    for (const auto& [q, e] : factorize(support).factors) {
        if (k.D % q == 0) continue;  // ramified, already checked
        if (hasse_symbol(k, x, Place::at(q)) != 1) return false;
    }
    return true;
}

}  // namespace ambiclass
