#ifndef AMBICLASS_ARITH_HPP
#define AMBICLASS_ARITH_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ambiclass/errors.hpp"

// Exact integer primitives shared by every other module: factorization,
// Kronecker symbols, Chinese remainders, p-adic valuations.  No floating
// point anywhere; everything is mpz/mpq.

namespace ambiclass {

using Int = mpz_class;
using Rat = mpq_class;

struct Factorization {
    Int value;  // signed original value
    std::vector<std::pair<Int, unsigned>> factors;  // primes of |value|, increasing
};

struct Congruence {
    Int residue;
    Int modulus;  // > 0
};

using CongruenceSystem = std::vector<Congruence>;

bool is_prime(const Int& n);

// Complete factorization of n != 0.  Trial division below 10^6, then
// Miller-Rabin plus Pollard rho for the cofactor (desk-scale inputs).
Factorization factorize(const Int& n);

// Kronecker symbol (a/n), the extension of the Jacobi symbol to all n.
// (a/0) is 1 for a = +-1 and 0 otherwise.
int kronecker(const Int& a, const Int& n);

// Least positive x with x = r_i mod m_i for all i.  Moduli need not be
// coprime; an unsatisfiable pair throws precondition_error("inconsistent
// system").  An empty system yields 1.
Int crt(const CongruenceSystem& system);

// Exponent of the prime p in the rational x != 0 (negative for denominators).
long valuation(const Rat& x, const Int& p);
long valuation(const Int& n, const Int& p);

Int isqrt(const Int& n);              // floor of sqrt, n >= 0
bool is_square(const Int& n);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

// g = gcd(a, b) = u*a + v*b
Int ext_gcd(const Int& a, const Int& b, Int& u, Int& v);

// Inverse of a mod m > 0; requires gcd(a, m) = 1.
Int inv_mod(const Int& a, const Int& m);

Int pow_mod(const Int& base, const Int& exp, const Int& mod);

bool is_squarefree(const Int& n);

// Fundamental discriminant test: D = 1 mod 4 squarefree, or D = 4m with
// m squarefree and m = 2 or 3 mod 4.  D = 1 is excluded.
bool is_fundamental_discriminant(const Int& D);

// All fundamental discriminants D with lo <= D <= hi (excluding 1), ascending.
std::vector<Int> fundamental_discriminants(long lo, long hi);

// Primes p <= bound, ascending.
std::vector<long> primes_up_to(long bound);

// Some x with x^2 = a mod p (p odd prime, (a/p) = 1), via Tonelli-Shanks.
Int sqrt_mod_prime(const Int& a, const Int& p);

// Lift of a square root of d to a root mod q^prec: returns s with
// s^2 = d mod q^prec and s = s0 mod q (mod 8 for q = 2).  Requires d to be
// a q-adic square unit (q odd: (d/q) = 1; q = 2: d = 1 mod 8).
Int hensel_sqrt(const Int& d, const Int& q, unsigned prec, const Int& s0);

}  // namespace ambiclass

#endif
