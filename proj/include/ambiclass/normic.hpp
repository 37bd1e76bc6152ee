#ifndef AMBICLASS_NORMIC_HPP
#define AMBICLASS_NORMIC_HPP

#include <vector>

#include "ambiclass/quadfield.hpp"

// Hasse norm-residue symbols (x, K/Q)_p for quadratic K, computed by the
// associate-number method: an x' congruent to x at p, to 1 at the other
// ramified places, and positive, turns the ramified symbol into a Kronecker
// symbol of the prime-to-conductor part.

namespace ambiclass {

struct Place {
    bool infinite{false};
    Int p{0};
    static Place at(const Int& prime) { return Place{false, prime}; }
    static Place infinity() { return Place{true, 0}; }
};

// The p-associate x' of x: x'/x = 1 mod p^vp(M), x' = 1 mod q^vq(M) for the
// other primes q of the modulus M = |D| * modulus_multiple, x' > 0.  The
// returned value is p^v(x) times the least positive solution of the unit-part
// congruences (an integer whenever x is an integer with v >= 0).
Rat associate_number(const QuadraticField& k, const Rat& x, const Int& p,
                     const Int& modulus_multiple = 1);

// Hasse symbol (x, K/Q) at a finite or infinite place.
int hasse_symbol(const QuadraticField& k, const Rat& x, const Place& place,
                 const Int& modulus_multiple = 1);

// Symbols at every ramified prime and at infinity.  Valid only for x whose
// unramified symbols are all trivial (positive ideal-norm shaped x, the case
// used by genus theory); the product over the entries must be +1 and is
// checked.
struct SymbolVector {
    std::vector<std::pair<Int, int>> at_ramified;  // (prime, symbol)
    int at_infinity{1};
    int product() const;
};

SymbolVector symbol_vector(const QuadraticField& k, const Rat& x);

// Hasse norm theorem: x is a norm from K iff it is a local norm at every
// place, i.e. all symbols over ramified primes, infinity, and unramified
// primes with nonzero valuation are +1.
bool is_global_norm(const QuadraticField& k, const Rat& x);

}  // namespace ambiclass

#endif
