#ifndef AMBICLASS_QUADFIELD_HPP
#define AMBICLASS_QUADFIELD_HPP

#include <optional>
#include <vector>

#include "ambiclass/formclass.hpp"

// Quadratic fields Q(sqrt(m)): discriminants, fundamental units by continued
// fractions, prime splitting, exact element arithmetic, and norm-equation
// solving through ideal candidates and form reduction with transformation
// tracking.

namespace ambiclass {

// (x + y*sqrt(m))/z in canonical form: z > 0, gcd(x, y, z) = 1.
struct QuadElement {
    Int x{0}, y{0}, z{1};
    Int m{0};

    QuadElement() = default;
    QuadElement(Int x_, Int y_, Int z_, Int m_);

    Rat norm() const;        // (x^2 - m y^2)/z^2
    Rat trace() const;       // 2x/z
    QuadElement conj() const;
    bool is_rational() const { return y == 0; }
    bool operator==(const QuadElement& o) const;
};

QuadElement operator*(const QuadElement& a, const QuadElement& b);
QuadElement operator*(const QuadElement& a, const Rat& r);
QuadElement inverse(const QuadElement& a);

enum class SplitType { split, inert, ramified };

struct QuadraticField {
    Int m;                      // squarefree, not 0 or 1
    Int D;                      // fundamental discriminant
    std::vector<Int> ramified;  // primes dividing D, increasing
    bool real{false};
    QuadElement fundamental_unit;  // real case; norm +-1, > 1
    int unit_norm{1};              // real case
    int torsion_w{2};              // imaginary case: 2, 4 or 6
};

QuadraticField make_field(const Int& m);

// Field from either a squarefree m or a fundamental discriminant D.
QuadraticField field_from_discriminant(const Int& D);

SplitType splitting_type(const QuadraticField& k, const Int& ell);

struct PrimeIdeal {
    Int ell;
    SplitType type;
    Int b;               // least nonnegative b = D mod 2 with b^2 = D mod 4*ell
    QuadForm form_rep;   // (ell, b, (b^2 - D)/(4 ell))
};

PrimeIdeal prime_ideal_above(const QuadraticField& k, const Int& ell);

// Integral ideal content * (Z a + Z (b + sqrt(D))/2) with a > 0 primitive part.
struct QuadIdeal {
    Int content{1};
    Int a{1};
    Int b{0};
    Int norm() const { return content * content * a; }
    QuadForm form(const Int& D) const { return {a, b, (b * b - D) / (4 * a)}; }
};

QuadIdeal ideal_one(const Int& D);
QuadIdeal ideal_of_prime(const PrimeIdeal& p);
QuadIdeal ideal_conj(const QuadIdeal& I, const Int& D);
QuadIdeal ideal_mul(const Int& D, const QuadIdeal& I, const QuadIdeal& J);
QuadIdeal ideal_pow(const Int& D, const QuadIdeal& I, unsigned e);

// q-adic valuation of e at the degree-one prime (q, bq): uses a Hensel lift of
// the root of X^2 - D selected by bq.
long ideal_valuation(const QuadraticField& k, const QuadElement& e, const PrimeIdeal& P);

// Some y in K^x with N(y) = x exactly, or nullopt when x is not a norm.
std::optional<QuadElement> solve_norm_equation(const QuadraticField& k, const Rat& x);

// Exhaustive search for an integral solution of N(alpha) = x inside the proven
// unit box; coprime = true restricts to gcd-free coordinates.
std::optional<QuadElement> solve_norm_integral(const QuadraticField& k, const Int& x,
                                               bool coprime);

}  // namespace ambiclass

#endif
