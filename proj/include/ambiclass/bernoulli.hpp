#ifndef AMBICLASS_BERNOULLI_HPP
#define AMBICLASS_BERNOULLI_HPP

#include <map>

#include "ambiclass/quadfield.hpp"

// Generalized Bernoulli numbers B1(psi) with exact cyclotomic values,
// Stickelberger elements, the analytic order check for odd quadratic
// characters, and the admissible-prime search for p = 3 with oracle-verified
// generation.

namespace ambiclass {

// Exact element of Z[zeta_N][1/d]: coefficients over 1, zeta, ...,
// zeta^(deg Phi_N - 1).
class Cyclotomic {
  public:
    Cyclotomic() : n_(1), coeff_(1, Rat(0)) {}
    Cyclotomic(long n, std::vector<Rat> coeff);
    static Cyclotomic zero(long n);
    static Cyclotomic root_power(long n, long k);  // zeta_N^k

    long level() const { return n_; }
    const std::vector<Rat>& coefficients() const { return coeff_; }
    bool is_zero() const;
    bool is_rational() const;
    Rat rational() const;

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic scale(const Rat& r) const;
    Cyclotomic galois(long j) const;  // zeta -> zeta^j, gcd(j, N) = 1
    Rat norm() const;                 // product over Galois conjugates

    static std::vector<Int> cyclotomic_polynomial(long n);

  private:
    long n_;
    std::vector<Rat> coeff_;
};

// Character modulo f of order N given by local components; evaluation is
// exponent-valued: psi(a) = zeta_N^exponent(a).
class DirichletCharacter {
  public:
    // quadratic character of a fundamental discriminant (Kronecker symbol)
    static DirichletCharacter quadratic(const Int& D);
    // cubic character mod ell (ell = 1 mod 3) sending a fixed primitive root
    // to zeta_3^c, c in {1, 2}
    static DirichletCharacter cubic(const Int& ell, int c);
    // trivial character (conductor 1)
    static DirichletCharacter trivial();

    DirichletCharacter times(const DirichletCharacter& o) const;  // coprime conductors

    const Int& conductor() const { return f_; }
    long order() const { return order_; }
    // exponent in Z/order, or -1 when gcd(a, f) > 1
    long exponent(const Int& a) const;
    bool odd() const;  // psi(-1) = -1

    // flat view of the components for tight evaluation loops
    struct ComponentView {
        long modulus;
        long scale;  // order / component order
        const std::vector<int>* table;
    };
    std::vector<ComponentView> component_views() const;

  private:
    DirichletCharacter() = default;
    struct Component {
        Int modulus;
        long order;
        std::vector<int> table;  // exponent mod order per residue, -1 if not coprime
    };
    Int f_{1};
    long order_{1};
    std::vector<Component> components_;
};

// B1(psi) = (1/f) sum_{a=1..f} psi(a) a, exact.
Cyclotomic b1(const DirichletCharacter& psi);

// Stickelberger element of the cyclic field cut out by psi, conductor m:
// coefficient of the Galois element with character exponent j is
// sum over a with psi-exponent(a) = -j of (a/m - 1/2).
std::map<long, Rat> stickelberger(const Int& m, const DirichletCharacter& psi);

struct MwkReport {
    long v_analytic{0};
    long v_oracle{0};
    bool pass{false};
    bool omega_excluded{false};
};

// v_p(B1(chi_D)) against v_p(h(D)) from the form-class oracle.
MwkReport mwk_order_check(const Int& D, const Int& p);

struct AdmissibleSet {
    std::vector<Int> primes;
    std::vector<int> exponents;  // cubic component exponents, first = 1
    long valuation{0};
};

struct AdmissibleSearchResult {
    std::vector<AdmissibleSet> admissible;        // valuation exactly t
    std::vector<AdmissibleSet> higher_valuation;  // valuation > t (no theorem claim)
};

// Enumerate t-tuples of primes ell <= bound with ell = 1 mod 3 split in
// Q(sqrt(D)); keep tuples carrying an order-3 character of exact conductor
// prod(ell) whose twisted Bernoulli number has (1-zeta_3)-valuation exactly t.
AdmissibleSearchResult admissible_search(const Int& D, const Int& p, long t, const Int& bound);

// Oracle check of the generation statement: classes of the primes above the
// ell_i generate the p-Sylow of the class group of D.
bool verify_generation(const Int& D, const std::vector<Int>& primes, const Int& p);

}  // namespace ambiclass

#endif
