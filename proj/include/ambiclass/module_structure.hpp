#ifndef AMBICLASS_MODULE_STRUCTURE_HPP
#define AMBICLASS_MODULE_STRUCTURE_HPP

#include "ambiclass/formclass.hpp"

// Structure theorems for finite Z_p[G]-modules with G of order p: conversion
// between (1-zeta)-divisor profiles, abelian group structures, p^k-ranks and
// filtration orders, plus an explicit finite-module simulator used as the
// oracle for all of them.

namespace ambiclass {

struct DivisorProfile {
    Int p;
    std::vector<long> njs;  // 1 <= n_1 <= ... <= n_m
};

// M = (+) Z_p[zeta]/(1-zeta)^(n_j) as an abelian p-group: each n_j = a(p-1)+b
// contributes (Z/p^(a+1))^b (+) (Z/p^a)^(p-1-b).
ClassGroupStructure structure_from_divisors(const DivisorProfile& profile);

// p^k-ranks R_k for k = 1..max needed.
std::vector<long> pk_ranks(const DivisorProfile& profile);

// #(M_{i+1}/M_i) = p^(#{j : n_j > i}) for 0 <= i < max n_j.
std::vector<Int> filtration_orders_from_divisors(const DivisorProfile& profile);

// The possible group structures when M^nu != 1, #M_1 = p and the filtration
// has length n >= 2: one candidate for n != p, two for n = p.
std::vector<ClassGroupStructure> structure_nontrivial_norm(const Int& p, long n);

using IntMatrix = std::vector<std::vector<Int>>;  // list of column vectors

// Explicit finite module on Z^dim / lattice with a sigma of order dividing p.
struct SimModule {
    Int p;
    long dim{0};
    IntMatrix sigma;   // dim x dim action, column convention
    IntMatrix lattice; // lower-triangular HNF basis (dim columns)
    Int order{1};
};

// Builder for the profile modules; order capped at 2^20.
SimModule simulate_module(const DivisorProfile& profile);

// Cyclic presentation (Z/p^c)[x]/(x^p - 1, g) with sigma = multiplication
// by x; g given by its p coefficients.
SimModule module_from_presentation(const Int& p, unsigned c, const std::vector<Int>& g);

// Same with several relation polynomials.
SimModule module_from_presentation_multi(const Int& p, unsigned c,
                                         const std::vector<std::vector<Int>>& gs);

// Lower-triangular HNF basis of the lattice spanned by the columns (must be
// full rank in Z^n).
IntMatrix hnf_lattice(IntMatrix cols, long n);

// Smith normal form divisors (d_1 | d_2 | ...) of an integer matrix.
std::vector<Int> smith_divisors(IntMatrix cols, long n);

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B);
IntMatrix mat_identity(long n);
IntMatrix mat_sub(const IntMatrix& A, const IntMatrix& B);

// #ker of the endomorphism given by A on the module.
Int kernel_size(const SimModule& M, const IntMatrix& A);

// Exact orders #ker(1-sigma)^(i+1) / #ker(1-sigma)^i: enumeration for small
// modules, lattice indices beyond.
std::vector<Int> brute_filtration(const SimModule& M);

// Abelian structure of the module by Smith normal form of its lattice.
ClassGroupStructure module_structure(const SimModule& M);

// True iff M^(1 + sigma + ... + sigma^(p-1)) is trivial.
bool nu_trivial(const SimModule& M);

// Least i with ker(1-sigma)^i = M.
long filtration_length(const SimModule& M);

// #M_1 = #ker(1-sigma).
Int ambiguous_size(const SimModule& M);

}  // namespace ambiclass

#endif
