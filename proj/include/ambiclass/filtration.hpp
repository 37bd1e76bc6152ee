#ifndef AMBICLASS_FILTRATION_HPP
#define AMBICLASS_FILTRATION_HPP

#include <map>

#include "ambiclass/genus.hpp"

// The norm-symbol filtration of the narrow 2-class group of a quadratic
// field over Q: the orders #(M_{i+1}/M_i) are 2^(t-1-delta_i) where delta_i
// is the F2 rank of the Hasse-symbol matrix of the ideal norms accumulated so
// far.  The class group is never computed directly; new ideals enter the pool
// by solving norm equations and splitting off conjugate exponent pairs.

namespace ambiclass {

// Product of canonical prime ideals with integer exponents (the pool ideals;
// fractional exponents arise from the (1-sigma) extraction).
using IdealExponents = std::map<Int, long>;

struct FiltrationReport {
    std::vector<Int> order_sequence;   // #(M_{i+1}/M_i) > 1, stages 0..n-1
    std::vector<long> delta_sequence;  // delta_i per listed stage
    long length{0};                    // n: least i with M_i = M
    std::vector<long> divisors_nj;     // exponents n_j, ascending
    ClassGroupStructure structure;     // direct sum of Z/2^(n_j)
    long redei_rank{0};                // delta_1
    long four_rank{0};                 // t - 1 - delta_1
};

FiltrationReport compute_filtration(const QuadraticField& k);

struct RedeiMatrix {
    std::vector<Int> primes;             // ramified primes (rows and columns)
    std::vector<std::vector<int>> rows;  // F2 entries
    long rank{0};                        // delta_1
    long four_rank{0};                   // t - 1 - rank
};

RedeiMatrix redei_matrix(const QuadraticField& k);

}  // namespace ambiclass

#endif
