#ifndef AMBICLASS_GENUS_HPP
#define AMBICLASS_GENUS_HPP

#include "ambiclass/normic.hpp"

// Chevalley's ambiguous class number formula over Q and the generator
// criterion for sets of split primes, both driven by Hasse symbol ranks.

namespace ambiclass {

struct AmbiguousReport {
    long t{0};            // ramified finite primes
    Sense sense{Sense::narrow};
    long delta0{0};       // log2 of the unit norm index (E : E cap N(K^x))
    Int order{1};         // number of ambiguous classes
};

AmbiguousReport ambiguous_number(const QuadraticField& k, Sense sense);

struct OmegaGroup {
    long t{0};
    long dimension{0};  // t - 1 over Q
};

OmegaGroup omega_group(const QuadraticField& k);

// F2 matrix of Hasse symbols: one row per given rational, one column per
// ramified prime (entry 1 when the symbol is -1).
struct SymbolMatrix {
    std::vector<std::vector<int>> rows;
    long rank{0};
};

SymbolMatrix symbol_matrix(const QuadraticField& k, const std::vector<Rat>& xs);

// F2 rank of a 0/1 matrix; rows are consumed.
long f2_rank(std::vector<std::vector<int>> rows);

// Kernel basis of the row map F2^n -> F2^t, v -> sum v_i row_i.
std::vector<std::vector<int>> f2_kernel(const std::vector<std::vector<int>>& rows);

// True iff the split primes of S generate the narrow 2-class group: the
// symbol rows of S span the full Omega space of dimension t - 1.
bool genclass_check(const QuadraticField& k, const std::vector<Int>& split_primes);

}  // namespace ambiclass

#endif
