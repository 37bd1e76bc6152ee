#include "ambiclass/filtration.hpp"

#include <algorithm>
#include <set>

namespace ambiclass {

namespace {

constexpr int STAGE_GUARD = 64;

// Positive generator of the norm ideal of a pool entry.
Rat norm_of_entry(const IdealExponents& I)
{
    Rat n(1);
    for (const auto& [l, e] : I) {
        Int le;
        mpz_pow_ui(le.get_mpz_t(), l.get_mpz_t(), std::abs(e));
        if (e >= 0)
            n = n * Rat(le);
        else
            n = n / Rat(le);
    }
    n.canonicalize();
    return n;
}

// Valuations of the fractional ideal (y^-1) * B at every split prime that can
// occur, and the consistency checks at ramified/inert primes.  Returns the
// exponent map of the new pool ideal A with A^(1-sigma) = (y^-1) B.
IdealExponents extract_new_ideal(const QuadraticField& k, const QuadElement& y,
                                 const IdealExponents& B)
{
    // candidate support: primes of B, of N(y), and of the denominator of y
    std::set<Int> candidates;
    for (const auto& [l, e] : B)
        if (e != 0) candidates.insert(l);
    Rat ny = y.norm();
    for (const auto& [p, e] : factorize(ny.get_num() * ny.get_den()).factors) candidates.insert(p);
    if (y.z != 1)
        for (const auto& [p, e] : factorize(y.z).factors) candidates.insert(p);

    IdealExponents A;
    for (const Int& q : candidates) {
        SplitType st = splitting_type(k, q);
        auto at = B.find(q);
        long vB = at == B.end() ? 0 : at->second;
        if (st == SplitType::inert) {
            long vq = (ny.get_num() % q == 0 || ny.get_den() % q == 0) ? valuation(ny, q) : 0;
            if (vq % 2 != 0 || vB != 0)
                throw internal_error("filtration: inert exponent in norm-one ideal");
            continue;
        }
        PrimeIdeal P = prime_ideal_above(k, q);
        long vy = ideal_valuation(k, y, P);
        if (st == SplitType::ramified) {
            if (vB - vy != 0)
                throw internal_error("filtration: ramified exponent in norm-one ideal");
            continue;
        }
        long a = vB - vy;  // v_Q((y^-1) B) at the canonical prime
        // conjugate side must carry -a (norm-one fractional ideal)
        long vy_conj = valuation(ny, q) - vy;
        long a_conj = 0 - vy_conj;
        if (a_conj != -a) throw internal_error("filtration: conjugate exponents do not cancel");
        if (a != 0) A[q] = a;
    }
    return A;
}

}  // namespace

FiltrationReport compute_filtration(const QuadraticField& k)
{
    FiltrationReport rep;
    long t = static_cast<long>(k.ramified.size());

    // stage 0: Lambda_0 is the trivial unit group of Q, delta_0 = 0
    std::vector<IdealExponents> pool;
    for (const Int& l : k.ramified) pool.push_back({{l, 1}});

    long stage = 0;
    long delta = 0;
    while (true) {
        if (stage > STAGE_GUARD) throw internal_error("filtration: stage guard exceeded");
        std::vector<Rat> gens;
        if (stage > 0)
            for (const auto& I : pool) gens.push_back(norm_of_entry(I));
        SymbolMatrix sm = symbol_matrix(k, gens);
        delta = sm.rank;
        long e = t - 1 - delta;
        if (e < 0) throw internal_error("filtration: rank exceeds t-1");
        if (e == 0) break;  // #(M_{i+1}/M_i) = 1, filtration stabilized
        Int order;
        mpz_ui_pow_ui(order.get_mpz_t(), 2, e);
        rep.order_sequence.push_back(order);
        rep.delta_sequence.push_back(delta);

        // extend the pool: one new ideal per kernel basis element
        if (stage > 0) {
            auto kernel = f2_kernel(sm.rows);
            std::vector<IdealExponents> fresh;
            for (const auto& vec : kernel) {
                Rat x(1);
                IdealExponents B;
                for (size_t i = 0; i < vec.size(); ++i) {
                    if (!vec[i]) continue;
                    x *= gens[i];
                    for (const auto& [l, e2] : pool[i]) B[l] += e2;
                }
                x.canonicalize();
                auto y = solve_norm_equation(k, x);
                if (!y) throw internal_error("filtration: certified norm has no solution");
                IdealExponents A = extract_new_ideal(k, *y, B);
                if (!A.empty()) fresh.push_back(std::move(A));
            }
            for (auto& A : fresh)
                if (std::find(pool.begin(), pool.end(), A) == pool.end())
                    pool.push_back(std::move(A));
        }
        ++stage;
    }
    rep.length = stage;

    // divisors: conjugate partition of the rank sequence
    std::vector<long> ranks;
    for (const Int& o : rep.order_sequence) {
        long r = 0;
        Int v = o;
        while (v > 1) {
            v /= 2;
            ++r;
        }
        ranks.push_back(r);
    }
    for (size_t i = 0; i + 1 < ranks.size(); ++i)
        if (ranks[i] < ranks[i + 1]) throw internal_error("filtration: orders not non-increasing");
    if (!ranks.empty()) {
        for (long j = 1; j <= ranks[0]; ++j) {
            long nj = 0;
            for (long r : ranks)
                if (r >= j) ++nj;
            rep.divisors_nj.push_back(nj);
        }
        std::sort(rep.divisors_nj.begin(), rep.divisors_nj.end());
    }
    rep.structure.order = 1;
    for (long nj : rep.divisors_nj) {
        Int d;
        mpz_ui_pow_ui(d.get_mpz_t(), 2, nj);
        rep.structure.elementary_divisors.push_back(d);
        rep.structure.order *= d;
    }
    // stage-1 data for the Redei view
    RedeiMatrix rm = redei_matrix(k);
    rep.redei_rank = rm.rank;
    rep.four_rank = rm.four_rank;
    return rep;
}

RedeiMatrix redei_matrix(const QuadraticField& k)
{
    RedeiMatrix m;
    m.primes = k.ramified;
    std::vector<Rat> xs(k.ramified.begin(), k.ramified.end());
    SymbolMatrix sm = symbol_matrix(k, xs);
    m.rows = sm.rows;
    m.rank = sm.rank;
    m.four_rank = static_cast<long>(k.ramified.size()) - 1 - m.rank;
    return m;
}

}  // namespace ambiclass
