#include "ambiclass/genus.hpp"

namespace ambiclass {

AmbiguousReport ambiguous_number(const QuadraticField& k, Sense sense)
{
    AmbiguousReport r;
    r.t = static_cast<long>(k.ramified.size());
    r.sense = sense;
    if (sense == Sense::narrow) {
        // eq to 2^(t-1): totally positive units of Q are trivial
        r.delta0 = 0;
        mpz_ui_pow_ui(r.order.get_mpz_t(), 2, r.t - 1);
        return r;
    }
    bool minus_one_is_norm = is_global_norm(k, Rat(-1));
    if (k.real && ((k.unit_norm == -1) != minus_one_is_norm))
        throw internal_error("ambiguous_number: unit norm disagrees with Hasse symbols of -1");
    r.delta0 = minus_one_is_norm ? 0 : 1;
    long f_inf = k.real ? 1 : 2;
    // 2^t * f_inf / (2 * 2^delta0)
    long e = r.t + (f_inf == 2 ? 1 : 0) - 1 - r.delta0;
    if (e < 0) throw internal_error("ambiguous_number: negative exponent");
    mpz_ui_pow_ui(r.order.get_mpz_t(), 2, e);
    return r;
}

OmegaGroup omega_group(const QuadraticField& k)
{
    OmegaGroup o;
    o.t = static_cast<long>(k.ramified.size());
    o.dimension = o.t - 1;
    return o;
}

SymbolMatrix symbol_matrix(const QuadraticField& k, const std::vector<Rat>& xs)
{
    SymbolMatrix m;
    for (const Rat& x : xs) {
        SymbolVector sv = symbol_vector(k, x);
        std::vector<int> row;
        for (const auto& [q, s] : sv.at_ramified) row.push_back(s == -1 ? 1 : 0);
        m.rows.push_back(std::move(row));
    }
    m.rank = f2_rank(m.rows);
    return m;
}

long f2_rank(std::vector<std::vector<int>> rows)
{
    long rank = 0;
    size_t cols = rows.empty() ? 0 : rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows.size(); ++c) {
        size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i][c])
                for (size_t j = 0; j < cols; ++j) rows[i][j] ^= rows[r][j];
        ++r;
        ++rank;
    }
    return rank;
}

std::vector<std::vector<int>> f2_kernel(const std::vector<std::vector<int>>& rows)
{
    size_t n = rows.size();
    size_t cols = rows.empty() ? 0 : rows[0].size();
    // augment with the identity to track row combinations
    std::vector<std::vector<int>> aug(n);
    for (size_t i = 0; i < n; ++i) {
        aug[i] = rows[i];
        aug[i].resize(cols + n, 0);
        aug[i][cols + i] = 1;
    }
    size_t r = 0;
    for (size_t c = 0; c < cols && r < n; ++c) {
        size_t piv = r;
        while (piv < n && aug[piv][c] == 0) ++piv;
        if (piv == n) continue;
        std::swap(aug[r], aug[piv]);
        for (size_t i = 0; i < n; ++i)
            if (i != r && aug[i][c])
                for (size_t j = 0; j < cols + n; ++j) aug[i][j] ^= aug[r][j];
        ++r;
    }
    std::vector<std::vector<int>> kernel;
    for (size_t i = r; i < n; ++i)
        kernel.emplace_back(aug[i].begin() + cols, aug[i].end());
    return kernel;
}

bool genclass_check(const QuadraticField& k, const std::vector<Int>& split_primes)
{
    for (const Int& l : split_primes)
        if (splitting_type(k, l) != SplitType::split)
            throw precondition_error("genclass_check: prime does not split");
    std::vector<Rat> xs(split_primes.begin(), split_primes.end());
    SymbolMatrix m = symbol_matrix(k, xs);
    return m.rank == omega_group(k).dimension;
}

}  // namespace ambiclass
