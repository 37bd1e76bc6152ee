#include "ambiclass/module_structure.hpp"

#include <algorithm>

namespace ambiclass {

namespace {

void check_profile(const DivisorProfile& profile)
{
    if (!is_prime(profile.p)) throw precondition_error("profile: p must be prime");
    long prev = 1;
    for (long n : profile.njs) {
        if (n < 1 || n < prev) throw precondition_error("profile: divisors must be ascending >= 1");
        prev = n;
    }
}

Int int_pow(const Int& p, long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), e);
    return r;
}

}  // namespace

ClassGroupStructure structure_from_divisors(const DivisorProfile& profile)
{
    check_profile(profile);
    long pm1 = mpz_get_si(Int(profile.p - 1).get_mpz_t());
    std::vector<Int> divs;
    for (long n : profile.njs) {
        long a = n / pm1, b = n % pm1;
        for (long i = 0; i < b; ++i)
            if (a + 1 > 0) divs.push_back(int_pow(profile.p, a + 1));
        for (long i = 0; i < pm1 - b; ++i)
            if (a > 0) divs.push_back(int_pow(profile.p, a));
    }
    std::sort(divs.begin(), divs.end());
    ClassGroupStructure s;
    s.elementary_divisors = divs;
    s.order = 1;
    for (const Int& d : divs) s.order *= d;
    return s;
}

std::vector<long> pk_ranks(const DivisorProfile& profile)
{
    check_profile(profile);
    long pm1 = mpz_get_si(Int(profile.p - 1).get_mpz_t());
    long kmax = 0;
    for (long n : profile.njs) kmax = std::max(kmax, n / pm1 + 1);
    std::vector<long> ranks;
    for (long k = 1; k <= kmax; ++k) {
        long r = 0;
        for (long n : profile.njs) {
            long a = n / pm1, b = n % pm1;
            if (k <= a)
                r += pm1;
            else if (k == a + 1)
                r += b;
        }
        ranks.push_back(r);
    }
    while (!ranks.empty() && ranks.back() == 0) ranks.pop_back();
    return ranks;
}

std::vector<Int> filtration_orders_from_divisors(const DivisorProfile& profile)
{
    check_profile(profile);
    long nmax = profile.njs.empty() ? 0 : profile.njs.back();
    std::vector<Int> orders;
    for (long i = 0; i < nmax; ++i) {
        long cnt = 0;
        for (long n : profile.njs)
            if (n > i) ++cnt;
        orders.push_back(int_pow(profile.p, cnt));
    }
    return orders;
}

std::vector<ClassGroupStructure> structure_nontrivial_norm(const Int& p, long n)
{
    if (!is_prime(p)) throw precondition_error("structure_nontrivial_norm: p must be prime");
    if (n < 2) throw precondition_error("theorem requires n >= 2");
    long pl = mpz_get_si(p.get_mpz_t());
    auto mk = [&](const std::vector<long>& exps) {
        ClassGroupStructure s;
        for (long e : exps)
            if (e > 0) s.elementary_divisors.push_back(int_pow(p, e));
        std::sort(s.elementary_divisors.begin(), s.elementary_divisors.end());
        s.order = 1;
        for (const Int& d : s.elementary_divisors) s.order *= d;
        return s;
    };
    std::vector<ClassGroupStructure> out;
    if (n < pl) {
        std::vector<long> e{2};
        for (long i = 0; i < n - 2; ++i) e.push_back(1);
        out.push_back(mk(e));
    } else if (n == pl) {
        std::vector<long> e1(pl, 1);
        out.push_back(mk(e1));
        std::vector<long> e2{2};
        for (long i = 0; i < pl - 2; ++i) e2.push_back(1);
        out.push_back(mk(e2));
    } else {
        long a = n / (pl - 1), b = n % (pl - 1);
        std::vector<long> e;
        for (long i = 0; i < b; ++i) e.push_back(a + 1);
        for (long i = 0; i < pl - 1 - b; ++i) e.push_back(a);
        out.push_back(mk(e));
    }
    return out;
}

IntMatrix mat_identity(long n)
{
    IntMatrix I(n, std::vector<Int>(n, 0));
    for (long i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B)
{
    // columns convention: (A*B) column j = A * (B column j)
    if (A.empty() || B.empty()) return {};
    long n = static_cast<long>(A.size());
    long rows = static_cast<long>(A[0].size());
    long m = static_cast<long>(B.size());
    IntMatrix C(m, std::vector<Int>(rows, 0));
    for (long j = 0; j < m; ++j)
        for (long k = 0; k < n; ++k) {
            const Int& b = B[j][k];
            if (b == 0) continue;
            for (long i = 0; i < rows; ++i) C[j][i] += A[k][i] * b;
        }
    return C;
}

IntMatrix mat_sub(const IntMatrix& A, const IntMatrix& B)
{
    IntMatrix C = A;
    for (size_t j = 0; j < C.size(); ++j)
        for (size_t i = 0; i < C[j].size(); ++i) C[j][i] -= B[j][i];
    return C;
}

IntMatrix hnf_lattice(IntMatrix cols, long n)
{
    IntMatrix basis;
    std::vector<IntMatrix::value_type> work = std::move(cols);
    for (long row = 0; row < n; ++row) {
        // eliminate: leave at most one column with nonzero entry at this row
        while (true) {
            long i1 = -1, i2 = -1;
            for (size_t i = 0; i < work.size(); ++i)
                if (work[i][row] != 0) {
                    if (i1 < 0)
                        i1 = static_cast<long>(i);
                    else {
                        i2 = static_cast<long>(i);
                        break;
                    }
                }
            if (i2 < 0) break;
            // reduce the larger entry by the smaller
            if (abs(work[i1][row]) < abs(work[i2][row])) std::swap(i1, i2);
            Int q = work[i1][row] / work[i2][row];
            for (long r = 0; r < n; ++r) work[i1][r] -= q * work[i2][r];
        }
        long piv = -1;
        for (size_t i = 0; i < work.size(); ++i)
            if (work[i][row] != 0) piv = static_cast<long>(i);
        if (piv < 0) throw precondition_error("hnf_lattice: lattice not full rank");
        auto col = work[piv];
        work.erase(work.begin() + piv);
        if (col[row] < 0)
            for (auto& v : col) v = -v;
        // drop now-zero columns
        std::vector<IntMatrix::value_type> keep;
        for (auto& w : work) {
            bool z = true;
            for (const auto& v : w)
                if (v != 0) {
                    z = false;
                    break;
                }
            if (!z) keep.push_back(std::move(w));
        }
        work = std::move(keep);
        basis.push_back(std::move(col));
    }
    // reduce off-diagonal entries below each pivot for canonicity
    for (long j = 0; j < n; ++j)
        for (long i = j + 1; i < n; ++i) {
            // entry basis[j][i] reduced mod basis[i][i]
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), basis[j][i].get_mpz_t(), basis[i][i].get_mpz_t());
            if (q != 0)
                for (long r = 0; r < n; ++r) basis[j][r] -= q * basis[i][r];
        }
    return basis;
}

std::vector<Int> smith_divisors(IntMatrix cols, long n)
{
    // rows x cols matrix M with rows = n; standard SNF by elementary ops
    long m = static_cast<long>(cols.size());
    auto& M = cols;
    auto at = [&](long i, long j) -> Int& { return M[j][i]; };
    std::vector<Int> divs;
    long top = 0;
    long lead_cols = 0;
    while (top < n && lead_cols < m) {
        // find a nonzero pivot in the submatrix
        long pi = -1, pj = -1;
        for (long j = lead_cols; j < m && pi < 0; ++j)
            for (long i = top; i < n; ++i)
                if (at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        std::swap(M[pj], M[lead_cols]);
        for (long j = 0; j < m; ++j) std::swap(at(top, j), at(pi, j));
        bool again = true;
        while (again) {
            again = false;
            // clear the pivot row
            for (long j = lead_cols + 1; j < m; ++j)
                while (at(top, j) != 0) {
                    Int q = at(top, j) / at(top, lead_cols);
                    for (long i = top; i < n; ++i) at(i, j) -= q * at(i, lead_cols);
                    if (at(top, j) != 0) std::swap(M[j], M[lead_cols]);
                }
            // clear the pivot column
            for (long i = top + 1; i < n; ++i)
                while (at(i, lead_cols) != 0) {
                    Int q = at(i, lead_cols) / at(top, lead_cols);
                    for (long j = lead_cols; j < m; ++j) at(i, j) -= q * at(top, j);
                    if (at(i, lead_cols) != 0) {
                        for (long j = lead_cols; j < m; ++j) std::swap(at(top, j), at(i, j));
                        again = true;
                    }
                }
            if (again) continue;
            // divisibility: pivot must divide every remaining entry
            for (long j = lead_cols + 1; j < m && !again; ++j)
                for (long i = top + 1; i < n && !again; ++i)
                    if (at(i, j) % at(top, lead_cols) != 0) {
                        for (long jj = lead_cols; jj < m; ++jj) at(top, jj) += at(i, jj);
                        again = true;
                    }
        }
        Int d = at(top, lead_cols);
        if (d < 0) d = -d;
        divs.push_back(d);
        ++top;
        ++lead_cols;
    }
    return divs;
}

namespace {

IntMatrix companion_cyclotomic(long p)
{
    // multiplication by zeta on the basis 1, zeta, ..., zeta^(p-2)
    long n = p - 1;
    IntMatrix C(n, std::vector<Int>(n, 0));
    for (long j = 0; j + 1 < n; ++j) C[j][j + 1] = 1;  // zeta * zeta^j = zeta^(j+1)
    for (long i = 0; i < n; ++i) C[n - 1][i] = -1;     // zeta * zeta^(p-2) = -(1+...+zeta^(p-2))
    return C;
}

Int lattice_index(const IntMatrix& hnf)
{
    Int d = 1;
    for (size_t i = 0; i < hnf.size(); ++i) d *= hnf[i][i];
    return d;
}

std::vector<Int> reduce_vec(std::vector<Int> v, const IntMatrix& hnf)
{
    long n = static_cast<long>(v.size());
    for (long j = 0; j < n; ++j) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v[j].get_mpz_t(), hnf[j][j].get_mpz_t());
        if (q != 0)
            for (long r = 0; r < n; ++r) v[r] -= q * hnf[j][r];
    }
    return v;
}

}  // namespace

SimModule simulate_module(const DivisorProfile& profile)
{
    check_profile(profile);
    long p = mpz_get_si(profile.p.get_mpz_t());
    long blk = p - 1;
    long dim = blk * static_cast<long>(profile.njs.size());
    long total = 0;
    for (long n : profile.njs) total += n;
    if (total > 20 || Int(profile.p) > 64)
        throw precondition_error("simulate_module: size bound exceeded");
    SimModule M;
    M.p = profile.p;
    M.dim = dim;
    M.sigma = IntMatrix(dim, std::vector<Int>(dim, 0));
    IntMatrix C = companion_cyclotomic(p);
    IntMatrix gens;
    for (size_t b = 0; b < profile.njs.size(); ++b) {
        long off = blk * static_cast<long>(b);
        for (long j = 0; j < blk; ++j)
            for (long i = 0; i < blk; ++i) M.sigma[off + j][off + i] = C[j][i];
        // lattice block: columns of (I - C)^n_j
        IntMatrix im = mat_sub(mat_identity(blk), C);
        IntMatrix pw = mat_identity(blk);
        for (long e = 0; e < profile.njs[b]; ++e) pw = mat_mul(im, pw);
        for (long j = 0; j < blk; ++j) {
            std::vector<Int> col(dim, 0);
            for (long i = 0; i < blk; ++i) col[off + i] = pw[j][i];
            gens.push_back(std::move(col));
        }
    }
    if (dim == 0) {
        M.order = 1;
        return M;
    }
    M.lattice = hnf_lattice(gens, dim);
    M.order = lattice_index(M.lattice);
    Int cap;
    mpz_ui_pow_ui(cap.get_mpz_t(), 2, 20);
    if (M.order > cap) throw precondition_error("simulate_module: size bound exceeded");
    return M;
}

SimModule module_from_presentation_multi(const Int& p, unsigned c,
                                         const std::vector<std::vector<Int>>& gs)
{
    if (!is_prime(p)) throw precondition_error("module_from_presentation: p must be prime");
    long pl = mpz_get_si(p.get_mpz_t());
    SimModule M;
    M.p = p;
    M.dim = pl;
    M.sigma = IntMatrix(pl, std::vector<Int>(pl, 0));
    for (long j = 0; j < pl; ++j) M.sigma[j][(j + 1) % pl] = 1;  // multiplication by x
    Int pc = int_pow(p, c);
    IntMatrix gens;
    for (long i = 0; i < pl; ++i) {
        std::vector<Int> col(pl, 0);
        col[i] = pc;
        gens.push_back(std::move(col));
    }
    for (const auto& g : gs) {
        std::vector<Int> gv(pl, 0);
        for (size_t i = 0; i < g.size() && i < static_cast<size_t>(pl); ++i) gv[i] = g[i];
        for (long s = 0; s < pl; ++s) {
            std::vector<Int> col(pl, 0);
            for (long i = 0; i < pl; ++i) col[(i + s) % pl] += gv[i];  // g * x^s
            gens.push_back(std::move(col));
        }
    }
    M.lattice = hnf_lattice(gens, pl);
    M.order = lattice_index(M.lattice);
    return M;
}

SimModule module_from_presentation(const Int& p, unsigned c, const std::vector<Int>& g)
{
    return module_from_presentation_multi(p, c, {g});
}

Int kernel_size(const SimModule& M, const IntMatrix& A)
{
    if (M.dim == 0) return 1;
    // #ker = [Z^n : A Z^n + L]
    IntMatrix cols = A;
    for (const auto& c : M.lattice) cols.push_back(c);
    return lattice_index(hnf_lattice(std::move(cols), M.dim));
}

std::vector<Int> brute_filtration(const SimModule& M)
{
    if (M.dim == 0 || M.order == 1) return {};
    IntMatrix one_minus = mat_sub(mat_identity(M.dim), M.sigma);
    std::vector<Int> orders;
    Int cap;
    mpz_ui_pow_ui(cap.get_mpz_t(), 2, 14);
    bool enumerate = M.order <= cap;
    IntMatrix pw = mat_identity(M.dim);
    Int prev = 1;
    for (long i = 1;; ++i) {
        pw = mat_mul(one_minus, pw);
        Int ki;
        if (enumerate) {
            // walk the coset box and count kernel elements directly
            std::vector<Int> idx(M.dim, 0);
            Int count = 0;
            while (true) {
                std::vector<Int> img(M.dim, 0);
                for (long j = 0; j < M.dim; ++j)
                    if (idx[j] != 0)
                        for (long r = 0; r < M.dim; ++r) img[r] += pw[j][r] * idx[j];
                bool zero = true;
                for (const Int& v : reduce_vec(img, M.lattice))
                    if (v != 0) {
                        zero = false;
                        break;
                    }
                if (zero) ++count;
                long j = 0;
                while (j < M.dim) {
                    ++idx[j];
                    if (idx[j] < M.lattice[j][j]) break;
                    idx[j] = 0;
                    ++j;
                }
                if (j == M.dim) break;
            }
            ki = count;
        } else {
            ki = kernel_size(M, pw);
        }
        if (ki % prev != 0) throw internal_error("brute_filtration: non-divisible kernel chain");
        orders.push_back(ki / prev);
        prev = ki;
        if (ki == M.order) break;
        if (i > 200) throw internal_error("brute_filtration: runaway chain");
    }
    return orders;
}

ClassGroupStructure module_structure(const SimModule& M)
{
    ClassGroupStructure s;
    s.order = M.order;
    if (M.dim == 0) return s;
    for (const Int& d : smith_divisors(M.lattice, M.dim))
        if (d > 1) s.elementary_divisors.push_back(d);
    std::sort(s.elementary_divisors.begin(), s.elementary_divisors.end());
    Int check = 1;
    for (const Int& d : s.elementary_divisors) check *= d;
    if (check != M.order) throw internal_error("module_structure: order mismatch");
    return s;
}

bool nu_trivial(const SimModule& M)
{
    if (M.dim == 0) return true;
    long pl = mpz_get_si(M.p.get_mpz_t());
    IntMatrix nu(M.dim, std::vector<Int>(M.dim, 0));
    IntMatrix pw = mat_identity(M.dim);
    for (long i = 0; i < pl; ++i) {
        for (long j = 0; j < M.dim; ++j)
            for (long r = 0; r < M.dim; ++r) nu[j][r] += pw[j][r];
        pw = mat_mul(M.sigma, pw);
    }
    for (const auto& col : nu)
        for (const Int& v : reduce_vec(col, M.lattice))
            if (v != 0) return false;
    return true;
}

long filtration_length(const SimModule& M)
{
    return static_cast<long>(brute_filtration(M).size());
}

Int ambiguous_size(const SimModule& M)
{
    if (M.dim == 0) return 1;
    return kernel_size(M, mat_sub(mat_identity(M.dim), M.sigma));
}

}  // namespace ambiclass
