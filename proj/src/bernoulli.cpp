#include "ambiclass/bernoulli.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>

namespace ambiclass {

namespace {

// Phi_n and the reduction table x^k mod Phi_n for k < n, cached per level.
struct CycloTables {
    std::vector<Int> phi;                     // monic, ascending coefficients
    std::vector<std::vector<Rat>> powers;     // x^k mod Phi_n
};

std::vector<Int> poly_divide_exact(const std::vector<Int>& num, const std::vector<Int>& den)
{
    std::vector<Int> r = num, q(num.size() - den.size() + 1, Int(0));
    for (long i = static_cast<long>(r.size()) - 1; i >= static_cast<long>(den.size()) - 1; --i) {
        if (r[i] == 0) continue;
        Int c = r[i] / den.back();
        if (c * den.back() != r[i]) throw internal_error("cyclotomic: non-exact division");
        long off = i - (static_cast<long>(den.size()) - 1);
        q[off] = c;
        for (size_t j = 0; j < den.size(); ++j) r[off + j] -= c * den[j];
    }
    for (const Int& v : r)
        if (v != 0) throw internal_error("cyclotomic: nonzero remainder");
    return q;
}

const CycloTables& tables_for(long n)
{
    static std::mutex mu;
    static std::map<long, CycloTables> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, recursively from d = 1
    std::map<long, std::vector<Int>> phis;
    for (long d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        std::vector<Int> num(d + 1, Int(0));
        num[0] = -1;
        num[d] = 1;
        std::vector<Int> acc{1};
        for (auto& [e, ph] : phis) {
            if (d % e != 0) continue;
            std::vector<Int> prod(acc.size() + ph.size() - 1, Int(0));
            for (size_t i = 0; i < acc.size(); ++i)
                for (size_t j = 0; j < ph.size(); ++j) prod[i + j] += acc[i] * ph[j];
            acc = std::move(prod);
        }
        phis[d] = poly_divide_exact(num, acc);
    }
    CycloTables t;
    t.phi = phis[n];
    long deg = static_cast<long>(t.phi.size()) - 1;
    t.powers.resize(n);
    std::vector<Rat> cur(deg, Rat(0));
    cur[0] = 1;
    for (long k = 0; k < n; ++k) {
        t.powers[k] = cur;
        // multiply by x and reduce by the monic Phi_n
        std::vector<Rat> nxt(deg, Rat(0));
        Rat top = cur[deg - 1];
        for (long i = deg - 1; i > 0; --i) nxt[i] = cur[i - 1];
        nxt[0] = 0;
        if (top != 0)
            for (long i = 0; i < deg; ++i) nxt[i] -= top * Rat(t.phi[i]);
        cur = std::move(nxt);
    }
    auto [pos, ok] = cache.emplace(n, std::move(t));
    return pos->second;
}

}  // namespace

Cyclotomic::Cyclotomic(long n, std::vector<Rat> coeff) : n_(n), coeff_(std::move(coeff))
{
    size_t deg = tables_for(n_).phi.size() - 1;
    coeff_.resize(deg, Rat(0));
    for (auto& c : coeff_) c.canonicalize();
}

Cyclotomic Cyclotomic::zero(long n)
{
    size_t deg = tables_for(n).phi.size() - 1;
    return Cyclotomic(n, std::vector<Rat>(deg, Rat(0)));
}

Cyclotomic Cyclotomic::root_power(long n, long k)
{
    k %= n;
    if (k < 0) k += n;
    return Cyclotomic(n, tables_for(n).powers[k]);
}

bool Cyclotomic::is_zero() const
{
    for (const Rat& c : coeff_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const
{
    for (size_t i = 1; i < coeff_.size(); ++i)
        if (coeff_[i] != 0) return false;
    return true;
}

Rat Cyclotomic::rational() const
{
    if (!is_rational()) throw precondition_error("Cyclotomic: not rational");
    return coeff_[0];
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const
{
    if (n_ != o.n_) throw precondition_error("Cyclotomic: mixed levels");
    std::vector<Rat> c = coeff_;
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.coeff_[i];
    return Cyclotomic(n_, std::move(c));
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const
{
    if (n_ != o.n_) throw precondition_error("Cyclotomic: mixed levels");
    std::vector<Rat> c = coeff_;
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coeff_[i];
    return Cyclotomic(n_, std::move(c));
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const
{
    if (n_ != o.n_) throw precondition_error("Cyclotomic: mixed levels");
    const auto& t = tables_for(n_);
    long deg = static_cast<long>(t.phi.size()) - 1;
    std::vector<Rat> prod(2 * deg - 1, Rat(0));
    for (long i = 0; i < deg; ++i) {
        if (coeff_[i] == 0) continue;
        for (long j = 0; j < deg; ++j) {
            if (o.coeff_[j] == 0) continue;
            prod[i + j] += coeff_[i] * o.coeff_[j];
        }
    }
    // fold the high powers down with the monic relation
    for (long k = 2 * deg - 2; k >= deg; --k) {
        Rat top = prod[k];
        if (top == 0) continue;
        prod[k] = 0;
        for (long i = 0; i < deg; ++i) prod[k - deg + i] -= top * Rat(t.phi[i]);
    }
    prod.resize(deg);
    return Cyclotomic(n_, std::move(prod));
}

Cyclotomic Cyclotomic::scale(const Rat& r) const
{
    std::vector<Rat> c = coeff_;
    for (auto& v : c) v *= r;
    return Cyclotomic(n_, std::move(c));
}

Cyclotomic Cyclotomic::galois(long j) const
{
    j %= n_;
    if (j < 0) j += n_;
    if (std::gcd(j, n_) != 1) throw precondition_error("Cyclotomic: non-unit Galois index");
    Cyclotomic out = zero(n_);
    for (size_t i = 0; i < coeff_.size(); ++i) {
        if (coeff_[i] == 0) continue;
        out = out + root_power(n_, static_cast<long>(i) * j % n_).scale(coeff_[i]);
    }
    return out;
}

Rat Cyclotomic::norm() const
{
    Cyclotomic acc = root_power(n_, 0);
    for (long j = 1; j <= n_; ++j) {
        if (std::gcd(j, n_) != 1) continue;
        acc = acc * galois(j);
    }
    if (!acc.is_rational()) throw internal_error("Cyclotomic: norm not rational");
    return acc.rational();
}

std::vector<Int> Cyclotomic::cyclotomic_polynomial(long n)
{
    return tables_for(n).phi;
}

DirichletCharacter DirichletCharacter::trivial()
{
    DirichletCharacter c;
    c.f_ = 1;
    c.order_ = 1;
    return c;
}

DirichletCharacter DirichletCharacter::quadratic(const Int& D)
{
    if (!is_fundamental_discriminant(D))
        throw precondition_error("quadratic character: non-fundamental discriminant");
    DirichletCharacter c;
    c.f_ = abs(D);
    c.order_ = 2;
    Component comp;
    comp.modulus = c.f_;
    comp.order = 2;
    long f = mpz_get_si(c.f_.get_mpz_t());
    comp.table.resize(f);
    for (long a = 0; a < f; ++a) {
        int k = kronecker(D, a);
        comp.table[a] = k == 0 ? -1 : (k == 1 ? 0 : 1);
    }
    c.components_.push_back(std::move(comp));
    return c;
}

DirichletCharacter DirichletCharacter::cubic(const Int& ell, int cexp)
{
    if (!is_prime(ell) || ell % 3 != 1)
        throw precondition_error("cubic character: need a prime = 1 mod 3");
    if (cexp != 1 && cexp != 2) throw precondition_error("cubic character: exponent must be 1 or 2");
    long l = mpz_get_si(ell.get_mpz_t());
    // smallest primitive root mod l
    auto fac = factorize(Int(l - 1));
    long g = 0;
    for (long cand = 2; cand < l && g == 0; ++cand) {
        bool ok = true;
        for (const auto& [q, e] : fac.factors) {
            if (pow_mod(Int(cand), Int((l - 1) / mpz_get_si(q.get_mpz_t())), ell) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) g = cand;
    }
    if (g == 0) throw internal_error("cubic character: no primitive root");
    DirichletCharacter c;
    c.f_ = ell;
    c.order_ = 3;
    Component comp;
    comp.modulus = ell;
    comp.order = 3;
    comp.table.assign(l, -1);
    long x = 1;
    for (long k = 0; k < l - 1; ++k) {
        comp.table[x] = static_cast<int>((static_cast<long>(cexp) * k) % 3);
        x = static_cast<long>((static_cast<__int128>(x) * g) % l);
    }
    c.components_.push_back(std::move(comp));
    return c;
}

DirichletCharacter DirichletCharacter::times(const DirichletCharacter& o) const
{
    if (gcd(f_, o.f_) != 1) throw precondition_error("character product: conductors not coprime");
    DirichletCharacter c;
    c.f_ = f_ * o.f_;
    c.order_ = std::lcm(order_, o.order_);
    c.components_ = components_;
    c.components_.insert(c.components_.end(), o.components_.begin(), o.components_.end());
    return c;
}

long DirichletCharacter::exponent(const Int& a) const
{
    long e = 0;
    for (const auto& comp : components_) {
        Int r = a % comp.modulus;
        if (r < 0) r += comp.modulus;
        int t = comp.table[mpz_get_si(r.get_mpz_t())];
        if (t < 0) return -1;
        e = (e + static_cast<long>(t) * (order_ / comp.order)) % order_;
    }
    return e;
}

bool DirichletCharacter::odd() const
{
    long e = exponent(Int(-1));
    if (e < 0) throw internal_error("character: -1 not coprime to conductor");
    return order_ % 2 == 0 && e == order_ / 2;
}

std::vector<DirichletCharacter::ComponentView> DirichletCharacter::component_views() const
{
    std::vector<ComponentView> out;
    for (const auto& comp : components_)
        out.push_back({mpz_get_si(comp.modulus.get_mpz_t()), order_ / comp.order, &comp.table});
    return out;
}

Cyclotomic b1(const DirichletCharacter& psi)
{
    Int fI = psi.conductor();
    if (fI > Int(3000000000L)) throw precondition_error("b1: conductor too large");
    long f = mpz_get_si(fI.get_mpz_t());
    long N = psi.order();

    // accumulate sum(a) per character exponent with incremental residues;
    // every class sum is below f^2 and fits in 64 bits
    auto views = psi.component_views();
    std::vector<long> res(views.size(), 0);
    std::vector<long long> sums(N, 0);
    for (long a = 1; a <= f; ++a) {
        long e = 0;
        bool coprime = true;
        for (size_t i = 0; i < views.size(); ++i) {
            if (++res[i] == views[i].modulus) res[i] = 0;
            if (!coprime) continue;
            int tval = (*views[i].table)[res[i]];
            if (tval < 0)
                coprime = false;
            else
                e += static_cast<long>(tval) * views[i].scale;
        }
        if (!coprime) continue;
        sums[e % N] += a;
    }
    Cyclotomic acc = Cyclotomic::zero(N);
    for (long k = 0; k < N; ++k) {
        if (sums[k] == 0) continue;
        Int sk;
        mpz_set_si(sk.get_mpz_t(), sums[k]);
        acc = acc + Cyclotomic::root_power(N, k).scale(Rat(sk));
    }
    Rat inv_f(1, fI);
    inv_f.canonicalize();
    return acc.scale(inv_f);
}

std::map<long, Rat> stickelberger(const Int& m, const DirichletCharacter& psi)
{
    if (m < 1) throw precondition_error("stickelberger: modulus must be >= 1");
    std::map<long, Rat> coeff;
    if (m == 1) return coeff;
    if (m % psi.conductor() != 0)
        throw precondition_error("stickelberger: modulus not a multiple of the conductor");
    long N = psi.order();
    long ml = mpz_get_si(m.get_mpz_t());
    for (long a = 1; a <= ml; ++a) {
        if (gcd(Int(a), m) != 1) continue;
        long e = psi.exponent(Int(a));
        if (e < 0) throw internal_error("stickelberger: coprime residue not coprime to conductor");
        long j = (N - e) % N;  // exponent of sigma_a^{-1}
        Rat v(Int(2 * a - ml), Int(2 * ml));
        v.canonicalize();
        coeff[j] += v;
    }
    return coeff;
}

MwkReport mwk_order_check(const Int& D, const Int& p)
{
    if (D >= 0 || !is_fundamental_discriminant(D))
        throw precondition_error("mwk_order_check: need a negative fundamental discriminant");
    if (!is_prime(p) || p == 2) throw precondition_error("mwk_order_check: p must be an odd prime");
    MwkReport r;
    if (D == -3 && p == 3) {
        r.omega_excluded = true;
        return r;
    }
    Cyclotomic B = b1(DirichletCharacter::quadratic(D));
    Rat b = B.rational();
    if (b == 0) throw internal_error("mwk_order_check: vanishing Bernoulli number");
    r.v_analytic = valuation(b, p);
    Int h = FormClassGroup::get(D)->class_number(Sense::narrow);
    r.v_oracle = (h % p == 0) ? valuation(h, p) : 0;
    r.pass = r.v_analytic == r.v_oracle;
    return r;
}

namespace {

// (1 - zeta_3)-adic valuation via the norm to Q: N(1 - zeta_3) = 3.
long lambda_valuation(const Cyclotomic& a)
{
    if (a.is_zero()) throw internal_error("lambda_valuation: zero value");
    return valuation(a.norm(), Int(3));
}

void search_tuples(const std::vector<Int>& cands, long t, size_t start, std::vector<Int>& cur,
                   const std::function<void(const std::vector<Int>&)>& emit)
{
    if (static_cast<long>(cur.size()) == t) {
        emit(cur);
        return;
    }
    for (size_t i = start; i < cands.size(); ++i) {
        cur.push_back(cands[i]);
        search_tuples(cands, t, i + 1, cur, emit);
        cur.pop_back();
    }
}

}  // namespace

AdmissibleSearchResult admissible_search(const Int& D, const Int& p, long t, const Int& bound)
{
    if (p != 3) throw precondition_error("admissible_search: implemented for p = 3 only");
    if (D >= 0 || !is_fundamental_discriminant(D))
        throw precondition_error("admissible_search: need a negative fundamental discriminant");
    if (D == -3) throw precondition_error("admissible_search: chi must differ from the Teichmuller character");
    if (t < 1) throw precondition_error("admissible_search: t must be >= 1");

    std::vector<Int> cands;
    for (long l : primes_up_to(mpz_get_si(bound.get_mpz_t())))
        if (l % 3 == 1 && kronecker(D, Int(l)) == 1) cands.emplace_back(l);

    DirichletCharacter chi = DirichletCharacter::quadratic(D);
    AdmissibleSearchResult out;
    std::vector<Int> cur;
    search_tuples(cands, t, 0, cur, [&](const std::vector<Int>& primes) {
        // order-3 characters of exact conductor prod(ell), modulo conjugation
        long nexp = t > 1 ? (1L << (t - 1)) : 1;
        AdmissibleSet best;
        bool found = false;
        for (long mask = 0; mask < nexp; ++mask) {
            std::vector<int> exps{1};
            for (long i = 1; i < t; ++i) exps.push_back((mask >> (i - 1)) & 1 ? 2 : 1);
            DirichletCharacter phi = DirichletCharacter::cubic(primes[0], exps[0]);
            for (long i = 1; i < t; ++i) phi = phi.times(DirichletCharacter::cubic(primes[i], exps[i]));
            Cyclotomic B = b1(chi.times(phi));
            long v = lambda_valuation(B);
            if (v < t) throw internal_error("admissible_search: valuation below t");
            if (v == t) {
                out.admissible.push_back({primes, exps, v});
                found = true;
                break;
            }
            if (!found && (best.primes.empty() || v < best.valuation)) best = {primes, exps, v};
        }
        if (!found && !best.primes.empty()) out.higher_valuation.push_back(best);
    });
    return out;
}

bool verify_generation(const Int& D, const std::vector<Int>& primes, const Int& p)
{
    auto group = FormClassGroup::get(D);
    QuadraticField k = field_from_discriminant(D);
    std::vector<long> gens;
    for (const Int& l : primes) {
        if (splitting_type(k, l) == SplitType::inert)
            throw precondition_error("verify_generation: inert prime");
        PrimeIdeal P = prime_ideal_above(k, l);
        gens.push_back(group->class_of_form(P.form_rep));
    }
    Int sub = Int(static_cast<long>(group->subgroup(gens).size()));
    Int h = group->class_number(Sense::narrow);
    long vs = (sub % p == 0) ? valuation(sub, p) : 0;
    long vh = (h % p == 0) ? valuation(h, p) : 0;
    return vs == vh;
}

}  // namespace ambiclass
