#include "ambiclass/formclass.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace ambiclass {

bool is_primitive(const QuadForm& f)
{
    return gcd(gcd(f.a, f.b), f.c) == 1;
}

QuadForm apply(const QuadForm& f, const Mat2& u)
{
    Int a2 = f.a * u.p * u.p + f.b * u.p * u.r + f.c * u.r * u.r;
    Int b2 = 2 * f.a * u.p * u.q + f.b * (u.p * u.s + u.q * u.r) + 2 * f.c * u.r * u.s;
    Int c2 = f.a * u.q * u.q + f.b * u.q * u.s + f.c * u.s * u.s;
    return {a2, b2, c2};
}

QuadForm principal_form(const Int& D)
{
    Int b0 = ((D % 2) + 2) % 2;
    return {1, b0, (b0 * b0 - D) / 4};
}

bool is_reduced_definite(const QuadForm& f)
{
    if (f.a <= 0) return false;
    if (!(-f.a < f.b && f.b <= f.a && f.a <= f.c)) return false;
    if (f.a == f.c && f.b < 0) return false;
    return true;
}

bool is_reduced_indefinite(const QuadForm& f)
{
    Int D = f.disc();
    if (f.b <= 0 || f.b * f.b >= D) return false;
    Int ta = 2 * abs(f.a);
    // sqrt(D) - b < 2|a| < sqrt(D) + b
    if ((ta + f.b) * (ta + f.b) <= D) return false;
    if (ta > f.b && (ta - f.b) * (ta - f.b) >= D) return false;
    return true;
}

QuadForm reduce_definite(const QuadForm& f0, Mat2* transform)
{
    QuadForm f = f0;
    Int D = f.disc();
    if (D >= 0) throw precondition_error("reduce_definite: discriminant not negative");
    if (f.a <= 0) throw precondition_error("reduce_definite: form not positive definite");
    Mat2 u;
    int guard = 0;
    while (true) {
        if (++guard > 100000) throw internal_error("reduce_definite: no convergence");
        if (f.b <= -f.a || f.b > f.a) {
            // translate b into (-a, a]
            Int t;
            mpz_fdiv_q(t.get_mpz_t(), Int(f.a - f.b).get_mpz_t(), Int(2 * f.a).get_mpz_t());
            f.b += 2 * f.a * t;
            f.c = (f.b * f.b - D) / (4 * f.a);
            u = u * Mat2{1, t, 0, 1};
        }
        if (f.a > f.c) {
            f = QuadForm{f.c, -f.b, f.a};
            u = u * Mat2{0, -1, 1, 0};
            continue;
        }
        break;
    }
    if (f.a == f.c && f.b < 0) {
        f = QuadForm{f.c, -f.b, f.a};
        u = u * Mat2{0, -1, 1, 0};
    }
    if (transform) *transform = *transform * u;
    return f;
}

QuadForm rho_step(const QuadForm& f, Mat2* transform)
{
    Int D = f.disc();
    Int s = isqrt(D);
    Int ac = abs(f.c);
    Int tc = 2 * ac;
    Int bp;
    if (ac > s) {
        // normalize into (-|c|, |c|]
        bp = (-f.b) % tc;
        if (bp < 0) bp += tc;
        if (bp > ac) bp -= tc;
    } else {
        // unique residue of -b mod 2|c| in (sqrt(D) - 2|c|, sqrt(D))
        Int lo = s - tc + 1;
        Int r = (-f.b - lo) % tc;
        if (r < 0) r += tc;
        bp = lo + r;
    }
    Int t = (f.b + bp) / (2 * f.c);
    if ((f.b + bp) % (2 * f.c) != 0) throw internal_error("rho_step: bad residue");
    QuadForm g{f.c, bp, (bp * bp - D) / (4 * f.c)};
    if (transform) *transform = *transform * Mat2{0, -1, 1, t};
    return g;
}

QuadForm reduce_indefinite(const QuadForm& f0, Mat2* transform)
{
    Int D = f0.disc();
    if (D <= 0 || is_square(D))
        throw precondition_error("reduce_indefinite: discriminant not positive nonsquare");
    QuadForm f = f0;
    int guard = 0;
    while (!is_reduced_indefinite(f)) {
        if (++guard > 100000) throw internal_error("reduce_indefinite: no convergence");
        f = rho_step(f, transform);
    }
    return f;
}

QuadForm reduce(const QuadForm& f, Mat2* transform)
{
    Int D = f.disc();
    if (is_square(D)) throw precondition_error("reduce: square discriminant");
    return D < 0 ? reduce_definite(f, transform) : reduce_indefinite(f, transform);
}

QuadForm compose_raw(const QuadForm& f, const QuadForm& g, Int* e_out)
{
    Int D = f.disc();
    if (g.disc() != D) throw precondition_error("compose: mismatched discriminants");
    if (!is_primitive(f) || !is_primitive(g)) throw precondition_error("compose: imprimitive form");
    if (f.a <= 0 || g.a <= 0) throw precondition_error("compose: need positive leading coefficients");
    Int s = (f.b + g.b) / 2;
    Int u, v, u2, w;
    Int d1 = ext_gcd(f.a, g.a, u, v);
    Int e = ext_gcd(d1, s, u2, w);
    Int x = u2 * u, y = u2 * v, z = w;
    // x*a1 + y*a2 + z*s = e
    Int a3 = f.a * g.a / (e * e);
    Int num = x * f.a * g.b + y * g.a * f.b + z * (f.b * g.b + D) / 2;
    if (num % e != 0) throw internal_error("compose: non-integral middle coefficient");
    Int b3 = (num / e) % (2 * a3);
    if (b3 < 0) b3 += 2 * a3;
    Int c3num = b3 * b3 - D;
    if (c3num % (4 * a3) != 0) throw internal_error("compose: broken congruence");
    if (e_out) *e_out = e;
    return {a3, b3, c3num / (4 * a3)};
}

std::optional<UnitLeading> reduce_to_unit_leading(const QuadForm& f, bool want_plus,
                                                  bool want_minus)
{
    Int D = f.disc();
    Mat2 u;
    if (D < 0) {
        QuadForm r = reduce_definite(f, &u);
        if (want_plus && r.a == 1) return UnitLeading{r, u};
        return std::nullopt;
    }
    QuadForm start = reduce_indefinite(f, &u);
    QuadForm cur = start;
    int guard = 0;
    do {
        if ((want_plus && cur.a == 1) || (want_minus && cur.a == -1)) return UnitLeading{cur, u};
        cur = rho_step(cur, &u);
        if (++guard > 10000000) throw internal_error("reduce_to_unit_leading: runaway cycle");
    } while (!(cur == start));
    return std::nullopt;
}

std::vector<Int> ClassGroupStructure::sylow(const Int& p) const
{
    std::vector<Int> out;
    for (const auto& d : elementary_divisors) {
        long v = 0;
        Int m = d;
        while (m % p == 0) {
            m /= p;
            ++v;
        }
        if (v > 0) {
            Int pk;
            mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), v);
            out.push_back(pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Greedy invariant-factor extraction for an explicit finite abelian group:
// repeatedly peel an element of maximal order in the current quotient.
template <typename Compose>
std::vector<Int> invariant_factors(long n, long id, Compose comp)
{
    std::set<long> H{id};
    std::vector<Int> divisors;
    while (static_cast<long>(H.size()) < n) {
        long best = -1;
        long best_ord = 0;
        for (long g = 0; g < n; ++g) {
            long x = g, k = 1;
            while (H.find(x) == H.end()) {
                x = comp(x, g);
                ++k;
            }
            if (k > best_ord) {
                best_ord = k;
                best = g;
            }
        }
        if (best_ord <= 1) throw internal_error("invariant_factors: stalled");
        divisors.emplace_back(best_ord);
        std::set<long> H2;
        long pw = best;
        std::vector<long> powers{id};
        for (long j = 1; j < best_ord; ++j) {
            powers.push_back(pw);
            pw = comp(pw, best);
        }
        for (long h : H)
            for (long p : powers) H2.insert(comp(h, p));
        H = std::move(H2);
    }
    std::reverse(divisors.begin(), divisors.end());
    for (size_t i = 0; i + 1 < divisors.size(); ++i)
        if (divisors[i + 1] % divisors[i] != 0)
            throw internal_error("invariant_factors: divisibility chain broken");
    return divisors;
}

std::vector<Int> divisors_of(const Int& n)
{
    auto f = factorize(n);
    std::vector<Int> divs{1};
    for (const auto& [p, e] : f.factors) {
        size_t sz = divs.size();
        Int pk = 1;
        for (unsigned j = 1; j <= e; ++j) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace

FormClassGroup::FormClassGroup(const Int& D) : D_(D)
{
    if (!is_fundamental_discriminant(D))
        throw precondition_error("FormClassGroup: non-fundamental discriminant");
    std::vector<QuadForm> reduced;
    if (D < 0) {
        Int b = ((D % 2) + 2) % 2;
        for (; 3 * b * b <= -D; b += 2) {
            Int n4 = (b * b - D) / 4;
            for (Int a = std::max(b, Int(1)); a * a <= n4; ++a) {
                if (n4 % a != 0) continue;
                Int c = n4 / a;
                if (gcd(gcd(a, b), c) != 1) continue;
                reduced.push_back({a, b, c});
                if (b != 0 && b != a && a != c) reduced.push_back({a, -b, c});
            }
        }
        std::sort(reduced.begin(), reduced.end());
        for (const auto& f : reduced) cycles_.push_back({f});
    } else {
        Int s = isqrt(D);
        Int b = ((D % 2) + 2) % 2;
        if (b == 0) b = 2;
        std::set<QuadForm> all;
        for (; b <= s; b += 2) {
            Int m4 = (D - b * b) / 4;
            for (const Int& a : divisors_of(m4)) {
                Int c = m4 / a;
                QuadForm f1{a, b, -c}, f2{-a, b, c};
                if (is_reduced_indefinite(f1) && is_primitive(f1)) all.insert(f1);
                if (is_reduced_indefinite(f2) && is_primitive(f2)) all.insert(f2);
            }
        }
        // partition into rho-cycles
        std::set<QuadForm> seen;
        for (const auto& f : all) {
            if (seen.count(f)) continue;
            std::vector<QuadForm> cyc;
            QuadForm cur = f;
            do {
                if (!all.count(cur)) throw internal_error("FormClassGroup: rho left the reduced set");
                cyc.push_back(cur);
                seen.insert(cur);
                cur = rho_step(cur);
            } while (!(cur == f));
            cycles_.push_back(std::move(cyc));
        }
        std::sort(cycles_.begin(), cycles_.end(),
                  [](const std::vector<QuadForm>& x, const std::vector<QuadForm>& y) {
                      return *std::min_element(x.begin(), x.end()) <
                             *std::min_element(y.begin(), y.end());
                  });
    }
    for (size_t i = 0; i < cycles_.size(); ++i) {
        reps_.push_back(*std::min_element(cycles_[i].begin(), cycles_[i].end()));
        for (const auto& f : cycles_[i]) index_[f] = static_cast<long>(i);
    }
    identity_ = class_of_form(principal_form(D));
    if (D > 0) {
        Int b0 = ((D % 2) + 2) % 2;
        QuadForm neg{-1, b0, (D - b0 * b0) / 4};
        neg_principal_ = class_of_form(neg);
    } else {
        neg_principal_ = identity_;
    }
}

std::shared_ptr<const FormClassGroup> FormClassGroup::get(const Int& D)
{
    static std::mutex mu;
    static std::map<Int, std::shared_ptr<const FormClassGroup>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(D);
    if (it != cache.end()) return it->second;
    auto g = std::shared_ptr<const FormClassGroup>(new FormClassGroup(D));
    cache[D] = g;
    return g;
}

long FormClassGroup::class_of_form(const QuadForm& f) const
{
    if (f.disc() != D_) throw precondition_error("class_of_form: wrong discriminant");
    QuadForm r = D_ < 0 ? reduce_definite(f) : reduce_indefinite(f);
    auto it = index_.find(r);
    if (it == index_.end()) throw internal_error("class_of_form: reduced form not in table");
    return it->second;
}

long FormClassGroup::compose_direct(long i, long j) const
{
    // compose positive-leading members of each class
    auto pick = [&](long k) -> const QuadForm& {
        for (const auto& f : cycles_[k])
            if (f.a > 0) return f;
        throw internal_error("compose: no positive-leading representative");
    };
    QuadForm h = compose_raw(pick(i), pick(j));
    return class_of_form(h);
}

void FormClassGroup::ensure_table() const
{
    std::call_once(table_once_, [&] {
        long n = size();
        std::vector<long> t(n * n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j <= i; ++j) {
                long v = compose_direct(i, j);
                t[i * n + j] = v;
                t[j * n + i] = v;
            }
        table_ = std::move(t);
    });
}

long FormClassGroup::compose(long i, long j) const
{
    ensure_table();
    return table_[i * size() + j];
}

long FormClassGroup::inverse(long i) const
{
    const QuadForm& f = reps_[i];
    return class_of_form(QuadForm{f.a, -f.b, f.c});
}

long FormClassGroup::power(long i, const Int& e) const
{
    Int k = e;
    long base = i;
    if (k < 0) {
        base = inverse(i);
        k = -k;
    }
    long acc = identity_;
    long sq = base;
    while (k > 0) {
        if (k % 2 == 1) acc = compose(acc, sq);
        sq = compose(sq, sq);
        k /= 2;
    }
    return acc;
}

Int FormClassGroup::order_of(long i) const
{
    long x = i;
    Int k = 1;
    while (x != identity_) {
        x = compose(x, i);
        ++k;
        if (k > Int(size())) throw internal_error("order_of: exceeded group size");
    }
    return k;
}

std::vector<long> FormClassGroup::subgroup(const std::vector<long>& gens) const
{
    std::set<long> h{identity_};
    std::vector<long> frontier{identity_};
    while (!frontier.empty()) {
        std::vector<long> next;
        for (long x : frontier)
            for (long g : gens) {
                long y = compose(x, g);
                if (h.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return std::vector<long>(h.begin(), h.end());
}

ClassGroupStructure FormClassGroup::structure(Sense sense) const
{
    long n = size();
    ClassGroupStructure out;
    if (sense == Sense::narrow || D_ < 0 || neg_principal_ == identity_) {
        out.order = n;
        if (n > 1)
            out.elementary_divisors =
                invariant_factors(n, identity_, [&](long a, long b) { return compose(a, b); });
        return out;
    }
    // ordinary sense: quotient by the order-2 class of (-1, b, c)
    long p = neg_principal_;
    std::vector<long> canon(n), label(n, -1);
    for (long i = 0; i < n; ++i) canon[i] = std::min(i, compose(i, p));
    std::vector<long> reps;
    for (long i = 0; i < n; ++i)
        if (canon[i] == i) {
            label[i] = static_cast<long>(reps.size());
            reps.push_back(i);
        }
    long qn = static_cast<long>(reps.size());
    auto qcomp = [&](long a, long b) { return label[canon[compose(reps[a], reps[b])]]; };
    out.order = qn;
    if (qn > 1) out.elementary_divisors = invariant_factors(qn, label[canon[identity_]], qcomp);
    return out;
}

Int FormClassGroup::class_number(Sense sense) const
{
    return structure(sense).order;
}

ClassGroupStructure class_group(const Int& D, Sense sense)
{
    return FormClassGroup::get(D)->structure(sense);
}

}  // namespace ambiclass
