#include "ambiclass/quadfield.hpp"

#include <map>
#include <tuple>

namespace ambiclass {

QuadElement::QuadElement(Int x_, Int y_, Int z_, Int m_) : x(x_), y(y_), z(z_), m(m_)
{
    if (z == 0) throw precondition_error("QuadElement: zero denominator");
    if (z < 0) {
        x = -x;
        y = -y;
        z = -z;
    }
    Int g = gcd(gcd(x, y), z);
    if (g > 1) {
        x /= g;
        y /= g;
        z /= g;
    }
}

Rat QuadElement::norm() const
{
    Rat n(x * x - m * y * y);
    n /= Rat(z * z);
    n.canonicalize();
    return n;
}

Rat QuadElement::trace() const
{
    Rat t(2 * x);
    t /= Rat(z);
    t.canonicalize();
    return t;
}

QuadElement QuadElement::conj() const
{
    return QuadElement(x, -y, z, m);
}

bool QuadElement::operator==(const QuadElement& o) const
{
    return x == o.x && y == o.y && z == o.z && m == o.m;
}

QuadElement operator*(const QuadElement& a, const QuadElement& b)
{
    if (a.m != b.m) throw precondition_error("QuadElement: mixed fields");
    return QuadElement(a.x * b.x + a.m * a.y * b.y, a.x * b.y + a.y * b.x, a.z * b.z, a.m);
}

QuadElement operator*(const QuadElement& a, const Rat& r)
{
    return QuadElement(a.x * r.get_num(), a.y * r.get_num(), a.z * r.get_den(), a.m);
}

QuadElement inverse(const QuadElement& a)
{
    Int n = a.x * a.x - a.m * a.y * a.y;
    if (n == 0) throw precondition_error("QuadElement: not invertible");
    return QuadElement(a.x * a.z, -a.y * a.z, n, a.m);
}

namespace {

// Sign of (x + y sqrt(m))/z under the embedding with sqrt(m) > 0 (m > 0).
int sign_real(const QuadElement& e)
{
    if (e.y == 0) return sgn(e.x);
    if (e.x == 0 || sgn(e.x) == sgn(e.y)) return sgn(e.y);
    // x and y have opposite signs: compare x^2 against m y^2
    return e.m * e.y * e.y > e.x * e.x ? sgn(e.y) : sgn(e.x);
}

// Fundamental unit by the continued fraction of sqrt(m) (m = 2, 3 mod 4) or
// (1 + sqrt(m))/2 (m = 1 mod 4): iterate the complete quotients
// (P + sqrt(m))/Q, detect the period, and accumulate the convergent matrix
// over one full period starting at a reduced quotient.
QuadElement continued_fraction_unit(const Int& m)
{
    Int mmod = ((m % 4) + 4) % 4;
    Int P = mmod == 1 ? 1 : 0;
    Int Q = mmod == 1 ? 2 : 1;
    Int s = isqrt(m);
    std::map<std::pair<Int, Int>, long> seen;
    std::vector<std::tuple<Int, Int, Int>> states;  // (P, Q, a)
    long cycle_start = -1;
    for (long step = 0;; ++step) {
        if (step > 1000000)
            throw precondition_error("fundamental unit: continued fraction period exceeds bound");
        auto key = std::make_pair(P, Q);
        auto it = seen.find(key);
        if (it != seen.end()) {
            cycle_start = it->second;
            break;
        }
        seen[key] = step;
        if (Q <= 0) throw internal_error("continued fraction: nonpositive denominator");
        Int a;
        mpz_fdiv_q(a.get_mpz_t(), Int(P + s).get_mpz_t(), Q.get_mpz_t());
        states.emplace_back(P, Q, a);
        Int Pn = a * Q - P;
        if ((m - Pn * Pn) % Q != 0) throw internal_error("continued fraction: broken invariant");
        Int Qn = (m - Pn * Pn) / Q;
        P = Pn;
        Q = Qn;
    }
    Int p = 1, pp = 0, q = 0, qq = 1;
    for (size_t i = cycle_start; i < states.size(); ++i) {
        const Int& a = std::get<2>(states[i]);
        Int np = p * a + pp, nq = q * a + qq;
        pp = p;
        qq = q;
        p = np;
        q = nq;
    }
    const Int& Pj = std::get<0>(states[cycle_start]);
    const Int& Qj = std::get<1>(states[cycle_start]);
    QuadElement unit(q * Pj + qq * Qj, q, Qj, m);
    Rat n = unit.norm();
    if (n != 1 && n != -1) throw internal_error("fundamental unit: norm not a unit");
    if (sign_real(unit) < 0) unit = unit * Rat(-1);
    return unit;
}

}  // namespace

QuadraticField make_field(const Int& m)
{
    if (m == 0 || m == 1) throw precondition_error("make_field: m must not be 0 or 1");
    if (!is_squarefree(m)) throw precondition_error("make_field: m not squarefree");
    QuadraticField k;
    k.m = m;
    Int mmod = ((m % 4) + 4) % 4;
    k.D = mmod == 1 ? m : 4 * m;
    for (const auto& [p, e] : factorize(k.D).factors) k.ramified.push_back(p);
    k.real = m > 0;
    if (k.real) {
        k.fundamental_unit = continued_fraction_unit(m);
        k.unit_norm = k.fundamental_unit.norm() == -1 ? -1 : 1;
    } else {
        k.torsion_w = k.D == -3 ? 6 : k.D == -4 ? 4 : 2;
    }
    return k;
}

QuadraticField field_from_discriminant(const Int& D)
{
    if (!is_fundamental_discriminant(D))
        throw precondition_error("field_from_discriminant: non-fundamental discriminant");
    Int r = ((D % 4) + 4) % 4;
    return make_field(r == 1 ? D : D / 4);
}

SplitType splitting_type(const QuadraticField& k, const Int& ell)
{
    if (!is_prime(ell)) throw precondition_error("splitting_type: not a prime");
    if (k.D % ell == 0) return SplitType::ramified;
    return kronecker(k.D, ell) == 1 ? SplitType::split : SplitType::inert;
}

PrimeIdeal prime_ideal_above(const QuadraticField& k, const Int& ell)
{
    SplitType st = splitting_type(k, ell);
    if (st == SplitType::inert) throw precondition_error("no degree-one ideal");
    const Int& D = k.D;
    Int dpar = ((D % 2) + 2) % 2;
    Int b(-1);
    if (ell == 2) {
        if (st == SplitType::ramified) {
            Int m2 = D / 4;
            b = (m2 % 2 == 0) ? 0 : 2;
        } else {
            b = 1;  // split at 2 means D = 1 mod 8
        }
    } else {
        Int dm = D % ell;
        if (dm < 0) dm += ell;
        Int r = st == SplitType::ramified ? Int(0) : sqrt_mod_prime(dm, ell);
        Int tl = 2 * ell;
        for (Int cand : std::vector<Int>{r, Int(ell - r), Int(r + ell), Int(tl - r)}) {
            cand %= tl;
            if (cand < 0) cand += tl;
            if (cand % 2 != dpar) continue;
            if ((cand * cand - D) % (4 * ell) != 0) continue;
            if (b < 0 || cand < b) b = cand;
        }
        if (b < 0) throw internal_error("prime_ideal_above: no residue found");
    }
    if ((b * b - D) % (4 * ell) != 0) throw internal_error("prime_ideal_above: bad b");
    return PrimeIdeal{ell, st, b, QuadForm{ell, b, (b * b - D) / (4 * ell)}};
}

QuadIdeal ideal_one(const Int& D)
{
    Int dpar = ((D % 2) + 2) % 2;
    return QuadIdeal{1, 1, dpar};
}

QuadIdeal ideal_of_prime(const PrimeIdeal& p)
{
    return QuadIdeal{1, p.ell, p.b};
}

QuadIdeal ideal_conj(const QuadIdeal& I, const Int& D)
{
    (void)D;
    Int b = (-I.b) % (2 * I.a);
    if (b < 0) b += 2 * I.a;
    return QuadIdeal{I.content, I.a, b};
}

QuadIdeal ideal_mul(const Int& D, const QuadIdeal& I, const QuadIdeal& J)
{
    Int e;
    QuadForm h = compose_raw(I.form(D), J.form(D), &e);
    return QuadIdeal{I.content * J.content * e, h.a, h.b};
}

QuadIdeal ideal_pow(const Int& D, const QuadIdeal& I, unsigned e)
{
    QuadIdeal acc = ideal_one(D);
    for (unsigned i = 0; i < e; ++i) acc = ideal_mul(D, acc, I);
    return acc;
}

long ideal_valuation(const QuadraticField& k, const QuadElement& e, const PrimeIdeal& P)
{
    if (P.type == SplitType::inert) throw precondition_error("ideal_valuation: inert prime");
    if (e.x == 0 && e.y == 0) throw precondition_error("ideal_valuation: zero element");
    const Int& q = P.ell;
    if (P.type == SplitType::ramified) {
        // sigma fixes the prime, so v(e) = v_q(N(e)) exactly
        return valuation(e.norm(), q);
    }
    // split: embed via the q-adic root of D selected by the ideal (sqrt(D) = -b)
    Int A, B, Z;
    if (k.D == k.m) {
        A = e.x;
        B = e.y;
        Z = e.z;
    } else {
        A = 2 * e.x;
        B = e.y;
        Z = 2 * e.z;
    }
    long vz = (Z % q == 0) ? valuation(Z, q) : 0;
    if (B == 0) return valuation(A, q) - vz;
    Int nrm = A * A - B * B * k.D;
    if (nrm == 0) throw internal_error("ideal_valuation: zero norm");
    long nv = (nrm % q == 0) ? valuation(nrm, q) : 0;
    long vb = (B % q == 0) ? valuation(B, q) : 0;
    // v(A + B s) <= nv for integral A + B sqrt(D); pick the precision so the
    // root approximation error q^(prec + vb - 1) stays above that
    unsigned prec = static_cast<unsigned>(nv + vb + 3);
    Int s0 = -P.b;
    Int s = hensel_sqrt(k.D, q, prec, s0);
    Int qk;
    mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), prec);
    Int res = (A + B * s) % qk;
    if (res < 0) res += qk;
    if (res == 0) throw internal_error("ideal_valuation: precision exhausted");
    long v = 0;
    while (res % q == 0) {
        res /= q;
        ++v;
    }
    if (v > nv) throw internal_error("ideal_valuation: valuation exceeds norm bound");
    return v - vz;
}

std::optional<QuadElement> solve_norm_equation(const QuadraticField& k, const Rat& x)
{
    if (x == 0) throw precondition_error("solve_norm_equation: x must be nonzero");
    Int num = x.get_num(), den = x.get_den();
    Int T = num * den;

    if (!k.real && T < 0) return std::nullopt;
    const Int& D = k.D;

    Int R0 = 1;
    QuadIdeal B = ideal_one(D);
    for (const auto& [p, e] : factorize(T).factors) {
        SplitType st = splitting_type(k, p);
        if (st == SplitType::inert) {
            if (e % 2 != 0) return std::nullopt;
            Int pk;
            mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), e / 2);
            R0 *= pk;
        } else {
            PrimeIdeal P = prime_ideal_above(k, p);
            B = ideal_mul(D, B, ideal_pow(D, ideal_of_prime(P), e));
        }
    }

    auto group = FormClassGroup::get(D);
    long clsB = group->class_of_form(B.form(D));
    long creq = T > 0 ? group->identity() : group->negative_principal();
    long need = group->compose(creq, group->inverse(clsB));

    long droot = -1;
    for (long c = 0; c < group->size(); ++c)
        if (group->compose(c, c) == need) {
            droot = c;
            break;
        }
    if (droot < 0) return std::nullopt;

    QuadIdeal A = B;
    Int denom_extra = 1;
    if (droot != group->identity()) {
        const QuadForm* fd = nullptr;
        for (const auto& f : group->cycle(droot))
            if (f.a > 0) {
                fd = &f;
                break;
            }
        if (!fd) throw internal_error("solve_norm_equation: class without positive form");
        Int bq = fd->b % (2 * fd->a);
        if (bq < 0) bq += 2 * fd->a;
        QuadIdeal X{1, fd->a, bq};
        A = ideal_mul(D, A, ideal_mul(D, X, X));
        denom_extra = fd->a;
    }

    bool either = k.real && k.unit_norm == -1;
    bool wplus = T > 0 || either;
    bool wminus = (k.real && T < 0) || either;
    auto ul = reduce_to_unit_leading(A.form(D), wplus, wminus);
    if (!ul) throw internal_error("solve_norm_equation: certified class has no unit form");

    // generator of A: content * (p*a + r*(b + sqrt(D))/2)
    const Int& pp = ul->transform.p;
    const Int& rr = ul->transform.r;
    Int gx = A.content * (2 * pp * A.a + rr * A.b);
    Int gy = A.content * rr * (k.D == k.m ? 1 : 2);
    QuadElement y(gx, gy, 2, k.m);
    Rat scale(R0, denom_extra);
    scale.canonicalize();
    y = y * scale;

    if (y.norm() != Rat(T)) {
        if (!(k.real && k.unit_norm == -1))
            throw internal_error("solve_norm_equation: wrong-sign generator");
        y = y * k.fundamental_unit;
        if (y.norm() != Rat(T)) throw internal_error("solve_norm_equation: sign fix failed");
    }

    Rat inv_den(1, den);
    inv_den.canonicalize();
    QuadElement res = y * inv_den;
    if (res.norm() != x) throw internal_error("solve_norm_equation: verification failed");
    return res;
}

std::optional<QuadElement> solve_norm_integral(const QuadraticField& k, const Int& x,
                                               bool coprime)
{
    if (x == 0) throw precondition_error("solve_norm_integral: x must be nonzero");
    const Int& m = k.m;
    Int vmax;
    if (m < 0) {
        if (x < 0) return std::nullopt;
        vmax = isqrt(x / (-m)) + 1;
    } else {
        // |v| <= sqrt(|x|) (eps + 1) / (2 sqrt(m)) for some associate
        const QuadElement& u = k.fundamental_unit;
        Int s = isqrt(m);
        // integer over-approximation of (eps + 1)^2
        Int num = (u.x + u.z + u.y * (s + 1));
        Int e2 = (num * num) / (u.z * u.z) + 1;
        vmax = isqrt((abs(x) * e2) / (4 * m)) + 2;
    }
    if (vmax > 20000000) throw precondition_error("solve_norm_integral: search box too large");
    auto check = [&](const Int& u, const Int& v, const Int& den) -> std::optional<QuadElement> {
        if (coprime && gcd(u, v) != 1) return std::nullopt;
        for (const Int& uu : std::vector<Int>{u, Int(-u)}) {
            QuadElement cand(uu, v, den, m);
            if (cand.norm() == Rat(x)) return cand;
            if (uu == 0) break;
        }
        return std::nullopt;
    };
    for (Int v = 0; v <= vmax; ++v) {
        Int target = x + m * v * v;
        if (target >= 0 && is_square(target)) {
            if (auto r = check(isqrt(target), v, 1)) return r;
        }
    }
    if (((m % 4) + 4) % 4 == 1) {
        // half-integral coordinates (u + v sqrt(m))/2, u = v = 1 mod 2
        for (Int v = 1; v <= 2 * vmax + 1; v += 2) {
            Int target = 4 * x + m * v * v;
            if (target >= 0 && is_square(target)) {
                Int u = isqrt(target);
                if ((u - v) % 2 == 0)
                    if (auto r = check(u, v, 2)) return r;
            }
        }
    }
    return std::nullopt;
}

}  // namespace ambiclass
