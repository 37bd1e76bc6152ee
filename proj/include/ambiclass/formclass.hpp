#ifndef AMBICLASS_FORMCLASS_HPP
#define AMBICLASS_FORMCLASS_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "ambiclass/arith.hpp"

// Independent brute-force oracle for narrow class groups of quadratic fields,
// realized on binary quadratic forms: reduction (definite and indefinite),
// Gauss composition, reduction cycles, and exhaustive structure extraction.

namespace ambiclass {

struct QuadForm {
    Int a, b, c;
    Int disc() const { return b * b - 4 * a * c; }
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadForm& o) const
    {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

bool is_primitive(const QuadForm& f);

// Unimodular change of variables; (f.U)(X,Y) = f(pX+qY, rX+sY).
struct Mat2 {
    Int p{1}, q{0}, r{0}, s{1};
    Mat2 operator*(const Mat2& o) const
    {
        return Mat2{p * o.p + q * o.r, p * o.q + q * o.s, r * o.p + s * o.r, r * o.q + s * o.s};
    }
    Int det() const { return p * s - q * r; }
};

QuadForm apply(const QuadForm& f, const Mat2& u);
QuadForm principal_form(const Int& D);
inline QuadForm conjugate(const QuadForm& f) { return {f.a, -f.b, f.c}; }

bool is_reduced_definite(const QuadForm& f);
bool is_reduced_indefinite(const QuadForm& f);

// Unique reduced representative (D < 0, a > 0), with the transform if asked.
QuadForm reduce_definite(const QuadForm& f, Mat2* transform = nullptr);

// Some form on the reduction cycle of f (D > 0 nonsquare).
QuadForm reduce_indefinite(const QuadForm& f, Mat2* transform = nullptr);

// One reduction step on a reduced indefinite form (cycles through the class).
QuadForm rho_step(const QuadForm& f, Mat2* transform = nullptr);

// Dispatches on the sign of the discriminant.
QuadForm reduce(const QuadForm& f, Mat2* transform = nullptr);

// Gauss composition of two primitive forms of the same discriminant;
// the result is the raw composed form (not reduced).  e_out, when given,
// receives the ideal content gcd(a1, a2, (b1+b2)/2) of the product.
QuadForm compose_raw(const QuadForm& f, const QuadForm& g, Int* e_out = nullptr);

// A transform U with (f.U) having leading coefficient +1 or -1, walking the
// reduction cycle.  want_plus/want_minus select which targets are accepted.
struct UnitLeading {
    QuadForm form;
    Mat2 transform;
};
std::optional<UnitLeading> reduce_to_unit_leading(const QuadForm& f, bool want_plus,
                                                  bool want_minus);

struct ClassGroupStructure {
    std::vector<Int> elementary_divisors;  // d1 | d2 | ..., each > 1
    Int order{1};
    std::vector<Int> sylow(const Int& p) const;  // p-parts, ascending, > 1
    bool operator==(const ClassGroupStructure& o) const
    {
        return elementary_divisors == o.elementary_divisors;
    }
};

enum class Sense { narrow, ordinary };

// The full narrow form class group of a fundamental discriminant, as an
// explicit finite abelian group: classes are reduced forms (D < 0) or
// reduction cycles (D > 0), composition by Gauss plus reduction.
class FormClassGroup {
  public:
    static std::shared_ptr<const FormClassGroup> get(const Int& D);

    const Int& discriminant() const { return D_; }
    long size() const { return static_cast<long>(reps_.size()); }

    long identity() const { return identity_; }
    long class_of_form(const QuadForm& f) const;
    long compose(long i, long j) const;
    long inverse(long i) const;
    long power(long i, const Int& e) const;
    Int order_of(long i) const;
    const QuadForm& representative(long i) const { return reps_[i]; }

    // All reduced forms in class i (one for D < 0, the whole cycle for D > 0).
    const std::vector<QuadForm>& cycle(long i) const { return cycles_[i]; }

    // Class of the form (-1, b, *); equals the identity iff the fundamental
    // unit has norm -1.  Only meaningful for D > 0.
    long negative_principal() const { return neg_principal_; }

    ClassGroupStructure structure(Sense sense) const;
    Int class_number(Sense sense) const;

    // Subgroup generated by the given classes (sorted class indices).
    std::vector<long> subgroup(const std::vector<long>& gens) const;

  private:
    explicit FormClassGroup(const Int& D);
    long compose_direct(long i, long j) const;
    void ensure_table() const;
    Int D_;
    std::vector<QuadForm> reps_;                // canonical rep per class, sorted
    std::vector<std::vector<QuadForm>> cycles_; // all reduced forms per class
    std::map<QuadForm, long> index_;            // reduced form -> class
    long identity_{0};
    long neg_principal_{0};
    mutable std::vector<long> table_;           // full composition table, built lazily
    mutable std::once_flag table_once_;
};

// Oracle entry point: the class group of a fundamental discriminant.
ClassGroupStructure class_group(const Int& D, Sense sense);

}  // namespace ambiclass

#endif
