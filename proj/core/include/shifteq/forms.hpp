#ifndef SHIFTEQ_FORMS_HPP
#define SHIFTEQ_FORMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "shifteq/integers.hpp"
#include "shifteq/matrix.hpp"

namespace shifteq {

// ax^2 + bxy + cy^2 over Z.
struct BinaryQuadraticForm {
    Int a, b, c;

    Int disc() const { return b * b - 4 * a * c; }
    bool degenerate() const { return is_perfect_square(disc()); }  // includes 0
    Int eval(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }
    bool primitive() const { return gcd(gcd(a, b), c) == 1; }

    // form composed with the substitution (x, y) -> M (x, y)
    BinaryQuadraticForm apply(const IntMatrix& M) const;
    BinaryQuadraticForm negated() const { return {-a, -b, -c}; }
    BinaryQuadraticForm flipped() const { return {a, -b, c}; }

    bool operator==(const BinaryQuadraticForm& o) const
    {
        return a == o.a && b == o.b && c == o.c;
    }
    bool operator!=(const BinaryQuadraticForm& o) const { return !(*this == o); }
    bool operator<(const BinaryQuadraticForm& o) const
    {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
    std::string to_string() const;
};

struct FormSolution {
    Int x, y;
    Int value;
};

struct ReducedForm {
    BinaryQuadraticForm form;
    IntMatrix transform;  // det +1; input.apply(transform) == form
};

// Gauss reduction. Definite forms (D < 0) reduce to |b| <= a <= c (with the
// usual boundary conventions), negative definite ones to the negated shape;
// indefinite nonsquare D > 0 to |sqrt(D) - 2|a|| < b < sqrt(D). Throws on
// square discriminant.
ReducedForm reduce(const BinaryQuadraticForm& f);

// Proper (SL2) equivalence; with improper_allowed also GL2. Returns the
// change of variables g = f.apply(M) when equivalent.
std::optional<IntMatrix> equivalent(const BinaryQuadraticForm& f, const BinaryQuadraticForm& g,
                                    bool improper_allowed = false);

// The rho-cycle of reduced forms through reduce(f) (indefinite only).
std::vector<BinaryQuadraticForm> form_cycle(const BinaryQuadraticForm& f);

// Decides f(x, y) = n and produces a solution. Complete for nonzero n on
// nondegenerate forms (definite and indefinite); degenerate (square
// discriminant) forms are solved through their linear factorization.
std::optional<FormSolution> represent(const BinaryQuadraticForm& f, const Int& n);

// Module-isomorphism tests for the conductor-2 family with parameter c
// (discriminants 4(4c+1)): each reduces to a representation problem.
bool iso_test_R_J0(const Int& c);   // 4x^2 + 2xy - c y^2 = ±1
bool iso_test_R_J1(const Int& c);   // 4x^2 + 6xy + (2-c) y^2 = ±1
bool iso_test_J0_J1(const Int& c);  // c(c-2) y^2 - 4(2c-1) k y + 16 k^2 = ±4

// Fundamental unit of the maximal order of Q(sqrt(d)), d > 0 nonsquare,
// via the automorphism of the principal cycle. Written over the squarefree
// part d0 of d: (x + y sqrt(d0)) / (halved ? 2 : 1); norm is ±1.
struct PellUnit {
    Int x, y;
    bool halved = false;
    int norm = 1;
    Int d0;
};
PellUnit fundamental_solution_pell(const Int& d);

// All reduced primitive forms of discriminant D (nonsquare).
std::vector<BinaryQuadraticForm> reduced_primitive_forms(const Int& D);

// Primitive reduced forms of discriminant D grouped into proper equivalence
// classes (singletons for D < 0, rho-cycles for D > 0).
std::vector<std::vector<BinaryQuadraticForm>> form_class_census(const Int& D);

}  // namespace shifteq

#endif
