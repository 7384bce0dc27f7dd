#ifndef SHIFTEQ_QORDER_HPP
#define SHIFTEQ_QORDER_HPP

#include <optional>
#include <string>
#include <vector>

#include "shifteq/forms.hpp"
#include "shifteq/matrix.hpp"
#include "shifteq/poly.hpp"
#include "shifteq/witness.hpp"

namespace shifteq {

// The order Z[xi] for xi a root of an irreducible monic integer quadratic.
// D = f^2 * D0 with D0 the fundamental discriminant; rad is the squarefree
// radicand (the field is Q(sqrt(rad)), D0 = rad or 4*rad).
struct QuadraticOrder {
    Int D;
    Int D0;
    Int f;
    Int rad;
    IntPoly chi;

    Int xi_trace() const { return -chi.coeff(1); }
    Int xi_norm() const { return chi.coeff(0); }
    bool maximal() const { return f == 1; }
    // g with sqrt(D) = g * sqrt(rad)
    Int sqrt_scale() const { return isqrt(exact_div(D, rad)); }
    bool operator==(const QuadraticOrder& o) const { return D == o.D && chi == o.chi; }
};

// Element x + y*sqrt(rad) of the ambient field, exact rational coordinates.
struct QuadElem {
    Rat x, y;

    QuadElem() : x(0), y(0) {}
    QuadElem(Rat x_, Rat y_) : x(std::move(x_)), y(std::move(y_)) {}
    QuadElem conj() const { return QuadElem{x, -y}; }
    bool operator==(const QuadElem& o) const { return x == o.x && y == o.y; }
};
QuadElem mul(const QuadElem& a, const QuadElem& b, const Int& rad);
Rat norm(const QuadElem& a, const Int& rad);

// Fractional ideal (full lattice closed under the order) in two-generator
// normal form: scale * (a Z + ((b + sqrt(D)) / 2) Z), a > 0, 0 <= b < 2a,
// b^2 ≡ D (mod 4a), scale a positive rational. Norm = scale^2 * a.
struct QuadIdeal {
    QuadraticOrder order;
    Int a = 1;
    Int b = 0;
    Rat scale = 1;

    Rat norm() const { return scale * scale * Rat(a); }
    QuadElem gen1() const;  // scale * a
    QuadElem gen2() const;  // scale * (b + sqrt(D))/2
    BinaryQuadraticForm form() const;
    bool operator==(const QuadIdeal& o) const
    {
        return order == o.order && a == o.a && b == o.b && scale == o.scale;
    }
    std::string to_string() const;
};

// ---- construction -------------------------------------------------------

// Validates the polynomial (monic, degree 2, irreducible over Q) and splits
// the discriminant into fundamental part and conductor.
QuadraticOrder order_from_charpoly(const IntPoly& chi);

// Normal form of the lattice spanned by the given elements; the lattice must
// be full rank and closed under multiplication by the order's generator.
QuadIdeal lattice_to_ideal(const QuadraticOrder& ord, const std::vector<QuadElem>& gens);

QuadIdeal unit_ideal(const QuadraticOrder& ord);
QuadIdeal principal_ideal(const QuadraticOrder& ord, const QuadElem& g);

// Latimer–MacDuffee: the class of the row-eigenvector lattice of T, i.e. the
// fractional ideal Z u1 + Z u2 with u T = xi u. Requires charpoly(T) == chi.
QuadIdeal matrix_to_ideal(const IntMatrix& T, const QuadraticOrder& ord);

// Matrix of multiplication by xi on the ideal basis (column convention);
// charpoly of the result equals ord.chi.
IntMatrix ideal_to_matrix(const QuadIdeal& I);

// Matrix of multiplication by an arbitrary element acting integrally on the
// ideal lattice; charpoly is checked against expected_chi.
IntMatrix matrix_of_multiplier(const QuadIdeal& I, const QuadElem& xi, const IntPoly& expected_chi);

// ---- arithmetic ---------------------------------------------------------

QuadIdeal ideal_multiply(const QuadIdeal& I, const QuadIdeal& J);
QuadIdeal ideal_conjugate(const QuadIdeal& I);
bool ideal_is_invertible(const QuadIdeal& I);

// Module-isomorphism classes (wide classes): SL2-equivalence of the norm
// forms, or SL2-equivalence to the negated form for real discriminants.
bool ideal_class_equal(const QuadIdeal& I, const QuadIdeal& J);

// Whether [I] = [J] in the class group localized away from xi_ideal: the
// quotient by the subgroup generated by the prime ideals dividing xi_ideal.
// The public entry point requires a maximal order; the order-generic
// worker is used internally on conductor-2 non-maximal orders with odd-norm
// localization elements.
bool localized_class_equal(const QuadIdeal& I, const QuadIdeal& J, const QuadIdeal& xi_ideal);

// Is the lattice a module over the maximal order?
bool ideal_has_maximal_multiplier_ring(const QuadIdeal& I);

// The same lattice viewed over the maximal order (saturation I * O_K).
QuadIdeal saturate_to_maximal(const QuadIdeal& I);

// ---- decisions ----------------------------------------------------------

// Shift equivalence decision for equal irreducible quadratic characteristic
// polynomials; maximal orders and conductor-2 orders are decided, other
// conductors return Unknown.
SEVerdict decide_irreducible_quadratic(const IntMatrix& T1, const IntMatrix& T2,
                                       const SearchBounds& witness_bounds = SearchBounds{});

enum class ConductorTag { R, J0, J1, Rbar, Other };
std::string tag_name(ConductorTag t);

struct ConductorClass {
    std::vector<ConductorTag> members;  // candidate modules landing in this class
    bool maximal_side = false;          // multiplier ring is the maximal order
    QuadIdeal pic_class;                // class of M ⊗ O_K, over the maximal order
    QuadIdeal ideal;                    // representative lattice over its own side
    IntMatrix representative;           // charpoly-validated matrix
    std::size_t se_class = 0;           // shift-equivalence class index
};

struct Conductor2Classification {
    std::vector<ConductorClass> classes;
    std::size_t iso_count = 0;
    std::size_t se_count = 0;
};

// Full classification of (Z^2, T) with charpoly chi for conductor-2 orders:
// the candidate modules R, J0 = (2, w), J1 = (2, 1+w), Rbar placed into
// isomorphism classes (merged by honest isomorphism tests), crossed with the
// class censuses of both orders, and grouped into shift-equivalence classes
// by localization at xi.
Conductor2Classification classify_conductor2(const IntPoly& chi);

// (isomorphism classes, shift equivalence classes) of (Z^2, T) with
// charpoly chi; chi must be irreducible with conductor 1 or 2.
std::pair<std::size_t, std::size_t> class_count(const IntPoly& chi);

// Representative matrices, one per shift-equivalence class.
std::vector<IntMatrix> class_representatives(const IntPoly& chi);

}  // namespace shifteq

#endif
