#ifndef SHIFTEQ_INTLIN_HPP
#define SHIFTEQ_INTLIN_HPP

#include <optional>
#include <string>
#include <vector>

#include "shifteq/integers.hpp"
#include "shifteq/matrix.hpp"
#include "shifteq/poly.hpp"

namespace shifteq {

// Canonical form of a finitely generated abelian group: Z^free_rank plus
// cyclic torsion with d1 | d2 | ..., every di >= 2.
struct AbelianGroupType {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;

    bool operator==(const AbelianGroupType& o) const
    {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    bool operator!=(const AbelianGroupType& o) const { return !(*this == o); }
    std::string to_string() const;
};

// A = U * D * V with U, V unimodular and D in Smith form (diagonal,
// d1 | d2 | ..., all di >= 0, zeros last). Inverses are tracked so kernels
// and linear solves fall out without a separate inversion.
struct SmithResult {
    IntMatrix U, D, V;
    IntMatrix Uinv, Vinv;
};

SmithResult smith_normal_form(const IntMatrix& A);

// det(t*I - T), monic of degree n, exact (Faddeev–LeVerrier).
IntPoly charpoly(const IntMatrix& T);

// Monic generator of { f in Z[t] : f(T) = 0 }; divides charpoly.
IntPoly minimal_polynomial(const IntMatrix& T);

// The group Z^n / f(T) Z^n. With f = 1 - t this is the classical
// Bowen–Franks group.
AbelianGroupType bowen_franks(const IntMatrix& T, const IntPoly& f);

// Basis of { x in Z^n : A x = 0 }, returned as columns. The lattice is
// saturated (the quotient by it is torsion-free).
std::vector<std::vector<Int>> integer_kernel(const IntMatrix& A);

// One integer solution of A x = b together with a basis of the homogeneous
// kernel; nullopt if no integer solution exists.
struct IntegerSolution {
    std::vector<Int> particular;
    std::vector<std::vector<Int>> kernel;
};
std::optional<IntegerSolution> solve_integer(const IntMatrix& A, const std::vector<Int>& b);

// Splits off the part of Z^n where T acts nilpotently. `reduced` is the
// action induced on the torsion-free quotient (dimension n - rank_drop) and
// has nonzero determinant; proj/sect/lag form a shift-equivalence witness
// between T and reduced (proj*T = reduced*proj, sect intertwines back,
// proj*sect = reduced^lag, sect*proj = T^lag).
struct NilpotentStrip {
    IntMatrix reduced;
    std::size_t rank_drop = 0;
    IntMatrix proj;
    IntMatrix sect;
    unsigned long lag = 1;
};
NilpotentStrip remove_nilpotent_part(const IntMatrix& T);

// For 2x2 T with integer eigenvalue lambda: unimodular U with U^-1 T U lower
// triangular, lambda in the (1,1) slot. Throws if lambda is not an eigenvalue.
struct Triangularization {
    IntMatrix U;
    IntMatrix lower;
};
Triangularization triangularize_over_Z(const IntMatrix& T, const Int& lambda);

// Exact rational elimination helpers (shared by several modules).
// Solves M x = rhs over Q; returns nullopt when inconsistent.
std::optional<std::vector<Rat>> solve_rational(std::vector<std::vector<Rat>> M,
                                               std::vector<Rat> rhs);

}  // namespace shifteq

#endif
