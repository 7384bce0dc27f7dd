#ifndef SHIFTEQ_SPLIT_HPP
#define SHIFTEQ_SPLIT_HPP

#include <optional>
#include <vector>

#include "shifteq/matrix.hpp"
#include "shifteq/witness.hpp"

namespace shifteq {

// The Z[t]-module Z^2 with t(x, y) = (lambda1*x, lambda2*y + a*x), i.e. the
// lower-triangular matrix [[lambda1, 0], [a, lambda2]]. Eigenvalues must be
// nonzero (strip nilpotent parts first).
struct TriangularModule {
    Int lambda1;
    Int lambda2;
    Int a;

    IntMatrix matrix() const { return IntMatrix{{lambda1, 0}, {a, lambda2}}; }
};

// Z ⊕ Z/m with t = [[lambda1, 0], [a, lambda2]], lambda1 an integer acting on
// the free part, lambda2 and a residues mod m.
struct MixedModule {
    Int m;        // modulus >= 2
    Int lambda1;  // nonzero integer
    Int lambda2;  // residue mod m, nonzero
    Int a;        // residue mod m
};

// Complete decision for two triangular modules. Decisive (never Unknown) for
// nonzero eigenvalues; Equivalent verdicts carry a verified witness.
SEVerdict decide_split(const TriangularModule& M, const TriangularModule& N);

// Classification of the family M_a at fixed eigenvalues.
// For lambda1 != lambda2 the classes are finite: one representative a-value
// per class, each in [0, |lambda1 - lambda2|). For lambda1 == lambda2 the
// class set is infinite: {0} together with the positive integers coprime to
// lambda; `canonical_a` maps any a to its class representative.
struct SplitClassification {
    bool finite = true;
    std::vector<Int> representatives;  // finite case
    std::string description;          // symbolic summary in the infinite case
    Int canonical_a(const Int& a) const;
    Int lambda1, lambda2;
};
SplitClassification classify_split(const Int& lambda1, const Int& lambda2);

// Canonical class of a 2x2 matrix with trace 0, determinant -1: descends by
// elementary conjugations until the corner entry is small, then resolves to
// the anti-diagonal involution P = [[0,1],[1,0]] or the diagonal involution
// Q = [[1,0],[0,-1]]. The returned conjugator U satisfies
// U * T * U^-1 = terminal (the verified intermediate the tag was read from).
enum class InvolutionClass { P, Q };
struct DescentResult {
    InvolutionClass tag;
    IntMatrix conjugator;
    IntMatrix terminal;
};
DescentResult descent_canonicalize(const IntMatrix& T);

// Decision over Z ⊕ Z/m per the unit-orbit criterion; Unknown outside the
// supported hypotheses (lambda2 ≡ 0 mod m).
SEVerdict decide_mixed(const MixedModule& M, const MixedModule& N);

}  // namespace shifteq

#endif
