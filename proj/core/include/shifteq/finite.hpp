#ifndef SHIFTEQ_FINITE_HPP
#define SHIFTEQ_FINITE_HPP

#include <optional>

#include "shifteq/witness.hpp"

namespace shifteq {

// (Z/p^n)^2 with t = [[lambda1, 0], [a, lambda2]]; the eigenvalues must be
// units mod p (strip nilpotent parts first).
struct FiniteTriangularModule {
    Int p;  // prime
    int n;  // exponent >= 1
    Int lambda1, lambda2;
    Int a;

    Int modulus() const { return pow_int(p, static_cast<unsigned long>(n)); }
};

void validate_finite_module(const FiniteTriangularModule& m);

// Single-eigenvalue case: the class is the p-adic valuation of a
// (nullopt = infinity, the a = 0 class).
std::optional<int> classify_single_eigenvalue(const FiniteTriangularModule& m);

// Two-eigenvalue case (lambda1 != lambda2 mod p^n), decided by enumeration
// over unit pairs below the stated size bound.
SEVerdict decide_two_eigenvalues(const FiniteTriangularModule& m1,
                                 const FiniteTriangularModule& m2);

}  // namespace shifteq

#endif
