#ifndef SHIFTEQ_POLY_HPP
#define SHIFTEQ_POLY_HPP

#include <string>
#include <vector>

#include "shifteq/integers.hpp"
#include "shifteq/matrix.hpp"

namespace shifteq {

// Univariate integer polynomial in t, dense ascending coefficients.
// Invariant: the leading coefficient is nonzero unless the polynomial is zero
// (empty coefficient vector).
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }
    IntPoly(std::initializer_list<Int> coeffs) : c_(coeffs) { normalize(); }

    static IntPoly one() { return IntPoly({Int(1)}); }
    static IntPoly t_power(std::size_t k);

    const std::vector<Int>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const Int& coeff(std::size_t k) const;

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return !(*this == o); }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator-() const;

    Int eval(const Int& x) const;
    IntMatrix eval(const IntMatrix& m) const;  // matrix substitution

    // Division by a monic divisor, exact over Z. Returns quotient and
    // remainder; remainder is zero iff divisor | this.
    std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& monic_divisor) const;

    Int content() const;

    std::string to_string() const;  // e.g. "t^2-20t-1"

private:
    void normalize();
    std::vector<Int> c_;
};

}  // namespace shifteq

#endif
