#ifndef SHIFTEQ_INTEGERS_HPP
#define SHIFTEQ_INTEGERS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace shifteq {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b)
{
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int abs(const Int& a)
{
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

// Exact quotient; throws if b does not divide a.
Int exact_div(const Int& a, const Int& b);

inline bool divides(const Int& b, const Int& a)
{
    if (b == 0) return a == 0;
    return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0;
}

// Floor square root of a nonnegative integer.
inline Int isqrt(const Int& a)
{
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& a)
{
    if (a < 0) return false;
    return mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

inline bool is_probable_prime(const Int& n)
{
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// Kronecker symbol (a|n).
inline int kronecker(const Int& a, const Int& n)
{
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline Int mod_floor(const Int& a, const Int& m)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int div_floor(const Int& a, const Int& m)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return q;
}

inline Int pow_int(const Int& b, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline bool fits_int64(const Int& a)
{
    return a >= Int(INT64_MIN) && a <= Int(INT64_MAX);
}

// Prime factorization n = ± prod p^e, with p ascending. Trial division up to
// 10^5 followed by Brent-style Pollard rho; fine for desk-scale inputs.
std::vector<std::pair<Int, int>> factorize(const Int& n);

// Distinct primes of |n| (empty for n = 0, ±1).
std::vector<Int> prime_support(const Int& n);

// p-adic valuation; n must be nonzero, p >= 2.
int valuation(const Int& n, const Int& p);

// Largest divisor of |n| coprime to s (strips every prime shared with s).
Int coprime_part(const Int& n, const Int& s);

// The product of the prime powers of |a| supported on primes dividing s,
// i.e. |a| / coprime_part(a, s).
Int smooth_part(const Int& a, const Int& s);

// Modular inverse; nullopt if gcd(a, m) != 1.
std::optional<Int> inv_mod(const Int& a, const Int& m);

// All x in [0, m) with x^2 ≡ a (mod m); m >= 1. Computed by factoring m,
// solving modulo each prime power (Tonelli–Shanks plus Hensel lifting for odd
// p, the usual 2-adic case analysis for p = 2), and CRT recombination.
// Throws if the solution set would be astronomically large (square moduli far
// beyond desk scale).
std::vector<Int> sqrt_mod(const Int& a, const Int& m);

// Multiplicative monoid closure of `gens` in Z/m (m >= 1), as residue ->
// a preimage integer built as a product of generators. Seeded with 1.
std::map<Int, Int> monoid_closure_mod(const std::vector<Int>& gens, const Int& m);

}  // namespace shifteq

#endif
