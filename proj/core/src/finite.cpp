#include "shifteq/finite.hpp"

#include <stdexcept>
#include <vector>

namespace shifteq {

void validate_finite_module(const FiniteTriangularModule& m)
{
    if (!is_probable_prime(m.p)) throw std::invalid_argument("finite module: p must be prime");
    if (m.n < 1) throw std::invalid_argument("finite module: exponent must be >= 1");
    if (mod_floor(m.lambda1, m.p) == 0 || mod_floor(m.lambda2, m.p) == 0)
        throw std::invalid_argument("finite module: eigenvalues must be units mod p");
}

std::optional<int> classify_single_eigenvalue(const FiniteTriangularModule& m)
{
    validate_finite_module(m);
    if (mod_floor(m.lambda1 - m.lambda2, m.modulus()) != 0)
        throw std::invalid_argument("classify_single_eigenvalue: eigenvalues differ");
    Int a = mod_floor(m.a, m.modulus());
    if (a == 0) return std::nullopt;
    return valuation(a, m.p);
}

SEVerdict decide_two_eigenvalues(const FiniteTriangularModule& m1,
                                 const FiniteTriangularModule& m2)
{
    validate_finite_module(m1);
    validate_finite_module(m2);
    const Int q = m1.modulus();
    if (m2.modulus() != q || mod_floor(m1.lambda1 - m2.lambda1, q) != 0 ||
        mod_floor(m1.lambda2 - m2.lambda2, q) != 0)
        return SEVerdict::not_equivalent("finite_module_shape", "(p^n, l1, l2) of first",
                                         "(p^n, l1, l2) of second");
    if (mod_floor(m1.lambda1 - m1.lambda2, q) == 0)
        throw std::invalid_argument("decide_two_eigenvalues: eigenvalues coincide");
    if (q > 1000000) throw std::invalid_argument("decide_two_eigenvalues: p^n beyond enumeration bound");
    const Int a = mod_floor(m1.a, q), b = mod_floor(m2.a, q);
    const Int gap = mod_floor(m1.lambda1 - m1.lambda2, q);
    // b r - a s ≡ u (l1 - l2) for units r, s and free u: only the residues of
    // r and s modulo g = gcd(gap, q) matter, and a residue mod g lifts to a
    // unit mod q iff it avoids p (or g itself is prime to p)
    const Int g = gcd(gap, q);
    if (g == 1) return SEVerdict::equivalent(std::nullopt);
    auto liftable = [&](const Int& x) {
        return mod_floor(x, m1.p) != 0 || mod_floor(g, m1.p) != 0;
    };
    std::vector<char> reach(mpz_get_ui(g.get_mpz_t()), 0);
    for (Int r = 0; r < g; ++r)
        if (liftable(r)) reach[mpz_get_ui(mod_floor(b * r, g).get_mpz_t())] = 1;
    for (Int s = 0; s < g; ++s)
        if (liftable(s) && reach[mpz_get_ui(mod_floor(a * s, g).get_mpz_t())])
            return SEVerdict::equivalent(std::nullopt);
    return SEVerdict::not_equivalent("unit_pair_congruence_mod_gap",
                                     mod_floor(a, g).get_str() + " mod " + g.get_str(),
                                     mod_floor(b, g).get_str() + " mod " + g.get_str());
}

}  // namespace shifteq
