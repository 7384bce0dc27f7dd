#include "shifteq/split.hpp"

#include <algorithm>
#include <stdexcept>

namespace shifteq {

namespace {

// lambda-smooth part stripped away: |a| with every prime factor of lambda
// divided out. 0 for a = 0.
Int smooth_free_part(const Int& a, const Int& lambda)
{
    if (a == 0) return 0;
    return coprime_part(a, lambda);
}

// Integers (r, s), r with prime support in lambda1 and s in lambda2 (signs
// free), such that a*s ≡ b*r (mod n); n >= 1. nullopt if none exists.
std::optional<std::pair<Int, Int>> find_smooth_congruence(const Int& a, const Int& b,
                                                          const Int& lambda1, const Int& lambda2,
                                                          const Int& n)
{
    std::vector<Int> gens1{-1}, gens2{-1};
    for (const Int& p : prime_support(lambda1)) gens1.push_back(p);
    for (const Int& p : prime_support(lambda2)) gens2.push_back(p);
    auto c1 = monoid_closure_mod(gens1, n);  // candidate r
    auto c2 = monoid_closure_mod(gens2, n);  // candidate s
    std::map<Int, Int> br_lift;              // residue of b*r -> lift of r
    for (auto& [r_res, r_lift] : c1) {
        Int key = mod_floor(b * r_res, n);
        if (!br_lift.count(key)) br_lift[key] = r_lift;
    }
    for (auto& [s_res, s_lift] : c2) {
        auto it = br_lift.find(mod_floor(a * s_res, n));
        if (it != br_lift.end()) return std::make_pair(it->second, s_lift);
    }
    return std::nullopt;
}

// Smallest m >= lo with r | lambda^m (r lambda-smooth, nonzero).
unsigned long power_covering(const Int& r, const Int& lambda, unsigned long lo)
{
    unsigned long m = lo;
    Int rm = abs(r);
    while (!divides(rm, pow_int(lambda, m))) {
        ++m;
        if (m > 64) throw std::logic_error("power_covering: runaway exponent");
    }
    return m;
}

// Verified witness M_a ~ M_b from homomorphism parameters (r, s): forward map
// [[r, 0], [u, s]], reverse map with diagonal (lambda1^m/r, lambda2^m/s).
std::optional<SEWitness> assemble_split_witness(const TriangularModule& M,
                                                const TriangularModule& N, const Int& r,
                                                const Int& s)
{
    const Int &l1 = M.lambda1, &l2 = M.lambda2;
    const Int &a = M.a, &b = N.a;
    const Int diff = l1 - l2;
    Int u = 0;
    if (diff != 0) {
        if (!divides(diff, b * r - a * s)) return std::nullopt;
        u = exact_div(b * r - a * s, diff);
    } else if (a * s != b * r) {
        return std::nullopt;
    }
    unsigned long m = power_covering(r, l1, 1);
    m = power_covering(s, l2, m);
    Int rr = exact_div(pow_int(l1, m), r);
    Int ss = exact_div(pow_int(l2, m), s);
    Int uu = 0;
    if (diff != 0) {
        if (!divides(diff, a * rr - b * ss)) return std::nullopt;
        uu = exact_div(a * rr - b * ss, diff);
    } else if (a * rr != b * ss) {
        return std::nullopt;
    }
    SEWitness w{IntMatrix{{r, 0}, {u, s}}, IntMatrix{{rr, 0}, {uu, ss}}, m};
    if (!verify_witness(M.matrix(), N.matrix(), w)) return std::nullopt;
    return w;
}

void require_nonzero(const TriangularModule& M)
{
    if (M.lambda1 == 0 || M.lambda2 == 0)
        throw std::invalid_argument("split: zero eigenvalue (strip nilpotent parts first)");
}

struct CanonicalTriangular {
    TriangularModule mod;
    IntMatrix conj;  // original.matrix() = conj * mod.matrix() * conj^-1
};

CanonicalTriangular canonicalize(const TriangularModule& t)
{
    if (t.lambda1 <= t.lambda2) return {t, IntMatrix::identity(2)};
    auto tri = triangularize_over_Z(t.matrix(), t.lambda2);
    TriangularModule c{tri.lower.at(0, 0), tri.lower.at(1, 1), tri.lower.at(1, 0)};
    return {c, tri.U};
}

// Witness T ~ L for T = U L U^-1: (U^-1, T*U, 1).
SEWitness conjugation_down(const IntMatrix& T, const IntMatrix& U)
{
    return SEWitness{U.unimodular_inverse(), T * U, 1};
}

// Decision core on same-ordered eigenvalues; fills (r, s) on success.
bool split_equivalent_core(const Int& l1, const Int& l2, const Int& a, const Int& b, Int& r,
                           Int& s)
{
    if (l1 == l2) {
        Int fa = smooth_free_part(a, l1), fb = smooth_free_part(b, l1);
        if (fa != fb) return false;
        if (a == 0) {
            r = s = 1;
            return true;
        }
        r = exact_div(a, fa);
        s = exact_div(b, fb);
        return true;
    }
    const Int n = abs(l1 - l2);
    auto rs = find_smooth_congruence(a, b, l1, l2, n);
    if (!rs) return false;
    r = rs->first;
    s = rs->second;
    return true;
}

}  // namespace

SEVerdict decide_split(const TriangularModule& Min, const TriangularModule& Nin)
{
    require_nonzero(Min);
    require_nonzero(Nin);
    CanonicalTriangular M = canonicalize(Min), N = canonicalize(Nin);
    if (M.mod.lambda1 != N.mod.lambda1 || M.mod.lambda2 != N.mod.lambda2) {
        auto fmt = [](const TriangularModule& t) {
            return "{" + t.lambda1.get_str() + "," + t.lambda2.get_str() + "}";
        };
        return SEVerdict::not_equivalent("nonzero_eigenvalues", fmt(M.mod), fmt(N.mod));
    }
    const Int &l1 = M.mod.lambda1, &l2 = M.mod.lambda2;
    Int r, s;
    if (!split_equivalent_core(l1, l2, M.mod.a, N.mod.a, r, s)) {
        if (l1 == l2)
            return SEVerdict::not_equivalent("smooth_free_offdiagonal",
                                             smooth_free_part(M.mod.a, l1).get_str(),
                                             smooth_free_part(N.mod.a, l1).get_str());
        const Int n = abs(l1 - l2);
        return SEVerdict::not_equivalent("offdiagonal_class_mod_gap",
                                         mod_floor(M.mod.a, n).get_str() + " mod " + n.get_str(),
                                         mod_floor(N.mod.a, n).get_str() + " mod " + n.get_str());
    }
    auto w = assemble_split_witness(M.mod, N.mod, r, s);
    if (!w) {
        // degenerate residue case: the verdict stands, recover by search
        Int reach = abs(M.mod.a) + abs(N.mod.a) + abs(l1 * l2);
        if (reach < 16) reach = 16;
        w = search_witness(M.mod.matrix(), N.mod.matrix(), SearchBounds{reach, 8});
    }
    if (w) {
        SEWitness full = compose_witness(
            compose_witness(conjugation_down(Min.matrix(), M.conj), *w),
            reverse_witness(conjugation_down(Nin.matrix(), N.conj)));
        if (verify_witness(Min.matrix(), Nin.matrix(), full)) return SEVerdict::equivalent(full);
    }
    return SEVerdict::equivalent(std::nullopt);
}

Int SplitClassification::canonical_a(const Int& a) const
{
    if (!finite) {
        if (a == 0) return 0;
        return coprime_part(a, lambda1);
    }
    const Int n = abs(lambda1 - lambda2);
    TriangularModule probe{lambda1, lambda2, mod_floor(a, n == 0 ? Int(1) : n)};
    for (const Int& rep : representatives) {
        TriangularModule r{lambda1, lambda2, rep};
        if (decide_split(probe, r).status == SEStatus::Equivalent) return rep;
    }
    throw std::logic_error("canonical_a: representative cover incomplete");
}

SplitClassification classify_split(const Int& lambda1, const Int& lambda2)
{
    if (lambda1 == 0 || lambda2 == 0)
        throw std::invalid_argument("classify_split: zero eigenvalue");
    SplitClassification out;
    out.lambda1 = lambda1;
    out.lambda2 = lambda2;
    if (lambda1 == lambda2) {
        out.finite = false;
        out.description =
            "{0} together with the positive integers coprime to " + lambda1.get_str();
        return out;
    }
    const Int n = abs(lambda1 - lambda2);
    if (n > 5000) throw std::invalid_argument("classify_split: eigenvalue gap beyond desk scale");
    const std::size_t nn = mpz_get_ui(n.get_mpz_t());
    // both closures once; a ~ b iff {a*s} meets {b*r}
    std::vector<Int> gens1{-1}, gens2{-1};
    for (const Int& p : prime_support(lambda1)) gens1.push_back(p);
    for (const Int& p : prime_support(lambda2)) gens2.push_back(p);
    std::vector<Int> c1, c2;
    for (auto& [res, lift] : monoid_closure_mod(gens1, n)) c1.push_back(res);
    for (auto& [res, lift] : monoid_closure_mod(gens2, n)) c2.push_back(res);

    std::vector<char> assigned(nn, 0);
    for (std::size_t a = 0; a < nn; ++a) {
        if (assigned[a]) continue;
        out.representatives.push_back(Int(static_cast<unsigned long>(a)));
        std::vector<char> reach(nn, 0);  // {a*s mod n}
        for (const Int& s : c2) reach[mpz_get_ui(mod_floor(Int(static_cast<unsigned long>(a)) * s, n).get_mpz_t())] = 1;
        for (std::size_t b = a; b < nn; ++b) {
            if (assigned[b]) continue;
            for (const Int& r : c1) {
                if (reach[mpz_get_ui(mod_floor(Int(static_cast<unsigned long>(b)) * r, n).get_mpz_t())]) {
                    assigned[b] = 1;
                    break;
                }
            }
        }
    }
    return out;
}

DescentResult descent_canonicalize(const IntMatrix& T)
{
    if (!T.is_square() || T.rows() != 2 || T.trace() != 0 || T.det() != -1)
        throw std::invalid_argument("descent_canonicalize: need trace 0, det -1");
    static const IntMatrix elem[4] = {
        IntMatrix{{1, 1}, {0, 1}},
        IntMatrix{{1, -1}, {0, 1}},
        IntMatrix{{1, 0}, {1, 1}},
        IntMatrix{{1, 0}, {-1, 1}},
    };
    IntMatrix cur = T;
    IntMatrix U = IntMatrix::identity(2);
    while (abs(cur.at(0, 0)) >= 2) {
        bool moved = false;
        for (const auto& E : elem) {
            IntMatrix cand = E * cur * E.unimodular_inverse();
            if (abs(cand.at(0, 0)) < abs(cur.at(0, 0))) {
                cur = cand;
                U = E * U;
                moved = true;
                break;
            }
        }
        if (!moved) throw std::logic_error("descent_canonicalize: no descending conjugation");
    }
    if (U * T * U.unimodular_inverse() != cur)
        throw std::logic_error("descent_canonicalize: conjugator check failed");

    const Int x = cur.at(0, 0), up = cur.at(0, 1), lo = cur.at(1, 0);
    InvolutionClass tag;
    if (x == 0) {
        tag = InvolutionClass::P;  // antidiagonal with product 1: ±P, one class
    } else {
        // |x| = 1 forces a triangular shape (x^2 + uv = 1 gives uv = 0);
        // parity of the off-diagonal entry decides
        const Int off = (up == 0) ? lo : up;
        tag = (mod_floor(off, 2) == 0) ? InvolutionClass::Q : InvolutionClass::P;
    }
    return DescentResult{tag, U, cur};
}

SEVerdict decide_mixed(const MixedModule& Min, const MixedModule& Nin)
{
    if (Min.m < 2 || Nin.m < 2) throw std::invalid_argument("decide_mixed: modulus must be >= 2");
    if (Min.lambda1 == 0 || Nin.lambda1 == 0)
        throw std::invalid_argument("decide_mixed: lambda1 must be nonzero");
    MixedModule M = Min, N = Nin;
    M.lambda2 = mod_floor(M.lambda2, M.m);
    N.lambda2 = mod_floor(N.lambda2, N.m);
    M.a = mod_floor(M.a, M.m);
    N.a = mod_floor(N.a, N.m);
    if (M.lambda2 == 0 || N.lambda2 == 0)
        return SEVerdict::unknown("t has zero component on the torsion part mod m");
    if (M.m != N.m || M.lambda1 != N.lambda1 || M.lambda2 != N.lambda2)
        return SEVerdict::not_equivalent(
            "mixed_module_shape",
            "(" + M.m.get_str() + "," + M.lambda1.get_str() + "," + M.lambda2.get_str() + ")",
            "(" + N.m.get_str() + "," + N.lambda1.get_str() + "," + N.lambda2.get_str() + ")");

    const Int m = M.m;
    const Int m0 = coprime_part(m, M.lambda2);  // part of m where t stays invertible
    const Int gap = mod_floor(M.lambda1 - M.lambda2, m);
    const Int g = (gap == 0) ? m : gcd(gap, m);  // (lambda1 - lambda2) in Z/m is the ideal (g)
    if (gap == 0 && gcd(M.lambda1, m) == 1) {
        // unit orbits of Z/m classify
        Int ga = gcd(M.a, m), gb = gcd(N.a, m);
        if (ga == gb) return SEVerdict::equivalent(std::nullopt);
        return SEVerdict::not_equivalent("unit_orbit_mod_m", ga.get_str(), gb.get_str());
    }
    // exists lambda1-smooth integer r and s a unit of (Z/m)[1/lambda2] with
    // a*s ≡ b*r (mod g)
    const Int g0 = gcd(g, m0);
    std::vector<Int> gens{-1};
    for (const Int& p : prime_support(M.lambda1)) gens.push_back(p);
    auto cr = monoid_closure_mod(gens, g);
    std::vector<char> hit(mpz_get_ui(g.get_mpz_t()), 0);
    for (auto& [r_res, lift] : cr) hit[mpz_get_ui(mod_floor(N.a * r_res, g).get_mpz_t())] = 1;
    for (Int s = 0; s < g; ++s) {
        if (gcd(s, g0) != 1) continue;
        if (hit[mpz_get_ui(mod_floor(M.a * s, g).get_mpz_t())])
            return SEVerdict::equivalent(std::nullopt);
    }
    return SEVerdict::not_equivalent("offdiagonal_class_mod_gap",
                                     mod_floor(M.a, g).get_str() + " mod " + g.get_str(),
                                     mod_floor(N.a, g).get_str() + " mod " + g.get_str());
}

}  // namespace shifteq
