#include "shifteq/qorder.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace shifteq {

QuadElem mul(const QuadElem& a, const QuadElem& b, const Int& rad)
{
    return QuadElem{a.x * b.x + a.y * b.y * Rat(rad), a.x * b.y + a.y * b.x};
}

Rat norm(const QuadElem& a, const Int& rad) { return a.x * a.x - a.y * a.y * Rat(rad); }

QuadElem QuadIdeal::gen1() const { return QuadElem{scale * Rat(a), Rat(0)}; }

QuadElem QuadIdeal::gen2() const
{
    // scale * (b + sqrt(D)) / 2 with sqrt(D) = g * sqrt(rad)
    return QuadElem{scale * Rat(b) / 2, scale * Rat(order.sqrt_scale()) / 2};
}

BinaryQuadraticForm QuadIdeal::form() const
{
    return BinaryQuadraticForm{a, b, exact_div(b * b - order.D, 4 * a)};
}

std::string QuadIdeal::to_string() const
{
    std::ostringstream os;
    Rat s = scale;
    s.canonicalize();
    os << s.get_str() << "*(" << a.get_str() << ", (" << b.get_str() << "+sqrt("
       << order.D.get_str() << "))/2)";
    return os.str();
}

QuadraticOrder order_from_charpoly(const IntPoly& chi)
{
    if (chi.degree() != 2 || !chi.is_monic())
        throw std::invalid_argument("order_from_charpoly: need a monic quadratic");
    Int D = chi.coeff(1) * chi.coeff(1) - 4 * chi.coeff(0);
    if (is_perfect_square(abs(D)) && D >= 0)
        throw std::invalid_argument("order_from_charpoly: polynomial is reducible");
    Int sf = 1;
    for (auto& [p, e] : factorize(D))
        if (e % 2 == 1) sf *= p;
    if (D < 0) sf = -sf;
    Int D0 = (mod_floor(sf, 4) == 1) ? sf : 4 * sf;
    Int f2 = exact_div(D, D0);
    Int f = isqrt(f2);
    if (f * f != f2) throw std::logic_error("order_from_charpoly: conductor extraction failed");
    return QuadraticOrder{D, D0, f, sf, chi};
}

QuadIdeal lattice_to_ideal(const QuadraticOrder& ord, const std::vector<QuadElem>& gens)
{
    // coordinates w.r.t. (1/2, sqrt(rad)/2): value (p + q sqrt(rad)) / 2
    Int den = 1;
    for (const auto& g : gens) {
        Rat px = g.x * 2, qy = g.y * 2;
        px.canonicalize();
        qy.canonicalize();
        den = lcm(den, px.get_den());
        den = lcm(den, qy.get_den());
    }
    std::vector<std::pair<Int, Int>> rows;
    for (const auto& g : gens) {
        Rat px = g.x * 2 * Rat(den), qy = g.y * 2 * Rat(den);
        px.canonicalize();
        qy.canonicalize();
        rows.emplace_back(px.get_num(), qy.get_num());
    }
    // HNF of the 2-column row span: second generator carries the gcd of the
    // sqrt parts, first the pure-rational content
    Int C = 0, B = 0;
    for (auto& [p, q] : rows) {
        if (q == 0) continue;
        if (C == 0) {
            C = q;
            B = p;
        } else {
            Int u, v, g;
            mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), C.get_mpz_t(), q.get_mpz_t());
            B = u * B + v * p;
            C = g;
        }
    }
    if (C == 0) throw std::invalid_argument("lattice_to_ideal: not full rank");
    if (C < 0) {
        C = -C;
        B = -B;
    }
    Int A = 0;
    for (auto& [p, q] : rows) {
        Int r = p - exact_div(q, C) * B;  // q is a multiple of C by construction
        A = gcd(A, r);
    }
    if (A == 0) throw std::invalid_argument("lattice_to_ideal: not full rank");
    B = mod_floor(B, A * 2);  // tidy; refined below through the normal form

    // L = (1/(2 den)) * (A Z + (B + C sqrt(rad)) Z)
    //   = s * (a Z + ((b + g sqrt(rad)) / 2) Z)
    // with s = C/(den * g), a = A g / (2 C), b = B g / C.
    const Int g = ord.sqrt_scale();
    QuadIdeal I;
    I.order = ord;
    Rat s(C, den * g);
    s.canonicalize();
    if (!divides(2 * C, A * g) || !divides(C, B * g))
        throw std::invalid_argument("lattice_to_ideal: lattice is not an order module");
    I.a = exact_div(A * g, 2 * C);
    I.b = exact_div(B * g, C);
    I.scale = s;
    if (I.a < 0) I.a = -I.a;
    I.b = mod_floor(I.b, 2 * I.a);
    if (mod_floor(I.b * I.b - ord.D, 4 * I.a) != 0)
        throw std::invalid_argument("lattice_to_ideal: lattice is not an order module");
    return I;
}

QuadIdeal unit_ideal(const QuadraticOrder& ord)
{
    QuadIdeal I;
    I.order = ord;
    I.a = 1;
    I.b = mod_floor(ord.D, 2);
    I.scale = 1;
    return I;
}

QuadIdeal principal_ideal(const QuadraticOrder& ord, const QuadElem& g)
{
    QuadElem omega{Rat(mod_floor(ord.D, 2)) / 2, Rat(ord.sqrt_scale()) / 2};
    return lattice_to_ideal(ord, {g, mul(g, omega, ord.rad)});
}

QuadIdeal matrix_to_ideal(const IntMatrix& T, const QuadraticOrder& ord)
{
    if (!T.is_square() || T.rows() != 2)
        throw std::invalid_argument("matrix_to_ideal: need a 2x2 matrix");
    if (charpoly(T) != ord.chi)
        throw std::invalid_argument("matrix_to_ideal: charpoly does not match the order");
    if (T.at(1, 0) == 0) throw std::logic_error("matrix_to_ideal: degenerate eigenvector");
    // u = (T21, xi - T11), xi = (tr + sqrt(D))/2
    QuadElem u1{Rat(T.at(1, 0)), Rat(0)};
    QuadElem u2{Rat(ord.xi_trace()) / 2 - Rat(T.at(0, 0)), Rat(ord.sqrt_scale()) / 2};
    return lattice_to_ideal(ord, {u1, u2});
}

IntMatrix matrix_of_multiplier(const QuadIdeal& I, const QuadElem& xi, const IntPoly& expected_chi)
{
    const Int& rad = I.order.rad;
    QuadElem u1 = I.gen1(), u2 = I.gen2();
    // columns: coordinates of xi*u1 and xi*u2 in basis (u1, u2)
    auto coords = [&](const QuadElem& v) -> std::pair<Int, Int> {
        // v = alpha u1 + beta u2: sqrt part fixes beta, rational part alpha
        Rat beta = v.y / u2.y;
        Rat alpha = (v.x - beta * u2.x) / u1.x;
        alpha.canonicalize();
        beta.canonicalize();
        if (alpha.get_den() != 1 || beta.get_den() != 1)
            throw std::logic_error("ideal_to_matrix: non-integral action");
        return {alpha.get_num(), beta.get_num()};
    };
    auto [a1, b1] = coords(mul(xi, u1, rad));
    auto [a2, b2] = coords(mul(xi, u2, rad));
    IntMatrix M{{a1, a2}, {b1, b2}};
    if (charpoly(M) != expected_chi) throw std::logic_error("ideal_to_matrix: charpoly check failed");
    return M;
}

IntMatrix ideal_to_matrix(const QuadIdeal& I)
{
    QuadElem xi{Rat(I.order.xi_trace()) / 2, Rat(I.order.sqrt_scale()) / 2};
    return matrix_of_multiplier(I, xi, I.order.chi);
}

QuadIdeal ideal_multiply(const QuadIdeal& I, const QuadIdeal& J)
{
    if (!(I.order == J.order)) throw std::invalid_argument("ideal_multiply: different orders");
    const Int& rad = I.order.rad;
    std::vector<QuadElem> gens{
        mul(I.gen1(), J.gen1(), rad), mul(I.gen1(), J.gen2(), rad),
        mul(I.gen2(), J.gen1(), rad), mul(I.gen2(), J.gen2(), rad)};
    QuadIdeal P = lattice_to_ideal(I.order, gens);
    Rat expect = I.norm() * J.norm(), got = P.norm();
    expect.canonicalize();
    got.canonicalize();
    if (expect != got)
        throw std::invalid_argument("ideal_multiply: norm not multiplicative (ideal not "
                                    "invertible over this order)");
    return P;
}

QuadIdeal ideal_conjugate(const QuadIdeal& I)
{
    QuadIdeal c = I;
    c.b = mod_floor(-I.b, 2 * I.a);
    return c;
}

bool ideal_is_invertible(const QuadIdeal& I)
{
    QuadIdeal p;
    try {
        p = ideal_multiply(I, ideal_conjugate(I));
    } catch (const std::invalid_argument&) {
        return false;  // norm not multiplicative: the product dropped rank data
    }
    QuadIdeal expected = unit_ideal(I.order);
    expected.scale = I.norm();
    Rat s1 = p.scale, s2 = expected.scale;
    s1.canonicalize();
    s2.canonicalize();
    return p.a == expected.a && p.b == expected.b && s1 == s2;
}

bool ideal_class_equal(const QuadIdeal& I, const QuadIdeal& J)
{
    if (!(I.order == J.order)) throw std::invalid_argument("ideal_class_equal: different orders");
    BinaryQuadraticForm fi = I.form(), fj = J.form();
    if (equivalent(fi, fj, false)) return true;
    // multiplication by an element of negative norm reverses the orientation:
    // it relates the form to its outer negation (-a, b, -c)
    if (I.order.D > 0 &&
        equivalent(fi, BinaryQuadraticForm{-fj.a, fj.b, -fj.c}, false))
        return true;
    return false;
}

bool ideal_has_maximal_multiplier_ring(const QuadIdeal& I)
{
    const QuadraticOrder& ord = I.order;
    if (ord.maximal()) return true;
    const Int s0 = (mod_floor(ord.D0, 2) == 0) ? 2 : 1;  // sqrt(D0) = s0*sqrt(rad)
    QuadElem omega_k{Rat(mod_floor(ord.D0, 2)) / 2, Rat(s0) / 2};
    QuadElem u1 = I.gen1(), u2 = I.gen2();
    auto contains = [&](const QuadElem& v) {
        Rat beta = v.y / u2.y;
        Rat alpha = (v.x - beta * u2.x) / u1.x;
        alpha.canonicalize();
        beta.canonicalize();
        return alpha.get_den() == 1 && beta.get_den() == 1;
    };
    return contains(mul(omega_k, u1, ord.rad)) && contains(mul(omega_k, u2, ord.rad));
}

QuadIdeal saturate_to_maximal(const QuadIdeal& I)
{
    QuadraticOrder maximal = I.order;
    maximal.D = maximal.D0;
    maximal.f = 1;
    // presentation of the maximal order generator
    Int b0 = mod_floor(maximal.D0, 2);
    maximal.chi = IntPoly{exact_div(b0 * b0 - maximal.D0, 4), -b0, 1};
    const Int s0 = (b0 == 0) ? 2 : 1;
    QuadElem omega_k{Rat(b0) / 2, Rat(s0) / 2};
    QuadElem u1 = I.gen1(), u2 = I.gen2();
    return lattice_to_ideal(maximal,
                            {u1, u2, mul(omega_k, u1, I.order.rad), mul(omega_k, u2, I.order.rad)});
}

namespace {

// lattice containment J ⊆ I (both over the same order, same field)
bool ideal_contains(const QuadIdeal& I, const QuadIdeal& J)
{
    QuadElem u1 = I.gen1(), u2 = I.gen2();
    auto contains = [&](const QuadElem& v) {
        Rat beta = v.y / u2.y;
        Rat alpha = (v.x - beta * u2.x) / u1.x;
        alpha.canonicalize();
        beta.canonicalize();
        return alpha.get_den() == 1 && beta.get_den() == 1;
    };
    return contains(J.gen1()) && contains(J.gen2());
}

// prime ideals of the order dividing xi_ideal (classes enter the localized
// quotient); requires gcd(p, conductor) = 1 for every prime p | norm(xi)
std::vector<QuadIdeal> primes_dividing(const QuadIdeal& xi_ideal)
{
    const QuadraticOrder& ord = xi_ideal.order;
    Rat nr = xi_ideal.norm();
    nr.canonicalize();
    Int num = abs(nr.get_num()), den = nr.get_den();
    std::vector<QuadIdeal> out;
    std::vector<Int> ps = prime_support(num);
    for (const Int& p : prime_support(den))
        ps.push_back(p);  // fractional ideals: inverse primes enter the same subgroup
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (const Int& p : ps) {
        if (!ord.maximal() && divides(p, ord.f))
            throw std::invalid_argument("localized_class_equal: xi meets the conductor");
        int kr = kronecker(ord.D, p);
        if (kr == -1) continue;  // inert: principal, contributes nothing
        // candidates (p, b): b^2 ≡ D (mod 4p)
        for (const Int& beta : sqrt_mod(mod_floor(ord.D, 4 * p), 4 * p)) {
            if (mod_floor(beta - ord.D, 2) != 0) continue;
            QuadIdeal P;
            P.order = ord;
            P.a = p;
            P.b = mod_floor(beta, 2 * p);
            P.scale = 1;
            if (mod_floor(P.b * P.b - ord.D, 4 * p) != 0) continue;
            bool dup = false;
            for (auto& q : out)
                if (q.a == P.a && q.b == P.b) dup = true;
            if (dup) continue;
            // does P divide (xi)? containment of the scaled lattice
            QuadIdeal xiI = xi_ideal;
            if (ideal_contains(P, xiI)) out.push_back(P);
        }
    }
    return out;
}

// subgroup of the (wide) class group generated by the classes of `gens`,
// represented by ideal representatives, deduplicated by class equality
std::vector<QuadIdeal> class_subgroup(const QuadraticOrder& ord, const std::vector<QuadIdeal>& gens)
{
    std::vector<QuadIdeal> H{unit_ideal(ord)};
    std::vector<QuadIdeal> mults;
    for (const auto& g : gens) {
        mults.push_back(g);
        mults.push_back(ideal_conjugate(g));
    }
    std::vector<QuadIdeal> frontier = H;
    while (!frontier.empty()) {
        std::vector<QuadIdeal> next;
        for (const auto& h : frontier)
            for (const auto& g : mults) {
                QuadIdeal cand = ideal_multiply(h, g);
                cand.scale = 1;  // class representatives only
                bool known = false;
                for (const auto& k : H)
                    if (ideal_class_equal(cand, k)) {
                        known = true;
                        break;
                    }
                if (!known) {
                    H.push_back(cand);
                    next.push_back(cand);
                    if (H.size() > 5000)
                        throw std::runtime_error("localized closure exceeded 5000 classes");
                }
            }
        frontier = std::move(next);
    }
    return H;
}

bool localized_class_equal_impl(const QuadIdeal& I, const QuadIdeal& J, const QuadIdeal& xi_ideal)
{
    if (!(I.order == J.order) || !(I.order == xi_ideal.order))
        throw std::invalid_argument("localized_class_equal: mixed orders");
    auto gens = primes_dividing(xi_ideal);
    auto H = class_subgroup(I.order, gens);
    QuadIdeal diff = ideal_multiply(I, ideal_conjugate(J));
    for (const auto& h : H)
        if (ideal_class_equal(diff, h)) return true;
    return false;
}

}  // namespace

bool localized_class_equal(const QuadIdeal& I, const QuadIdeal& J, const QuadIdeal& xi_ideal)
{
    if (!I.order.maximal()) {
        // the public operation is defined on maximal orders; the
        // conductor-2 paths call the impl with their own prevalidation
        throw std::invalid_argument("localized_class_equal: order is not maximal");
    }
    return localized_class_equal_impl(I, J, xi_ideal);
}

namespace {

QuadIdeal xi_principal_ideal(const QuadraticOrder& ord)
{
    QuadElem xi{Rat(ord.xi_trace()) / 2, Rat(ord.sqrt_scale()) / 2};
    return principal_ideal(ord, xi);
}

std::string side_name(bool maximal_side) { return maximal_side ? "maximal" : "conductor-index-2"; }

}  // namespace

SEVerdict decide_irreducible_quadratic(const IntMatrix& T1, const IntMatrix& T2,
                                       const SearchBounds& witness_bounds)
{
    IntPoly chi1 = charpoly(T1), chi2 = charpoly(T2);
    if (chi1 != chi2)
        return SEVerdict::not_equivalent("characteristic_polynomial", chi1.to_string(),
                                         chi2.to_string());
    QuadraticOrder ord = order_from_charpoly(chi1);
    auto equivalent_with_witness = [&]() {
        auto w = search_witness(T1, T2, witness_bounds);
        return SEVerdict::equivalent(w);
    };

    if (ord.maximal()) {
        QuadIdeal A1 = matrix_to_ideal(T1, ord), A2 = matrix_to_ideal(T2, ord);
        if (localized_class_equal_impl(A1, A2, xi_principal_ideal(ord)))
            return equivalent_with_witness();
        return SEVerdict::not_equivalent("localized_ideal_class", A1.form().to_string(),
                                         A2.form().to_string());
    }
    if (ord.f == 2) {
        QuadIdeal A1 = matrix_to_ideal(T1, ord), A2 = matrix_to_ideal(T2, ord);
        const Int nrm = ord.xi_norm();
        if (mod_floor(nrm, 2) != 0) {
            // the conductor survives localization: the multiplier ring is an
            // invariant, and each side is decided by its localized classes
            bool s1 = ideal_has_maximal_multiplier_ring(A1);
            bool s2 = ideal_has_maximal_multiplier_ring(A2);
            if (s1 != s2)
                return SEVerdict::not_equivalent("multiplier_ring_at_conductor", side_name(s1),
                                                 side_name(s2));
            if (s1) {
                QuadIdeal B1 = saturate_to_maximal(A1), B2 = saturate_to_maximal(A2);
                // localize at the original root, carried into the maximal order
                QuadIdeal xiK = saturate_to_maximal(xi_principal_ideal(ord));
                if (localized_class_equal_impl(B1, B2, xiK)) return equivalent_with_witness();
                return SEVerdict::not_equivalent("localized_ideal_class", B1.form().to_string(),
                                                 B2.form().to_string());
            }
            if (localized_class_equal_impl(A1, A2, xi_principal_ideal(ord)))
                return equivalent_with_witness();
            return SEVerdict::not_equivalent("localized_ideal_class", A1.form().to_string(),
                                             A2.form().to_string());
        }
        // 2 | N(xi): if every prime over 2 divides xi, inverting t kills the
        // conductor and the maximal-order classes decide
        QuadraticOrder maximal = saturate_to_maximal(unit_ideal(ord)).order;
        QuadIdeal xiK = xi_principal_ideal(ord);
        xiK = saturate_to_maximal(xiK);
        auto over2 = [&]() {
            std::vector<QuadIdeal> out;
            for (const Int& beta : sqrt_mod(mod_floor(maximal.D, 8), 8)) {
                if (mod_floor(beta - maximal.D, 2) != 0) continue;
                QuadIdeal P;
                P.order = maximal;
                P.a = 2;
                P.b = mod_floor(beta, 4);
                P.scale = 1;
                if (mod_floor(P.b * P.b - maximal.D, 8) != 0) continue;
                bool dup = false;
                for (auto& q : out)
                    if (q.a == P.a && q.b == P.b) dup = true;
                if (!dup) out.push_back(P);
            }
            if (out.empty()) {
                // 2 inert: the prime is (2)
                QuadIdeal P = unit_ideal(maximal);
                P.scale = 2;
                out.push_back(P);
            }
            return out;
        }();
        for (const auto& P : over2)
            if (!ideal_contains(P, xiK))
                return SEVerdict::unknown(
                    "localization only partially meets the conductor (outside the decided "
                    "families)");
        QuadIdeal B1 = saturate_to_maximal(A1), B2 = saturate_to_maximal(A2);
        if (localized_class_equal_impl(B1, B2, xiK)) return equivalent_with_witness();
        return SEVerdict::not_equivalent("localized_ideal_class", B1.form().to_string(),
                                         B2.form().to_string());
    }
    return SEVerdict::unknown("order has conductor " + ord.f.get_str() +
                              "; only conductor 1 and 2 are decided");
}

namespace {

// The ideal attached to a proper form class: a positive-lead representative
// (every indefinite cycle contains one; the sign flip would land in the
// conjugate class).
QuadIdeal ideal_from_census_class(const QuadraticOrder& o,
                                  const std::vector<BinaryQuadraticForm>& cls)
{
    BinaryQuadraticForm f = cls.front();
    if (f.a < 0)
        for (const auto& g : cls)
            if (g.a > 0) {
                f = g;
                break;
            }
    if (f.a < 0) throw std::logic_error("census class without a positive lead");
    QuadIdeal I;
    I.order = o;
    I.a = f.a;
    I.b = mod_floor(f.b, 2 * f.a);
    I.scale = 1;
    return I;
}

}  // namespace

std::string tag_name(ConductorTag t)
{
    switch (t) {
        case ConductorTag::R: return "R";
        case ConductorTag::J0: return "J0";
        case ConductorTag::J1: return "J1";
        case ConductorTag::Rbar: return "Rbar";
        default: return "other";
    }
}

namespace {

// candidate lattices R, J0 = (2, w)R, J1 = (2, 1+w)R, Rbar for a conductor-2
// order, as O-module lattices
std::vector<std::pair<ConductorTag, std::vector<QuadElem>>> conductor2_candidates(
    const QuadraticOrder& ord)
{
    QuadElem one{Rat(1), Rat(0)};
    QuadElem two{Rat(2), Rat(0)};
    QuadElem xi{Rat(ord.xi_trace()) / 2, Rat(ord.sqrt_scale()) / 2};
    const Int s0 = (mod_floor(ord.D0, 2) == 0) ? 2 : 1;
    QuadElem omega_k{Rat(mod_floor(ord.D0, 2)) / 2, Rat(s0) / 2};
    QuadElem omega_k1 = QuadElem{omega_k.x + 1, omega_k.y};
    const Int& rad = ord.rad;
    auto span = [&](const QuadElem& g1, const QuadElem& g2) {
        return std::vector<QuadElem>{g1, mul(g1, xi, rad), g2, mul(g2, xi, rad)};
    };
    return {
        {ConductorTag::R, span(one, xi)},
        {ConductorTag::J0, span(two, omega_k)},
        {ConductorTag::J1, span(two, omega_k1)},
        {ConductorTag::Rbar, span(one, omega_k)},
    };
}

// canonical representative matrices for the t^2 - d family (d ≡ 1 mod 4):
// column-convention matrices of sqrt(d) on the bases {1, sqrt d}, {2, w},
// {2, 1+w}, {1, w}
std::optional<IntMatrix> family_matrix(const QuadraticOrder& ord, ConductorTag t)
{
    if (ord.xi_trace() != 0 || ord.f != 2) return std::nullopt;
    const Int d = -ord.xi_norm();  // chi = t^2 - d
    if (mod_floor(d, 4) != 1) return std::nullopt;
    const Int c = exact_div(d - 1, 4);
    switch (t) {
        case ConductorTag::R: return IntMatrix{{0, d}, {1, 0}};
        case ConductorTag::J0: return IntMatrix{{-1, c}, {4, 1}};
        case ConductorTag::J1: return IntMatrix{{-3, c - 2}, {4, 3}};
        case ConductorTag::Rbar: return IntMatrix{{-1, 2 * c}, {2, 1}};
        default: return std::nullopt;
    }
}

}  // namespace

Conductor2Classification classify_conductor2(const IntPoly& chi)
{
    QuadraticOrder ord = order_from_charpoly(chi);
    if (ord.f != 2) throw std::invalid_argument("classify_conductor2: conductor is not 2");
    QuadraticOrder maximal = saturate_to_maximal(unit_ideal(ord)).order;

    Conductor2Classification out;
    // census on both sides, merged to wide classes
    auto side_classes = [&](const QuadraticOrder& o) {
        std::vector<QuadIdeal> reps;
        for (auto& cls : form_class_census(o.D)) {
            QuadIdeal I = ideal_from_census_class(o, cls);
            bool dup = false;
            for (auto& r : reps)
                if (ideal_class_equal(r, I)) dup = true;  // wide merge of the proper census
            if (!dup) reps.push_back(I);
        }
        return reps;
    };
    std::vector<QuadIdeal> inner = side_classes(ord);        // multiplier ring = order itself
    std::vector<QuadIdeal> outer = side_classes(maximal);    // multiplier ring = maximal order

    // place the four candidates
    struct Placed {
        ConductorTag tag;
        bool maximal_side;
        std::size_t index;
    };
    std::vector<Placed> placed;
    for (auto& [tag, gens] : conductor2_candidates(ord)) {
        QuadIdeal L = lattice_to_ideal(ord, gens);
        bool maximal_side = ideal_has_maximal_multiplier_ring(L);
        if (maximal_side) {
            QuadIdeal K = saturate_to_maximal(L);
            for (std::size_t i = 0; i < outer.size(); ++i)
                if (ideal_class_equal(K, outer[i])) placed.push_back({tag, true, i});
        } else {
            for (std::size_t i = 0; i < inner.size(); ++i)
                if (ideal_class_equal(L, inner[i])) placed.push_back({tag, false, i});
        }
    }

    // assemble class entries
    QuadElem xi_elem{Rat(ord.xi_trace()) / 2, Rat(ord.sqrt_scale()) / 2};
    auto build = [&](bool maximal_side, std::size_t idx, const QuadIdeal& I) {
        ConductorClass c;
        c.maximal_side = maximal_side;
        c.ideal = I;
        for (auto& p : placed)
            if (p.maximal_side == maximal_side && p.index == idx) c.members.push_back(p.tag);
        if (c.members.empty()) c.members.push_back(ConductorTag::Other);
        c.pic_class = maximal_side ? I : saturate_to_maximal(I);
        std::optional<IntMatrix> rep;
        for (auto t : c.members) {
            rep = family_matrix(ord, t);
            if (rep) break;
        }
        IntMatrix m = rep ? *rep : matrix_of_multiplier(I, xi_elem, chi);
        if (charpoly(m) != chi) throw std::logic_error("classify_conductor2: bad representative");
        c.representative = m;
        return c;
    };
    for (std::size_t i = 0; i < inner.size(); ++i) out.classes.push_back(build(false, i, inner[i]));
    for (std::size_t i = 0; i < outer.size(); ++i) out.classes.push_back(build(true, i, outer[i]));
    out.iso_count = out.classes.size();

    // shift-equivalence grouping: localized class equality per side
    const Int nrm = ord.xi_norm();
    std::vector<int> se_index(out.classes.size(), -1);
    std::size_t next = 0;
    QuadIdeal xi_inner = xi_principal_ideal(ord);
    QuadIdeal xi_outer = saturate_to_maximal(xi_inner);
    bool conductor_dies = false;
    if (mod_floor(nrm, 2) == 0) {
        // supported only when inverting t inverts 2 outright (every prime of
        // the maximal order over 2 divides xi)
        for (const Int& beta : sqrt_mod(mod_floor(maximal.D, 8), 8)) {
            QuadIdeal P;
            P.order = maximal;
            P.a = 2;
            P.b = mod_floor(beta, 4);
            P.scale = 1;
            if (mod_floor(P.b * P.b - maximal.D, 8) != 0) continue;
            QuadElem u1 = P.gen1(), u2 = P.gen2();
            auto holds = [&](const QuadElem& v) {
                Rat be = v.y / u2.y;
                Rat al = (v.x - be * u2.x) / u1.x;
                al.canonicalize();
                be.canonicalize();
                return al.get_den() == 1 && be.get_den() == 1;
            };
            if (!holds(xi_outer.gen1()) || !holds(xi_outer.gen2()))
                throw std::invalid_argument(
                    "classify_conductor2: localization only partially meets the conductor");
        }
        conductor_dies = true;
    }
    for (std::size_t i = 0; i < out.classes.size(); ++i) {
        if (se_index[i] >= 0) continue;
        se_index[i] = static_cast<int>(next);
        for (std::size_t j = i + 1; j < out.classes.size(); ++j) {
            if (se_index[j] >= 0) continue;
            const auto &ci = out.classes[i], &cj = out.classes[j];
            bool merged = false;
            if (conductor_dies) {
                merged = localized_class_equal_impl(ci.pic_class, cj.pic_class, xi_outer);
            } else if (ci.maximal_side == cj.maximal_side) {
                merged = ci.maximal_side
                             ? localized_class_equal_impl(ci.pic_class, cj.pic_class, xi_outer)
                             : localized_class_equal_impl(ci.ideal, cj.ideal, xi_inner);
            }
            if (merged) se_index[j] = static_cast<int>(next);
        }
        ++next;
    }
    for (std::size_t i = 0; i < out.classes.size(); ++i)
        out.classes[i].se_class = static_cast<std::size_t>(se_index[i]);
    out.se_count = next;
    return out;
}

std::pair<std::size_t, std::size_t> class_count(const IntPoly& chi)
{
    QuadraticOrder ord = order_from_charpoly(chi);
    if (ord.maximal()) {
        std::vector<QuadIdeal> reps;
        for (auto& cls : form_class_census(ord.D)) {
            QuadIdeal I = ideal_from_census_class(ord, cls);
            bool dup = false;
            for (auto& r : reps)
                if (ideal_class_equal(r, I)) dup = true;
            if (!dup) reps.push_back(I);
        }
        const std::size_t iso = reps.size();
        QuadIdeal xiI = xi_principal_ideal(ord);
        std::vector<int> se(reps.size(), -1);
        std::size_t next = 0;
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (se[i] >= 0) continue;
            se[i] = static_cast<int>(next);
            for (std::size_t j = i + 1; j < reps.size(); ++j) {
                if (se[j] >= 0) continue;
                if (localized_class_equal_impl(reps[i], reps[j], xiI)) se[j] = static_cast<int>(next);
            }
            ++next;
        }
        return {iso, next};
    }
    if (ord.f == 2) {
        auto cl = classify_conductor2(chi);
        return {cl.iso_count, cl.se_count};
    }
    throw std::invalid_argument("class_count: conductor beyond the decided families");
}

std::vector<IntMatrix> class_representatives(const IntPoly& chi)
{
    QuadraticOrder ord = order_from_charpoly(chi);
    std::vector<IntMatrix> out;
    if (ord.maximal()) {
        std::vector<QuadIdeal> reps;
        for (auto& cls : form_class_census(ord.D)) {
            QuadIdeal I = ideal_from_census_class(ord, cls);
            bool dup = false;
            for (auto& r : reps)
                if (ideal_class_equal(r, I)) dup = true;
            if (!dup) reps.push_back(I);
        }
        QuadIdeal xiI = xi_principal_ideal(ord);
        std::vector<char> used(reps.size(), 0);
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (used[i]) continue;
            for (std::size_t j = i + 1; j < reps.size(); ++j)
                if (!used[j] && localized_class_equal_impl(reps[i], reps[j], xiI)) used[j] = 1;
            out.push_back(ideal_to_matrix(reps[i]));
        }
        return out;
    }
    auto cl = classify_conductor2(chi);
    std::set<std::size_t> seen;
    for (auto& c : cl.classes)
        if (seen.insert(c.se_class).second) out.push_back(c.representative);
    return out;
}

}  // namespace shifteq
