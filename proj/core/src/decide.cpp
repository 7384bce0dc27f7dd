#include "shifteq/decide.hpp"

#include <chrono>

#include "shifteq/intlin.hpp"
#include "shifteq/qorder.hpp"
#include "shifteq/split.hpp"

namespace shifteq {

namespace {

// witness between T and its nilpotent-stripped core
SEWitness strip_witness(const NilpotentStrip& s) { return SEWitness{s.proj, s.sect, s.lag}; }

// invariant battery beyond the characteristic polynomial: cokernel groups of
// f(T) for polynomials f with unit constant term (honest invariants of the
// localization)
const std::vector<IntPoly>& battery()
{
    static const std::vector<IntPoly> fs = {
        IntPoly{1, -1},        // 1 - t
        IntPoly{1, 1},         // 1 + t
        IntPoly{1, 1, 1},      // 1 + t + t^2
        IntPoly{1, -1, 1},     // 1 - t + t^2
        IntPoly{1, 0, 0, 1},   // 1 + t^3
    };
    return fs;
}

}  // namespace

DecideOutcome decide_matrices(const IntMatrix& T1, const IntMatrix& T2, const DecideOptions& opts)
{
    auto t0 = std::chrono::steady_clock::now();
    DecideOutcome out;
    auto finish = [&](SEVerdict v, std::string route) {
        out.verdict = std::move(v);
        out.route = std::move(route);
        out.decide_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        return out;
    };
    if (!T1.is_square() || !T2.is_square())
        throw std::invalid_argument("decide: matrices must be square");

    // (1) strip nilpotent parts
    NilpotentStrip s1 = remove_nilpotent_part(T1);
    NilpotentStrip s2 = remove_nilpotent_part(T2);
    const IntMatrix &A = s1.reduced, &B = s2.reduced;

    auto lift_witness = [&](std::optional<SEWitness> w) -> std::optional<SEWitness> {
        if (!w) return std::nullopt;
        // T1 ~ A ~ B ~ T2
        SEWitness full = compose_witness(compose_witness(strip_witness(s1), *w),
                                         reverse_witness(strip_witness(s2)));
        if (!verify_witness(T1, T2, full)) return std::nullopt;
        return full;
    };

    if (A.rows() == 0 && B.rows() == 0) {
        SEWitness w{IntMatrix(0, 0), IntMatrix(0, 0), 1};
        return finish(SEVerdict::equivalent(lift_witness(w)), "trivial");
    }

    // (2) rational invariants
    IntPoly chi1 = charpoly(A), chi2 = charpoly(B);
    if (chi1 != chi2)
        return finish(SEVerdict::not_equivalent("characteristic_polynomial", chi1.to_string(),
                                                chi2.to_string()),
                      "trivial");
    for (std::size_t i = 0; i < 2; ++i) {
        const IntPoly& f = battery()[i];
        AbelianGroupType g1 = bowen_franks(A, f), g2 = bowen_franks(B, f);
        if (g1 != g2)
            return finish(SEVerdict::not_equivalent("bowen_franks[" + f.to_string() + "]",
                                                    g1.to_string(), g2.to_string()),
                          "trivial");
    }

    if (A == B) {
        SEWitness w{IntMatrix::identity(A.rows()), A, 1};
        return finish(SEVerdict::equivalent(lift_witness(w)), "trivial");
    }

    // (3) dispatch on the common characteristic polynomial
    if (A.rows() == 2) {
        const Int D = chi1.coeff(1) * chi1.coeff(1) - 4 * chi1.coeff(0);
        if (is_perfect_square(D)) {
            // split: two integer eigenvalues
            const Int tr = -chi1.coeff(1);
            const Int root = isqrt(D);
            const Int l1 = exact_div(tr - root, 2), l2 = exact_div(tr + root, 2);
            auto tri1 = triangularize_over_Z(A, l1);
            auto tri2 = triangularize_over_Z(B, l1);
            TriangularModule M{l1, l2, tri1.lower.at(1, 0)};
            TriangularModule N{l1, l2, tri2.lower.at(1, 0)};
            SEVerdict v = decide_split(M, N);
            if (v.status == SEStatus::Equivalent) {
                std::optional<SEWitness> w;
                if (v.witness) {
                    // conjugate back: A = U1 L1 U1^-1
                    SEWitness wa{tri1.U.unimodular_inverse(), A * tri1.U, 1};
                    SEWitness wb{tri2.U.unimodular_inverse(), B * tri2.U, 1};
                    SEWitness mid = compose_witness(compose_witness(wa, *v.witness),
                                                    reverse_witness(wb));
                    if (verify_witness(A, B, mid)) w = lift_witness(mid);
                }
                return finish(SEVerdict::equivalent(w), "split");
            }
            return finish(v, "split");
        }
        // irreducible quadratic
        SEVerdict v = decide_irreducible_quadratic(A, B, opts.bounds);
        if (v.status == SEStatus::Equivalent) {
            std::optional<SEWitness> w = v.witness ? lift_witness(v.witness) : std::nullopt;
            return finish(SEVerdict::equivalent(w), "quadratic");
        }
        if (v.status == SEStatus::Unknown) {
            // out-of-family conductor: a bounded witness search may still settle it
            if (auto w = search_witness(A, B, opts.bounds))
                return finish(SEVerdict::equivalent(lift_witness(*w)), "oracle");
        }
        return finish(v, "quadratic");
    }

    // n >= 3 (1x1 pairs with equal charpoly are equal and were caught above):
    // invariant battery, then bounded witness search
    for (const IntPoly& f : battery()) {
        AbelianGroupType g1 = bowen_franks(A, f), g2 = bowen_franks(B, f);
        if (g1 != g2)
            return finish(SEVerdict::not_equivalent("bowen_franks[" + f.to_string() + "]",
                                                    g1.to_string(), g2.to_string()),
                          "oracle");
    }
    if (auto w = search_witness(A, B, opts.bounds))
        return finish(SEVerdict::equivalent(lift_witness(*w)), "oracle");
    return finish(SEVerdict::unknown("no invariant separates the pair and witness search "
                                     "exhausted the configured bounds"),
                  "oracle");
}

}  // namespace shifteq
