#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "shifteq/split.hpp"

using namespace shifteq;

namespace {

bool eq(const TriangularModule& a, const TriangularModule& b)
{
    return decide_split(a, b).status == SEStatus::Equivalent;
}

IntMatrix random_unimodular(std::mt19937_64& rng, int steps)
{
    IntMatrix u = IntMatrix::identity(2);
    std::uniform_int_distribution<long> off(-2, 2);
    for (int s = 0; s < steps; ++s) {
        Int k = Int(off(rng));
        if (rng() % 2) {
            u.at(0, 0) += k * u.at(1, 0), u.at(0, 1) += k * u.at(1, 1);
        } else {
            u.at(1, 0) += k * u.at(0, 0), u.at(1, 1) += k * u.at(0, 1);
        }
    }
    return u;
}

}  // namespace

TEST_CASE("pinned decisions across eigenvalue shapes")
{
    // involution family: off-diagonal parity decides
    CHECK_FALSE(eq({1, -1, 1}, {1, -1, 0}));
    // adjacent eigenvalues: everything collapses
    CHECK(eq({3, 4, 5}, {3, 4, 0}));
    // (2,19): 0 and 2 differ
    CHECK_FALSE(eq({2, 19, 0}, {2, 19, 2}));
    // (1,5): a ~ b iff a ≡ ±b mod 4
    for (long a = -8; a <= 8; ++a)
        for (long b = -8; b <= 8; ++b) {
            bool expect = (a - b) % 4 == 0 || (a + b) % 4 == 0;
            CHECK(eq({1, 5, Int(a)}, {1, 5, Int(b)}) == expect);
        }
}

TEST_CASE("equivalent pairs carry verified witnesses")
{
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> lam(-6, 6), off(-20, 20);
    int found = 0;
    for (int it = 0; it < 400 && found < 60; ++it) {
        Int l1 = Int(lam(rng)), l2 = Int(lam(rng));
        if (l1 == 0 || l2 == 0) continue;
        TriangularModule M{l1, l2, Int(off(rng))}, N{l1, l2, Int(off(rng))};
        SEVerdict v = decide_split(M, N);
        if (v.status != SEStatus::Equivalent) continue;
        ++found;
        REQUIRE(v.witness.has_value());
        CHECK(verify_witness(M.matrix(), N.matrix(), *v.witness));
    }
    CHECK(found >= 30);
}

TEST_CASE("refutations admit no witness at moderate bounds")
{
    std::mt19937_64 rng(25);
    std::uniform_int_distribution<long> lam(-5, 5), off(-10, 10);
    int refuted = 0;
    for (int it = 0; it < 300 && refuted < 25; ++it) {
        Int l1 = Int(lam(rng)), l2 = Int(lam(rng));
        if (l1 == 0 || l2 == 0) continue;
        TriangularModule M{l1, l2, Int(off(rng))}, N{l1, l2, Int(off(rng))};
        if (decide_split(M, N).status != SEStatus::NotEquivalent) continue;
        ++refuted;
        CHECK_FALSE(search_witness(M.matrix(), N.matrix(), SearchBounds{6, 3}).has_value());
    }
    CHECK(refuted >= 15);
}

TEST_CASE("equivalence relation axioms on random triples")
{
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<long> lam(-5, 5), off(-15, 15);
    for (int it = 0; it < 300; ++it) {
        Int l1 = Int(lam(rng)), l2 = Int(lam(rng));
        if (l1 == 0 || l2 == 0) continue;
        TriangularModule a{l1, l2, Int(off(rng))};
        TriangularModule b{l1, l2, Int(off(rng))};
        TriangularModule c{l1, l2, Int(off(rng))};
        CHECK(eq(a, a));
        CHECK(eq(a, b) == eq(b, a));
        if (eq(a, b) && eq(b, c)) CHECK(eq(a, c));
    }
}

TEST_CASE("verdicts invariant under negating a and swapping roles")
{
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> lam(-5, 5), off(-15, 15);
    for (int it = 0; it < 200; ++it) {
        Int l1 = Int(lam(rng)), l2 = Int(lam(rng));
        if (l1 == 0 || l2 == 0) continue;
        TriangularModule a{l1, l2, Int(off(rng))};
        TriangularModule b{l1, l2, Int(off(rng))};
        bool base = eq(a, b);
        CHECK(eq({l1, l2, -a.a}, b) == base);
        CHECK(eq({l2, l1, a.a}, {l2, l1, b.a}) == base);
    }
}

TEST_CASE("classification representative counts")
{
    auto pm = classify_split(1, -1);
    REQUIRE(pm.finite);
    CHECK(pm.representatives == std::vector<Int>{0, 1});

    CHECK(classify_split(1, 2).representatives == std::vector<Int>{0});
    CHECK(classify_split(1, 18).representatives.size() == 2);
    CHECK(classify_split(3, 20).representatives.size() == 2);
    // 17 = |2 - 19|: the closure <-1, 2, 19> mod 17 equals <2>, index 2, so
    // the classes are {0}, the squares, and the nonsquares
    CHECK(classify_split(2, 19).representatives.size() == 3);

    auto inf = classify_split(3, 3);
    CHECK_FALSE(inf.finite);
    CHECK(inf.canonical_a(18) == 2);
    CHECK(inf.canonical_a(-10) == 10);
    CHECK(inf.canonical_a(0) == 0);
}

TEST_CASE("classification agrees with the pairwise decision")
{
    auto cl = classify_split(2, 19);
    for (std::size_t i = 0; i < cl.representatives.size(); ++i)
        for (std::size_t j = i + 1; j < cl.representatives.size(); ++j)
            CHECK_FALSE(eq({2, 19, cl.representatives[i]}, {2, 19, cl.representatives[j]}));
    for (long a = 0; a < 17; ++a) {
        int hits = 0;
        for (const Int& rep : cl.representatives)
            if (eq({2, 19, Int(a)}, {2, 19, rep})) ++hits;
        CHECK(hits == 1);
    }
}

TEST_CASE("descent canonicalization")
{
    auto r1 = descent_canonicalize(IntMatrix{{0, 1}, {1, 0}});
    CHECK(r1.tag == InvolutionClass::P);
    CHECK(r1.conjugator == IntMatrix::identity(2));

    auto r2 = descent_canonicalize(IntMatrix{{1, 1}, {0, -1}});
    CHECK(r2.tag == InvolutionClass::P);

    auto r3 = descent_canonicalize(IntMatrix{{1, 2}, {0, -1}});
    CHECK(r3.tag == InvolutionClass::Q);

    auto r4 = descent_canonicalize(IntMatrix{{2, -1}, {3, -2}});
    // cross-check the tag against the split decision on a triangularization
    auto tri = triangularize_over_Z(IntMatrix{{2, -1}, {3, -2}}, Int(-1));
    TriangularModule m{tri.lower.at(0, 0), tri.lower.at(1, 1), tri.lower.at(1, 0)};
    TriangularModule p{-1, 1, 1}, q{-1, 1, 0};
    bool is_p = decide_split(m, p).status == SEStatus::Equivalent;
    bool is_q = decide_split(m, q).status == SEStatus::Equivalent;
    CHECK(is_p != is_q);
    CHECK((r4.tag == InvolutionClass::P) == is_p);

    CHECK_THROWS_AS(descent_canonicalize(IntMatrix{{1, 0}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("descent tag is conjugation stable")
{
    std::mt19937_64 rng(24);
    for (int it = 0; it < 120; ++it) {
        // random involution-like matrix via conjugation of P or Q
        IntMatrix base = (rng() % 2) ? IntMatrix{{0, 1}, {1, 0}} : IntMatrix{{1, 0}, {0, -1}};
        IntMatrix u = random_unimodular(rng, 5);
        IntMatrix T = u * base * u.unimodular_inverse();
        auto r = descent_canonicalize(T);
        CHECK(r.conjugator * T * r.conjugator.unimodular_inverse() == r.terminal);
        bool expect_p = base == IntMatrix{{0, 1}, {1, 0}};
        CHECK((r.tag == InvolutionClass::P) == expect_p);
    }
}

TEST_CASE("mixed modules over Z + Z/m")
{
    // reflexivity
    CHECK(decide_mixed({9, 2, 5, 4}, {9, 2, 5, 4}).status == SEStatus::Equivalent);
    // unit orbits mod 9 for matching invertible eigenvalues
    CHECK(decide_mixed({9, 1, 1, 1}, {9, 1, 1, 3}).status == SEStatus::NotEquivalent);
    CHECK(decide_mixed({9, 1, 1, 1}, {9, 1, 1, 2}).status == SEStatus::Equivalent);
    // prime modulus, distinct eigenvalue images: a is free
    CHECK(decide_mixed({5, 1, 3, 0}, {5, 1, 3, 4}).status == SEStatus::Equivalent);
    // prime modulus, equal images: the zero class is separate
    CHECK(decide_mixed({5, 1, 1, 0}, {5, 1, 1, 1}).status == SEStatus::NotEquivalent);
    CHECK(decide_mixed({5, 1, 1, 2}, {5, 1, 1, 1}).status == SEStatus::Equivalent);
    // outside the hypotheses: lambda2 ≡ 0
    CHECK(decide_mixed({9, 2, 9, 1}, {9, 2, 9, 1}).status == SEStatus::Unknown);
}

TEST_CASE("error paths")
{
    CHECK_THROWS_AS(decide_split({0, 1, 1}, {0, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(classify_split(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(decide_mixed({1, 1, 1, 0}, {1, 1, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(decide_mixed({9, 0, 1, 0}, {9, 0, 1, 0}), std::invalid_argument);
}

TEST_CASE("mixed fast path agrees with the closure criterion")
{
    // lambda2 ≡ lambda1, gcd(lambda1, m) = 1: unit orbits = gcd classes
    for (long a = 0; a < 12; ++a)
        for (long b = 0; b < 12; ++b) {
            auto v = decide_mixed({12, 7, 7, Int(a)}, {12, 7, 7, Int(b)});
            bool expect = gcd(Int(a), 12) == gcd(Int(b), 12);
            CHECK((v.status == SEStatus::Equivalent) == expect);
        }
}
