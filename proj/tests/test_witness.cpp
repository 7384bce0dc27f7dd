#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "shifteq/witness.hpp"

using namespace shifteq;

namespace {

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

TEST_CASE("verify_witness on the reflexive certificate")
{
    IntMatrix T{{0, 1}, {1, 0}};
    CHECK(verify_witness(T, T, SEWitness{IntMatrix::identity(2), T, 1}));
    CHECK_FALSE(verify_witness(T, T, SEWitness{IntMatrix::identity(2), T, 2}));
}

TEST_CASE("verify_witness on a conjugation")
{
    std::mt19937_64 rng(9);
    for (int it = 0; it < 40; ++it) {
        IntMatrix T{{Int(long(rng() % 7)) - 3, Int(long(rng() % 7)) - 3},
                    {Int(long(rng() % 7)) - 3, Int(long(rng() % 7)) - 3}};
        IntMatrix P = random_unimodular(rng, 5);
        IntMatrix T2 = P * T * P.unimodular_inverse();
        CHECK(verify_witness(T, T2, witness_from_conjugation(T, P)));
    }
}

TEST_CASE("search finds the reflexive witness inside tiny bounds")
{
    IntMatrix T{{0, 1}, {1, 0}};
    auto w = search_witness(T, T, SearchBounds{1, 1});
    REQUIRE(w.has_value());
    CHECK(verify_witness(T, T, *w));
}

TEST_CASE("explicit cross-scale pair has a small witness")
{
    IntMatrix T1{{0, -6}, {1, 0}}, T2{{0, -3}, {2, 0}};
    auto w = search_witness(T1, T2, SearchBounds{6, 4});
    REQUIRE(w.has_value());
    CHECK(verify_witness(T1, T2, *w));
}

TEST_CASE("involution pair admits no witness at any tested bound")
{
    IntMatrix Q{{1, 0}, {0, -1}}, P{{0, 1}, {1, 0}};
    CHECK_FALSE(search_witness(Q, P, SearchBounds{6, 4}).has_value());
}

TEST_CASE("search symmetry in the arguments")
{
    std::mt19937_64 rng(10);
    IntMatrix pool[] = {
        IntMatrix{{0, 1}, {1, 0}},  IntMatrix{{1, 0}, {0, -1}}, IntMatrix{{0, -6}, {1, 0}},
        IntMatrix{{0, -3}, {2, 0}}, IntMatrix{{2, 1}, {0, 3}},
    };
    for (const auto& a : pool)
        for (const auto& b : pool) {
            SearchBounds bd{6, 3};
            bool fw = search_witness(a, b, bd).has_value();
            bool bw = search_witness(b, a, bd).has_value();
            CHECK(fw == bw);
        }
}

TEST_CASE("search_conjugator pinned cases")
{
    IntMatrix P{{0, 1}, {1, 0}};
    IntMatrix T2{{1, 1}, {0, -1}};
    auto c1 = search_conjugator(P, T2, Int(6));
    REQUIRE(c1.has_value());
    CHECK(*c1 * P * c1->unimodular_inverse() == T2);

    IntMatrix rot{{0, -1}, {1, 0}};
    IntMatrix rotneg{{0, 1}, {-1, 0}};
    auto c2 = search_conjugator(rot, rotneg, Int(3));
    REQUIRE(c2.has_value());
    CHECK(*c2 * rot * c2->unimodular_inverse() == rotneg);

    auto c3 = search_conjugator(IntMatrix::identity(2), IntMatrix::identity(2), Int(1));
    REQUIRE(c3.has_value());

    // no conjugator between the two involution classes
    CHECK_FALSE(search_conjugator(P, IntMatrix{{1, 0}, {0, -1}}, Int(5)).has_value());
}

TEST_CASE("conjugation witness from search verifies")
{
    std::mt19937_64 rng(11);
    for (int it = 0; it < 20; ++it) {
        IntMatrix T{{1, 1}, {-4, 1}};
        IntMatrix P = random_unimodular(rng, 4);
        IntMatrix T2 = P * T * P.unimodular_inverse();
        Int bound = P.max_abs() * (T.max_abs() + 1) * 4;
        auto c = search_conjugator(T, T2, bound);
        REQUIRE(c.has_value());
        CHECK(verify_witness(T, T2, witness_from_conjugation(T, *c)));
    }
}

TEST_CASE("witness composition adds lags")
{
    IntMatrix T1{{0, -6}, {1, 0}}, T2{{0, -3}, {2, 0}};
    auto w = search_witness(T1, T2, SearchBounds{6, 4});
    REQUIRE(w.has_value());
    SEWitness self{IntMatrix::identity(2), T2, 1};
    SEWitness comp = compose_witness(*w, self);
    CHECK(verify_witness(T1, T2, comp));
    CHECK(comp.m == w->m + 1);
    CHECK(verify_witness(T2, T1, reverse_witness(*w)));
}

TEST_CASE("bounded completeness against a brute-force enumeration")
{
    // tiny box: every R, S with entries in [-2, 2] and lag up to 2
    auto brute = [](const IntMatrix& T1, const IntMatrix& T2) {
        for (unsigned long m = 1; m <= 2; ++m) {
            long e[8];
            for (e[0] = -2; e[0] <= 2; ++e[0])
                for (e[1] = -2; e[1] <= 2; ++e[1])
                    for (e[2] = -2; e[2] <= 2; ++e[2])
                        for (e[3] = -2; e[3] <= 2; ++e[3]) {
                            IntMatrix R{{Int(e[0]), Int(e[1])}, {Int(e[2]), Int(e[3])}};
                            if (R * T1 != T2 * R) continue;
                            for (e[4] = -2; e[4] <= 2; ++e[4])
                                for (e[5] = -2; e[5] <= 2; ++e[5])
                                    for (e[6] = -2; e[6] <= 2; ++e[6])
                                        for (e[7] = -2; e[7] <= 2; ++e[7]) {
                                            IntMatrix S{{Int(e[4]), Int(e[5])},
                                                        {Int(e[6]), Int(e[7])}};
                                            if (verify_witness(T1, T2, SEWitness{R, S, m}))
                                                return true;
                                        }
                        }
        }
        return false;
    };
    std::vector<IntMatrix> pool = {
        IntMatrix{{0, 1}, {1, 0}},  IntMatrix{{1, 0}, {0, -1}}, IntMatrix{{1, 1}, {0, -1}},
        IntMatrix{{0, -1}, {1, 0}}, IntMatrix{{1, 1}, {-1, 1}}, IntMatrix{{2, 1}, {1, 1}},
    };
    SearchBounds tiny{2, 2};
    for (const auto& a : pool)
        for (const auto& b : pool) {
            bool expect = brute(a, b);
            auto got = search_witness(a, b, tiny);
            CHECK(got.has_value() == expect);
            if (got) CHECK(verify_witness(a, b, *got));
        }
}

TEST_CASE("rectangular witness across a nilpotent strip")
{
    // [[2,0],[0,0]] is shift equivalent to [2]
    IntMatrix big{{2, 0}, {0, 0}};
    IntMatrix small{{2}};
    auto w = search_witness(big, small, SearchBounds{4, 3});
    REQUIRE(w.has_value());
    CHECK(w->R.rows() == 1);
    CHECK(w->R.cols() == 2);
    CHECK(verify_witness(big, small, *w));
}
