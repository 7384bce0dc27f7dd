#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "shifteq/integers.hpp"

using namespace shifteq;

TEST_CASE("factorize round trip")
{
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        Int n = Int(static_cast<unsigned long>(rng() % 1000000 + 2));
        if (rng() % 2) n = -n;
        Int back = n < 0 ? Int(-1) : Int(1);
        for (auto& [p, e] : factorize(n)) {
            CHECK(is_probable_prime(p));
            for (int i = 0; i < e; ++i) back *= p;
        }
        CHECK(back == n);
    }
}

TEST_CASE("coprime and smooth parts")
{
    CHECK(coprime_part(60, 6) == 5);
    CHECK(smooth_part(60, 6) == 12);
    CHECK(coprime_part(7, 5) == 7);
    CHECK(coprime_part(-24, 2) == 3);
    CHECK(coprime_part(0, 5) == 0);
}

TEST_CASE("sqrt_mod agrees with exhaustive scan")
{
    std::mt19937_64 rng(11);
    for (int it = 0; it < 120; ++it) {
        unsigned long m = rng() % 400 + 1;
        unsigned long a = rng() % m;
        auto roots = sqrt_mod(Int(a), Int(m));
        std::vector<Int> expect;
        for (unsigned long x = 0; x < m; ++x)
            if ((x * x) % m == a % m) expect.push_back(Int(x));
        CHECK(roots == expect);
    }
}

TEST_CASE("sqrt_mod structured paths on larger prime powers")
{
    // 3^8 = 6561 exercises Tonelli + Hensel; check every root directly
    Int m = pow_int(3, 8);
    Int a = mod_floor(Int(7) * Int(7), m);
    auto roots = sqrt_mod(a, m);
    CHECK(roots.size() == 2);
    for (const Int& r : roots) CHECK(mod_floor(r * r - a, m) == 0);

    Int m2 = pow_int(2, 10);
    Int a2 = mod_floor(Int(17) * Int(17), m2);
    auto roots2 = sqrt_mod(a2, m2);
    CHECK(roots2.size() == 4);
    for (const Int& r : roots2) CHECK(mod_floor(r * r - a2, m2) == 0);
}

TEST_CASE("monoid closure mod n")
{
    auto c = monoid_closure_mod({Int(-1), Int(2)}, Int(17));
    // <-1, 2> = <2> has order 8 mod 17
    CHECK(c.size() == 8);
    for (auto& [res, lift] : c) CHECK(mod_floor(lift, 17) == res);
}

TEST_CASE("kronecker basics")
{
    CHECK(kronecker(5, 11) == 1);   // 4^2 = 16 ≡ 5
    CHECK(kronecker(2, 5) == -1);
    CHECK(kronecker(-20, 3) == 1);  // -20 ≡ 1 mod 3
}
