#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "shifteq/textio.hpp"

using namespace shifteq;

TEST_CASE("matrix parse pins")
{
    IntMatrix m = parse_matrix("[[1,0],[0,-1]]");
    CHECK(m == IntMatrix{{1, 0}, {0, -1}});
    IntMatrix big = parse_matrix("[[\"123456789012345678901234567890\", 1],[0, 2]]");
    CHECK(big.at(0, 0) == Int("123456789012345678901234567890"));
    CHECK_THROWS_AS(parse_matrix("[[1,2],[3]]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_matrix("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(parse_matrix("[[1.5]]"), std::invalid_argument);
}

TEST_CASE("matrix json round trip, including beyond 64 bits")
{
    std::mt19937_64 rng(61);
    for (int it = 0; it < 50; ++it) {
        std::size_t n = 1 + rng() % 3;
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                m.at(i, j) = Int(static_cast<long>(rng() % 2000)) - 1000;
                if (rng() % 7 == 0) m.at(i, j) = pow_int(Int(10), 25) + m.at(i, j);
            }
        CHECK(parse_matrix(matrix_to_json(m)) == m);
    }
}

TEST_CASE("polynomial parse pins")
{
    CHECK(parse_poly("t^2-5") == IntPoly{-5, 0, 1});
    CHECK(parse_poly("t^2 - 20*t - 1") == IntPoly{-1, -20, 1});
    CHECK(parse_poly("2t^2-3t+1") == IntPoly{1, -3, 2});
    CHECK(parse_poly("-t^3 + t") == IntPoly{0, 1, 0, -1});
    CHECK(parse_poly("(t-1)*(t+1)") == IntPoly{-1, 0, 1});
    CHECK(parse_poly("7") == IntPoly{7});
    CHECK_THROWS_AS(parse_poly("t^"), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("x+1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly(""), std::invalid_argument);
}

TEST_CASE("polynomial print and reparse round trip")
{
    std::mt19937_64 rng(62);
    for (int it = 0; it < 80; ++it) {
        std::vector<Int> cs(1 + rng() % 5);
        for (auto& c : cs) c = Int(static_cast<long>(rng() % 41)) - 20;
        IntPoly p(cs);
        if (p.is_zero()) continue;
        CHECK(parse_poly(p.to_string()) == p);
    }
}
