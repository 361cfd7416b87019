#include "mflab/linalg.hpp"
#include "mflab/parse.hpp"

#include "doctest.h"

using namespace mflab;

TEST_CASE("prime field arithmetic")
{
    Fp fp(32003);
    CHECK(fp.add(32002, 1) == 0);
    CHECK(fp.mul(fp.inv(7), 7) == 1);
    CHECK(fp.sub(0, 1) == 32002);
    CHECK(fp.neg(0) == 0);
    for (uint32_t a : {1u, 2u, 31999u})
        CHECK(fp.mul(a, fp.inv(a)) == 1);
}

TEST_CASE("rref, rank, nullspace")
{
    Fp fp(101);
    Mat a(3, 4);
    // rows: (1,2,3,4), (2,4,6,8), (0,1,0,1) — rank 2
    uint32_t vals[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 0, 1}};
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 4; ++j)
            a.at(i, j) = vals[i][j];
    CHECK(rank(a, fp) == 2);
    Mat ker = nullspace(a, fp);
    CHECK(ker.cols() == 2);
    for (size_t j = 0; j < ker.cols(); ++j) {
        std::vector<uint32_t> v(4);
        for (size_t i = 0; i < 4; ++i)
            v[i] = ker.at(i, j);
        auto img = a.apply(v, fp);
        CHECK(Mat(3, 1) == [&] {
            Mat c(3, 1);
            for (size_t i = 0; i < 3; ++i)
                c.at(i, 0) = img[i];
            return c;
        }());
    }
}

TEST_CASE("inverse and charpoly")
{
    Fp fp(101);
    Mat a(2, 2);
    a.at(0, 0) = 2;
    a.at(0, 1) = 1;
    a.at(1, 1) = 3;
    auto inv = inverse(a, fp);
    REQUIRE(inv.has_value());
    CHECK(a.mul(*inv, fp) == Mat::identity(2));
    // char poly of diag-ish [[2,1],[0,3]] is (x-2)(x-3) = x^2 - 5x + 6
    auto cp = charpoly(a, fp);
    REQUIRE(cp.size() == 3);
    CHECK(cp[2] == 1);
    CHECK(cp[1] == fp.neg(5));
    CHECK(cp[0] == 6);
    Mat sing(2, 2);
    sing.at(0, 0) = 1;
    sing.at(1, 0) = 1;
    CHECK(!inverse(sing, fp).has_value());
}

TEST_CASE("row span bookkeeping")
{
    Fp fp(101);
    RowSpan s(3);
    CHECK(s.insert({1, 2, 0}, fp));
    CHECK(s.insert({0, 1, 0}, fp));
    CHECK(!s.insert({1, 0, 0}, fp));
    CHECK(s.dim() == 2);
    auto free = s.free_coords();
    REQUIRE(free.size() == 1);
    // residuals live exactly on the free coordinate
    auto r = s.residual({0, 0, 5}, fp);
    CHECK(r[free[0]] == 5);
    CHECK(s.contains({7, 3, 0}, fp));
}

TEST_CASE("polynomial parsing and printing")
{
    auto ctx = make_ring({"x", "y"}, 32003);
    Poly p = parse_poly("x^2*y - 3*y + 1", ctx);
    Poly q = parse_poly(p.str(), ctx);
    CHECK(p.str() == q.str());
    CHECK(parse_poly("x*y", ctx).str() == parse_poly("y*x", ctx).str());
    CHECK(parse_poly("x - x", ctx).is_zero());
    CHECK_THROWS(parse_poly("x*z", ctx));
}

TEST_CASE("quasi-homogeneous weights")
{
    auto ctx = make_ring({"x", "y"}, 32003);
    CHECK(quasi_weights(parse_poly("x*y", ctx)) == std::vector<int>{1, 1});
    // x^3 + x*y^3: weights (3,2), both terms of weighted degree 9
    Poly cusp = parse_poly("x^3 + x*y^3", ctx);
    CHECK(quasi_weights(cusp) == std::vector<int>{3, 2});
    CHECK(weighted_degree(cusp, {3, 2}) == 9);
    // inhomogeneous without a positive ray falls back to all ones
    CHECK(quasi_weights(parse_poly("x + x^2 + y", ctx)) == std::vector<int>{1, 1});
}

TEST_CASE("weighted monomial enumeration")
{
    auto below = monomials_below(2, {3, 2}, 7);
    for (const auto& e : below)
        CHECK(3 * e[0] + 2 * e[1] < 7);
    // 1, y, x, y^2, xy, y^3, x^2 -> wdeg 0,2,3,4,5,6,6
    CHECK(below.size() == 7);
}
