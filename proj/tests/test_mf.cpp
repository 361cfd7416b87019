#include "mflab/mf.hpp"
#include "mflab/parse.hpp"

#include "doctest.h"

using namespace mflab;

namespace {

FactoredEquation node()
{
    auto ctx = make_ring({"x", "y"}, 32003);
    return make_equation(ctx, {parse_poly("x", ctx), parse_poly("y", ctx)});
}

FactoredEquation triple()
{
    auto ctx = make_ring({"x", "y"}, 32003);
    return make_equation(ctx,
                         {parse_poly("x", ctx), parse_poly("y", ctx), parse_poly("x+y", ctx)});
}

}  // namespace

TEST_CASE("subset factorizations are valid")
{
    auto eq = triple();
    for (const std::set<int>& I :
         std::vector<std::set<int>>{{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}}) {
        MatrixFactorization m = s_ideal({eq, I});
        CHECK(validate_mf(m).valid);
        CHECK(m.size() == 1);
    }
    CHECK_THROWS(s_ideal({eq, {}}));
    CHECK_THROWS(s_ideal({eq, {4}}));
}

TEST_CASE("syzygy and dual are involutions")
{
    auto eq = node();
    MatrixFactorization m = s_ideal({eq, {1}});
    CHECK(syzygy(syzygy(m)).phi.at(0, 0).str() == m.phi.at(0, 0).str());
    CHECK(dual(dual(m)).phi.at(0, 0).str() == m.phi.at(0, 0).str());
    CHECK(validate_mf(syzygy(m)).valid);
    CHECK(validate_mf(dual(m)).valid);
}

TEST_CASE("direct sum and carriers")
{
    auto eq = node();
    MatrixFactorization a = s_ideal({eq, {1}});
    MatrixFactorization s = direct_sum(a, trivial_mf(eq.ctx, eq.product()));
    CHECK(s.size() == 2);
    CHECK(validate_mf(s).valid);
    CHECK(validate_mf(trivial_mf(eq.ctx, eq.product())).valid);
    CHECK(validate_mf(zero_mf(eq.ctx, eq.product())).valid);
}

TEST_CASE("knoerrer doubles size and stays valid")
{
    auto eq = node();
    MatrixFactorization m = s_ideal({eq, {1}});
    MatrixFactorization k = knoerrer(m, "u", "v");
    CHECK(k.size() == 2 * m.size());
    CHECK(validate_mf(k).valid);
    CHECK(k.ctx->nvars() == 4);
    // f + uv
    auto uv = parse_poly("x*y + u*v", k.ctx);
    CHECK(k.f.str() == uv.str());
    CHECK_THROWS(knoerrer(m, "x", "w"));
}

TEST_CASE("random equivalents stay valid factorizations")
{
    auto eq = triple();
    std::mt19937_64 rng(7);
    MatrixFactorization m = direct_sum(s_ideal({eq, {1}}), s_ideal({eq, {2, 3}}));
    for (int t = 0; t < 5; ++t) {
        m = random_equivalent(m, 6, rng);
        CHECK(validate_mf(m).valid);
    }
}

TEST_CASE("broken products are rejected")
{
    auto eq = node();
    MatrixFactorization m = s_ideal({eq, {1}});
    m.psi.at(0, 0) = parse_poly("y + 1", eq.ctx);
    MfVerdict v = validate_mf(m);
    CHECK(!v.valid);
    CHECK(!v.detail.empty());
    CHECK_THROWS(require_valid(m));
}

TEST_CASE("generic rank vectors distinguish component supports")
{
    auto eq = node();
    std::mt19937_64 rng(11);
    // S_{1} = R/(x): rank 1 on V(x), rank 0 on V(y)
    CHECK(rank_vector(s_ideal({eq, {1}}), eq, 5, rng) == std::vector<int>{1, 0});
    CHECK(rank_vector(trivial_mf(eq.ctx, eq.product()), eq, 5, rng) == std::vector<int>{1, 1});
}

TEST_CASE("component points are smooth samples")
{
    auto eq = triple();
    std::mt19937_64 rng(3);
    for (size_t i = 0; i < eq.n(); ++i) {
        auto pt = sample_component_point(eq, i, rng);
        REQUIRE(pt.has_value());
        CHECK(eq.factors[i].eval(*pt) == 0);
        for (size_t j = 0; j < eq.n(); ++j)
            if (j != i)
                CHECK(eq.factors[j].eval(*pt) != 0);
    }
}
