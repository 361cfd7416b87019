#include "mflab/module_tools.hpp"
#include "mflab/parse.hpp"

#include "doctest.h"

using namespace mflab;

namespace {

FactoredEquation node()
{
    auto ctx = make_ring({"x", "y"}, 32003);
    return make_equation(ctx, {parse_poly("x", ctx), parse_poly("y", ctx)});
}

}  // namespace

TEST_CASE("truncation levels have the expected dimensions")
{
    auto eq = node();
    // R = k[x,y]/(xy) below degree D: 1 + 2(D-1) monomials
    PresentedModule r = PresentedModule::from_mf(trivial_mf(eq.ctx, eq.product()));
    CHECK(r.level(8).view.dim == 15);
    // S_x = R/(x) = k[y] below D
    PresentedModule s1 = PresentedModule::from_mf(s_ideal({eq, {1}}));
    CHECK(s1.level(8).view.dim == 8);
    CHECK(s1.min_generators() == 1);
    CHECK(r.min_generators() == 1);
}

TEST_CASE("weighted truncation respects the grading of the cusp")
{
    auto ctx = make_ring({"x", "y"}, 32003);
    Poly f = parse_poly("x^3 + x*y^3", ctx);
    auto t = get_truncation(ctx, f, 12);
    CHECK(t->weights() == std::vector<int>{3, 2});
    for (const auto& e : t->monomials())
        CHECK(t->wdeg(e) < 12);
    // multiplication operators commute
    const Fp& fp = ctx->fp();
    CHECK(t->var_action(0).mul(t->var_action(1), fp) ==
          t->var_action(1).mul(t->var_action(0), fp));
}

TEST_CASE("presented_from_trunc reproduces the module at every level")
{
    auto eq = node();
    PresentedModule m = PresentedModule::from_mf(
        direct_sum(s_ideal({eq, {1}}), s_ideal({eq, {2}})));
    PresentedModule back = presented_from_trunc(m.level(12).view);
    CHECK(back.min_generators() == m.min_generators());
    for (int d : {8, 10, 12})
        CHECK(back.level(d).view.dim == m.level(d).view.dim);
}

TEST_CASE("iso probe separates and identifies")
{
    auto eq = node();
    auto sched = default_schedule(eq.ctx);
    std::mt19937_64 rng(5);
    PresentedModule s1 = PresentedModule::from_mf(s_ideal({eq, {1}}));
    PresentedModule s2 = PresentedModule::from_mf(s_ideal({eq, {2}}));
    PresentedModule s1b =
        PresentedModule::from_mf(random_equivalent(s_ideal({eq, {1}}), 8, rng));
    CHECK(iso_test(s1, s1b, 24, sched, rng, &eq).verdict == "isomorphic");
    CHECK(iso_test(s1, s2, 24, sched, rng, &eq).verdict == "not-isomorphic");
}

TEST_CASE("decomposition finds the summands of a shuffled direct sum")
{
    auto eq = node();
    auto sched = default_schedule(eq.ctx);
    std::mt19937_64 rng(9);
    MatrixFactorization sum = direct_sum(s_ideal({eq, {1}}), s_ideal({eq, {2}}));
    PresentedModule m = PresentedModule::from_mf(random_equivalent(sum, 10, rng));
    CHECK(indecomposable_probe(m, 24, sched, rng).verdict == "decomposes");
    auto factors = full_decomposition(m, 24, sched, rng);
    REQUIRE(factors.has_value());
    CHECK(factors->size() == 2);
    PresentedModule s1 = PresentedModule::from_mf(s_ideal({eq, {1}}));
    CHECK(indecomposable_probe(s1, 24, sched, rng).verdict == "indecomposable-likely");
}

TEST_CASE("membership in add(M)")
{
    auto eq = node();
    auto sched = default_schedule(eq.ctx);
    std::mt19937_64 rng(13);
    PresentedModule m = PresentedModule::from_mf(
        direct_sum(trivial_mf(eq.ctx, eq.product()), s_ideal({eq, {1}})));
    PresentedModule s1 = PresentedModule::from_mf(s_ideal({eq, {1}}));
    PresentedModule s2 = PresentedModule::from_mf(s_ideal({eq, {2}}));
    CHECK(add_membership(s1, m, 24, sched, rng, &eq) == Membership::member);
    CHECK(add_membership(s2, m, 24, sched, rng, &eq) == Membership::not_member);
}

TEST_CASE("torsion probe separates MCM modules from finite length")
{
    auto eq = node();
    auto sched = default_schedule(eq.ctx);
    std::mt19937_64 rng(17);
    PresentedModule s1 = PresentedModule::from_mf(s_ideal({eq, {1}}));
    CHECK(torsion_probe(s1, sched, rng).verdict == TorsionVerdict::torsion_free);
    // k = R/m has torsion
    PolyMat pres(eq.ctx, 1, 2);
    pres.at(0, 0) = parse_poly("x", eq.ctx);
    pres.at(0, 1) = parse_poly("y", eq.ctx);
    PresentedModule k(eq.ctx, eq.product(), pres);
    CHECK(torsion_probe(k, sched, rng).verdict == TorsionVerdict::has_torsion);
    CHECK(depth_probe(s1, sched, rng) == 1);
    CHECK(depth_probe(k, sched, rng) == 0);
}

TEST_CASE("tensor MCM probe matches the vanishing oracle")
{
    auto ctx = make_ring({"x", "y"}, 32003);
    auto eq = make_equation(ctx, {parse_poly("x", ctx), parse_poly("y", ctx),
                                  parse_poly("x+y", ctx)});
    auto sched = default_schedule(ctx);
    std::mt19937_64 rng(19);
    // nested: tensor is MCM; disjoint: torsion appears
    CHECK(tensor_mcm_check(s_ideal({eq, {1}}), s_ideal({eq, {1, 2}}), sched, rng).verdict ==
          TorsionVerdict::torsion_free);
    CHECK(tensor_mcm_check(s_ideal({eq, {1}}), s_ideal({eq, {2}}), sched, rng).verdict ==
          TorsionVerdict::has_torsion);
}

TEST_CASE("pushforward gives an exact sequence over the conifold")
{
    auto eq = node();
    std::mt19937_64 rng(23);
    MatrixFactorization i = knoerrer(s_ideal({eq, {1}}), "u", "v");
    PresentedModule m = PresentedModule::from_mf(i);
    auto sched = default_schedule(i.ctx, i.f);
    PushforwardResult r = pushforward(m, sched, rng);
    CHECK(r.lambda == 2);
    CHECK(r.exact);
    CHECK(r.depth_m == r.depth_m1);
}
