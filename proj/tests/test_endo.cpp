#include "mflab/endo_probe.hpp"
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

TEST_CASE("End(R) is the ring itself at every level")
{
    auto eq = node();
    PresentedModule r = PresentedModule::from_mf(trivial_mf(eq.ctx, eq.product()));
    EndRing er = end_ring(r, 12);
    CHECK(er.dim() == r.level(12).view.dim);
    CHECK(er.closed);
    CHECK(!er.identity.empty());
}

TEST_CASE("End of a direct sum splits into hom blocks")
{
    auto eq = node();
    PresentedModule m = PresentedModule::from_mf(
        direct_sum(trivial_mf(eq.ctx, eq.product()), s_ideal({eq, {1}})));
    int D = 12;
    EndRing er = end_ring(m, D);
    PresentedModule r = PresentedModule::from_mf(trivial_mf(eq.ctx, eq.product()));
    PresentedModule s1 = PresentedModule::from_mf(s_ideal({eq, {1}}));
    size_t expect = hom_space(r.presentation(), r.level(D).view).cols() +
                    hom_space(r.presentation(), s1.level(D).view).cols() +
                    hom_space(s1.presentation(), r.level(D).view).cols() +
                    hom_space(s1.presentation(), s1.level(D).view).cols();
    CHECK(er.dim() == expect);
    CHECK(er.closed);
}

TEST_CASE("construction resolves S_y by R + S_x covers in one step")
{
    auto eq = node();
    auto sched = default_schedule(eq.ctx);
    std::mt19937_64 rng(5);
    PresentedModule m = PresentedModule::from_mf(
        direct_sum(trivial_mf(eq.ctx, eq.product()), s_ideal({eq, {1}})));
    PresentedModule n = PresentedModule::from_mf(s_ideal({eq, {2}}));
    ApproxResolution res = construction_resolution(m, n, 4, sched, rng, &eq);
    CHECK(res.status == "finite");
    REQUIRE(res.pd.has_value());
    CHECK(*res.pd == 1);
    REQUIRE(res.steps.size() == 1);
    CHECK(res.steps[0].surjective);
    CHECK(res.steps[0].hom_exact);
    // members of add(M) resolve instantly
    PdResult pd0 = pd_probe(m, PresentedModule::from_mf(s_ideal({eq, {1}})), 4, sched, rng, &eq);
    REQUIRE(pd0.pd.has_value());
    CHECK(*pd0.pd == 0);
}

TEST_CASE("resolving by free covers alone exhausts the depth")
{
    auto eq = node();
    auto sched = default_schedule(eq.ctx);
    std::mt19937_64 rng(7);
    PresentedModule r = PresentedModule::from_mf(trivial_mf(eq.ctx, eq.product()));
    PresentedModule s1 = PresentedModule::from_mf(s_ideal({eq, {1}}));
    ApproxResolution res = construction_resolution(r, s1, 2, sched, rng, &eq);
    CHECK(res.status == "depth-exhausted");
    CHECK(!res.pd.has_value());
}

TEST_CASE("ext duality holds on node pairs")
{
    auto eq = node();
    auto sched = default_schedule(eq.ctx);
    MatrixFactorization s1 = s_ideal({eq, {1}});
    MatrixFactorization s2 = s_ideal({eq, {2}});
    DualityCheck d = ext_duality_check(s1, s2, sched);
    CHECK(d.verdict == "pass");
    CHECK(*d.lhs.stable_dim == 1);
    CHECK(ext_duality_check(trivial_mf(eq.ctx, eq.product()), s2, sched).verdict == "pass");
}

TEST_CASE("perp catalog filters by Ext vanishing")
{
    auto eq = node();
    auto sched = default_schedule(eq.ctx);
    MatrixFactorization m =
        direct_sum(trivial_mf(eq.ctx, eq.product()), s_ideal({eq, {1}}));
    std::vector<std::pair<std::string, MatrixFactorization>> cat = {
        {"R", trivial_mf(eq.ctx, eq.product())},
        {"S1", s_ideal({eq, {1}})},
        {"S2", s_ideal({eq, {2}})}};
    auto perp = perp_catalog(m, cat, 1, sched);
    REQUIRE(perp.size() == 3);
    CHECK(perp[0].verdict == "in-perp");
    CHECK(perp[1].verdict == "in-perp");
    CHECK(perp[2].verdict == "out");
}

TEST_CASE("conifold ideal module resolves within the BLV bound")
{
    auto eq = node();
    std::mt19937_64 rng(9);
    MatrixFactorization i = knoerrer(s_ideal({eq, {1}}), "u", "v");
    auto sched = default_schedule(i.ctx, i.f);
    PresentedModule m = PresentedModule::from_mf(direct_sum(trivial_mf(i.ctx, i.f), i));
    PdResult a = pd_probe(m, PresentedModule::from_mf(i), 6, sched, rng, nullptr);
    REQUIRE(a.pd.has_value());
    CHECK(*a.pd == 0);
    PdResult b = pd_probe(m, PresentedModule::from_mf(dual(i)), 6, sched, rng, nullptr);
    REQUIRE(b.pd.has_value());
    CHECK(*b.pd == 1);
    CHECK(b.note == "finite");
}
