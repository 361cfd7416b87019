#include "mflab/ct_toolkit.hpp"
#include "mflab/parse.hpp"

#include "doctest.h"

using namespace mflab;

namespace {

FactoredEquation node()
{
    auto ctx = make_ring({"x", "y"}, 32003);
    return make_equation(ctx, {parse_poly("x", ctx), parse_poly("y", ctx)});
}

size_t stable(const ExtResult& r)
{
    REQUIRE(r.stable());
    return *r.stable_dim;
}

}  // namespace

TEST_CASE("hand oracle: node Ext^1(S_x, S_y) is one-dimensional")
{
    auto eq = node();
    auto sched = default_schedule(eq.ctx);
    PresentedModule s2 = PresentedModule::from_mf(s_ideal({eq, {2}}));
    CHECK(stable(ext_periodic(s_ideal({eq, {1}}), s2, 1, sched)) == 1);
    // self-pairs and pairs against R vanish
    PresentedModule s1 = PresentedModule::from_mf(s_ideal({eq, {1}}));
    CHECK(stable(ext_periodic(s_ideal({eq, {1}}), s1, 1, sched)) == 0);
    CHECK(stable(ext_periodic(trivial_mf(eq.ctx, eq.product()), s2, 1, sched)) == 0);
}

TEST_CASE("hand oracle: Hom and Tor on the node")
{
    auto eq = node();
    auto sched = default_schedule(eq.ctx);
    PresentedModule s1 = PresentedModule::from_mf(s_ideal({eq, {1}}));
    PresentedModule s2 = PresentedModule::from_mf(s_ideal({eq, {2}}));
    // Hom(S_x, S_x) = S_x: dims grow linearly with D, never stabilize
    ExtResult h = hom_dim(s_ideal({eq, {1}}), s1, sched);
    CHECK(h.kind == "hom");
    for (size_t k = 0; k < sched.size(); ++k)
        CHECK(h.dims[k].second == static_cast<size_t>(sched[k]) - 1);
    // Tor_1(S_x, S_y) = 0 (x acts injectively on k[x]), Tor_2(S_x, S_y) = k
    CHECK(stable(tor_periodic(s_ideal({eq, {1}}), s2, 1, sched)) == 0);
    CHECK(stable(tor_periodic(s_ideal({eq, {1}}), s2, 2, sched)) == 1);
    CHECK(stable(tor_periodic(trivial_mf(eq.ctx, eq.product()), s2, 2, sched)) == 0);
    // Ext^0 = Hom agrees with the hom engine
    ExtResult e0 = ext_periodic(s_ideal({eq, {1}}), s1, 0, sched);
    CHECK(e0.dims == h.dims);
}

TEST_CASE("two-periodicity of the resolution")
{
    auto eq = node();
    auto sched = default_schedule(eq.ctx);
    PresentedModule s2 = PresentedModule::from_mf(s_ideal({eq, {2}}));
    for (int i = 1; i <= 3; ++i) {
        ExtResult a = ext_periodic(s_ideal({eq, {1}}), s2, i, sched);
        ExtResult b = ext_periodic(s_ideal({eq, {1}}), s2, i + 2, sched);
        CHECK(stable(a) == stable(b));
    }
}

TEST_CASE("cocycle engine agrees with the periodic engine")
{
    auto ctx = make_ring({"x", "y"}, 32003);
    auto eq = make_equation(ctx, {parse_poly("x", ctx), parse_poly("y", ctx),
                                  parse_poly("x+y", ctx)});
    EqWorkspace ws(eq, default_schedule(ctx), 42);
    std::vector<std::set<int>> subsets{{1}, {2}, {3}, {1, 2}, {2, 3}, {1, 2, 3}};
    for (const auto& I : subsets)
        for (const auto& J : subsets) {
            const ExtResult& p = ws.ext1_pair(I, J);
            const ExtResult& c = ws.ext1_pair_cocycle(I, J);
            REQUIRE(p.stable());
            REQUIRE(c.stable());
            CHECK(*p.stable_dim == *c.stable_dim);
        }
}

TEST_CASE("nestedness governs vanishing on the triple line arrangement")
{
    auto ctx = make_ring({"x", "y"}, 32003);
    auto eq = make_equation(ctx, {parse_poly("x", ctx), parse_poly("y", ctx),
                                  parse_poly("x+y", ctx)});
    EqWorkspace ws(eq, default_schedule(ctx), 42);
    std::vector<std::set<int>> subsets{{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}};
    for (const auto& I : subsets)
        for (const auto& J : subsets) {
            const ExtResult& r = ws.ext1_pair(I, J);
            REQUIRE(r.stable());
            CHECK((*r.stable_dim == 0) == ext_oracle_nested(I, J));
        }
}

TEST_CASE("cocycle witness exists exactly for non-vanishing pairs")
{
    auto eq = node();
    MatrixFactorization s1 = s_ideal({eq, {1}});
    MatrixFactorization s2 = s_ideal({eq, {2}});
    auto w = ext1_witness(s1, s2, 3);
    REQUIRE(w.has_value());
    // the witness glues into a valid extension factorization
    MatrixFactorization e = extension_from_cocycle(s1, s2, w->first, w->second);
    CHECK(validate_mf(e).valid);
    CHECK(!ext1_witness(s1, s1, 3).has_value());
}

TEST_CASE("stability marking needs an agreeing tail")
{
    ExtResult r;
    r.kind = "ext";
    r.i = 1;
    r.dims = {{8, 2}, {10, 2}, {12, 2}};
    mark_stable(r);
    CHECK(stable(r) == 2);
    r.dims = {{8, 1}, {10, 2}, {12, 3}};
    r.stable_dim.reset();
    mark_stable(r);
    CHECK(!r.stable());
}
