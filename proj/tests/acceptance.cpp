// Acceptance battery: ten criteria, one pass/fail line each.
// Every Ext computed over a schedule carries one extra level beyond the
// base; criterion 9 checks that no stable dimension moves at that level.
#include "mflab/ct_toolkit.hpp"
#include "mflab/endo_probe.hpp"
#include "mflab/parse.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace mflab;

namespace {

int g_failed = 0;
std::vector<ExtResult> g_log;  // every scheduled Ext result, for criterion 9

void log_ext(const ExtResult& r) { g_log.push_back(r); }

void verdict(int n, const std::string& what, bool ok)
{
    std::printf("%s criterion %2d: %s\n", ok ? "[PASS]" : "[FAIL]", n, what.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failed;
}

FactoredEquation equation(const std::vector<std::string>& factors, uint32_t p = 32003)
{
    auto ctx = make_ring({"x", "y"}, p);
    std::vector<Poly> fs;
    for (const auto& s : factors) fs.push_back(parse_poly(s, ctx));
    return make_equation(ctx, std::move(fs));
}

std::vector<int> extended(std::vector<int> s)
{
    s.push_back(s.back() + 2);
    return s;
}

std::vector<std::set<int>> all_subsets(size_t n)
{
    std::vector<std::set<int>> out;
    for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
        std::set<int> I;
        for (size_t i = 0; i < n; ++i)
            if (mask & (size_t{1} << i)) I.insert(static_cast<int>(i) + 1);
        out.push_back(std::move(I));
    }
    return out;
}

bool vanishes(const ExtResult& r) { return r.stable() && *r.stable_dim == 0; }

/* ---- criterion 1: the 64-entry nestedness matrix over xy(x+y) ---- */

bool nestedness_matrix(EqWorkspace& ws)
{
    auto subsets = all_subsets(3);
    bool ok = true;
    for (const auto& I : subsets)
        for (const auto& J : subsets) {
            const ExtResult& r = ws.ext1_pair(I, J);
            log_ext(r);
            if (!r.stable() || (*r.stable_dim == 0) != ext_oracle_nested(I, J)) ok = false;
        }
    return ok;
}

/* ---- criterion 2: every S^omega is cluster-tilting on the catalog ---- */

bool positive_direction(EqWorkspace& ws)
{
    size_t n = ws.eq().factors.size();
    std::vector<int> omega(n);
    for (size_t i = 0; i < n; ++i) omega[i] = static_cast<int>(i) + 1;
    bool ok = true;
    do {
        CTReport rep = ct_check(ws, omega);
        if (rep.overall != "cluster-tilting-on-catalog") ok = false;
        if (!rep.rigid.has_value() || !*rep.rigid) ok = false;
        for (const auto& pc : rep.rigidity_pairs) {
            log_ext(pc.periodic);
            if (!pc.engines_agree || !pc.oracle_agree) ok = false;
        }
        for (const auto& cc : rep.catalog)
            if (!cc.stable || !cc.consistent) ok = false;
    } while (std::next_permutation(omega.begin(), omega.end()));
    return ok;
}

/* ---- criterion 3: syzygy witness refutes equations with a factor in m^2 ---- */

bool negative_direction(EqWorkspace& ws)
{
    size_t n = ws.eq().factors.size();
    std::vector<int> omega(n);
    for (size_t i = 0; i < n; ++i) omega[i] = static_cast<int>(i) + 1;
    CTReport rep = ct_check(ws, omega);
    if (rep.overall != "refuted") return false;
    for (const auto& pc : rep.rigidity_pairs) log_ext(pc.periodic);
    for (const auto& cc : rep.catalog) {
        if (cc.label.rfind("witness", 0) != 0) continue;
        return cc.stable && cc.vanish_mx && cc.vanish_xm &&
               cc.membership == Membership::not_member && !cc.consistent &&
               rep.refutation == cc.label;
    }
    return false;  // no witness entry produced
}

/* ---- criterion 4: six equivalent vanishing conditions per pair ---- */

bool six_way(EqWorkspace& ws, size_t cap, size_t& pairs_run)
{
    auto subsets = all_subsets(ws.eq().factors.size());
    subsets.erase(subsets.begin());  // drop the empty set: S_emptyset is the zero module
    bool ok = true;
    pairs_run = 0;
    for (const auto& I : subsets) {
        for (const auto& J : subsets) {
            if (pairs_run >= cap) return ok;
            ++pairs_run;
            MatrixFactorization mi = ws.subset_mf(I), mj = ws.subset_mf(J);
            const ExtResult& e_ij = ws.ext1_pair(I, J);
            const ExtResult& e_ji = ws.ext1_pair(J, I);
            ExtResult t_ij = tor_periodic(mi, ws.subset_module(J), 2, ws.schedule());
            ExtResult t_ji = tor_periodic(mj, ws.subset_module(I), 2, ws.schedule());
            TorsionReport m_ij = tensor_mcm_check(mi, mj, ws.schedule(), ws.rng());
            TorsionReport m_ji = tensor_mcm_check(mj, mi, ws.schedule(), ws.rng());
            log_ext(e_ij);
            log_ext(t_ij);
            log_ext(t_ji);
            if (!e_ij.stable() || !e_ji.stable() || !t_ij.stable() || !t_ji.stable() ||
                m_ij.verdict == TorsionVerdict::unstable ||
                m_ji.verdict == TorsionVerdict::unstable) {
                ok = false;
                continue;
            }
            bool v = *e_ij.stable_dim == 0;
            bool agree = (*e_ji.stable_dim == 0) == v && (*t_ij.stable_dim == 0) == v &&
                         (*t_ji.stable_dim == 0) == v &&
                         (m_ij.verdict == TorsionVerdict::torsion_free) == v &&
                         (m_ji.verdict == TorsionVerdict::torsion_free) == v;
            if (!agree) ok = false;
        }
    }
    return ok;
}

/* ---- criterion 5: the periodicity functor f -> f + uv ---- */

bool knoerrer_functor(EqWorkspace& node, EqWorkspace& triple)
{
    bool ok = true;
    // validity survives random equivalences, 20 samples
    int samples = 0;
    for (EqWorkspace* ws : {&node, &triple}) {
        auto subsets = all_subsets(ws->eq().factors.size());
        subsets.erase(subsets.begin());
        for (const auto& I : subsets) {
            for (int rep = 0; rep < 2 && samples < 20; ++rep, ++samples) {
                MatrixFactorization m = random_equivalent(ws->subset_mf(I), 6, ws->rng());
                if (!validate_mf(knoerrer(m, "u", "v")).valid) ok = false;
            }
        }
    }
    if (samples < 20) ok = false;
    // the functor commutes with syzygy up to isomorphism, on the catalog
    for (EqWorkspace* ws : {&node, &triple}) {
        auto subsets = all_subsets(ws->eq().factors.size());
        subsets.erase(subsets.begin());
        for (const auto& I : subsets) {
            MatrixFactorization m = ws->subset_mf(I);
            MatrixFactorization a = knoerrer(syzygy(m), "u", "v");
            MatrixFactorization b = syzygy(knoerrer(m, "u", "v"));
            auto sched = default_schedule(a.ctx, a.f);
            IsoWitness w = iso_test(PresentedModule::from_mf(a), PresentedModule::from_mf(b),
                                    8, sched, ws->rng());
            if (w.verdict != "isomorphic") ok = false;
        }
    }
    // Ext^1 vanishing transfers along the functor, 12 lifted pairs
    auto subsets = all_subsets(3);
    subsets.erase(subsets.begin());
    int lifted = 0;
    for (const auto& I : subsets) {
        for (const auto& J : subsets) {
            if (lifted >= 12) break;
            ++lifted;
            MatrixFactorization a = knoerrer(triple.subset_mf(I), "u", "v");
            MatrixFactorization b = knoerrer(triple.subset_mf(J), "u", "v");
            auto sched = extended(default_schedule(a.ctx, a.f));
            ExtResult up = ext_periodic(a, PresentedModule::from_mf(b), 1, sched);
            log_ext(up);
            const ExtResult& down = triple.ext1_pair(I, J);
            if (!up.stable() || !down.stable() ||
                (*up.stable_dim == 0) != (*down.stable_dim == 0))
                ok = false;
        }
    }
    return ok;
}

/* ---- criterion 6: periodic and cocycle engines agree ---- */

bool engines_agree(EqWorkspace& ws)
{
    auto subsets = all_subsets(ws.eq().factors.size());
    bool ok = true;
    for (const auto& I : subsets)
        for (const auto& J : subsets) {
            const ExtResult& a = ws.ext1_pair(I, J);
            const ExtResult& b = ws.ext1_pair_cocycle(I, J);
            if (!a.stable() || !b.stable() || *a.stable_dim != *b.stable_dim) ok = false;
        }
    return ok;
}

/* ---- criterion 7: Ext duality on all 64 ordered pairs ---- */

bool duality(EqWorkspace& ws)
{
    auto subsets = all_subsets(3);
    bool ok = true;
    for (const auto& I : subsets)
        for (const auto& J : subsets) {
            DualityCheck d =
                ext_duality_check(ws.subset_mf(I), ws.subset_mf(J), ws.schedule());
            log_ext(d.lhs);
            log_ext(d.rhs);
            if (d.verdict != "pass") ok = false;
        }
    return ok;
}

/* ---- criterion 8: conifold orthogonality and finite resolutions ---- */

bool conifold_probe()
{
    auto eq = equation({"x", "y"});
    MatrixFactorization i = knoerrer(s_ideal({eq, {1}}), "u", "v");
    MatrixFactorization r = trivial_mf(i.ctx, i.f);
    MatrixFactorization m = direct_sum(r, i);
    auto base = default_schedule(i.ctx, i.f);
    std::vector<std::pair<std::string, MatrixFactorization>> cat = {
        {"R", r},           {"I", i},           {"I*", dual(i)},
        {"syzI", syzygy(i)}, {"syzI*", syzygy(dual(i))}};
    // add(M) = {R, I, syz(I*)}: syz(I*) is again the ideal module
    std::vector<std::string> in_perp = {"R", "I", "syzI*"};
    bool ok = true;
    auto perp = perp_catalog(m, cat, 1, extended(base));
    for (const auto& e : perp) {
        for (const auto& x : e.exts) log_ext(x);
        bool expect_in =
            std::find(in_perp.begin(), in_perp.end(), e.label) != in_perp.end();
        if (e.verdict != (expect_in ? "in-perp" : "out")) ok = false;
    }
    std::mt19937_64 rng(42);
    PresentedModule mm = PresentedModule::from_mf(m);
    for (const auto& [label, x] : cat) {
        PdResult pd = pd_probe(mm, PresentedModule::from_mf(x), 6, base, rng, nullptr);
        if (!pd.pd.has_value() || *pd.pd > 3) ok = false;
    }
    return ok;
}

/* ---- criterion 9: stable dims survive one extra truncation step ---- */

bool stabilization_hygiene()
{
    bool ok = true;
    for (const ExtResult& r : g_log) {
        if (!r.stable() || r.dims.size() < 2) continue;
        // the reported dim must match the value at the deepest (extra) level
        if (r.dims.back().second != *r.stable_dim) ok = false;
        if (r.dims[r.dims.size() - 2].second != r.dims.back().second) ok = false;
    }
    return ok && !g_log.empty();
}

/* ---- criterion 10: byte-identical suite reruns ---- */

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool determinism()
{
    std::string bin = MFLAB_BIN, cfg = MFLAB_SUITE;
    std::string a = "acc_suite_a.json", b = "acc_suite_b.json";
    std::string cmd1 = bin + " suite --config " + cfg + " --out " + a + " > /dev/null 2>&1";
    std::string cmd2 = bin + " suite --config " + cfg + " --out " + b + " > /dev/null 2>&1";
    if (std::system(cmd1.c_str()) != 0) return false;
    if (std::system(cmd2.c_str()) != 0) return false;
    std::string sa = slurp(a), sb = slurp(b);
    std::remove(a.c_str());
    std::remove(b.c_str());
    return !sa.empty() && sa == sb;
}

}  // namespace

int main()
{
    uint64_t seed = 42;

    auto node_eq = equation({"x", "y"});
    auto triple_eq = equation({"x", "y", "x+y"});
    auto quartic_eq = equation({"x", "x+y", "x-y", "x+2*y"});
    auto cusp_x = equation({"x", "x*x+y*y*y"});
    auto cusp_xy = equation({"x", "y", "x*x+y*y*y"});

    auto sched2 = [&](const FactoredEquation& eq) {
        return extended(default_schedule(eq.ctx, eq.product()));
    };
    EqWorkspace node(node_eq, sched2(node_eq), seed);
    EqWorkspace triple(triple_eq, sched2(triple_eq), seed);
    EqWorkspace quartic(quartic_eq, sched2(quartic_eq), seed);
    EqWorkspace wcusp_x(cusp_x, sched2(cusp_x), seed);
    EqWorkspace wcusp_xy(cusp_xy, sched2(cusp_xy), seed);

    verdict(1, "nestedness matrix, 64 pairs over x*y*(x+y)", nestedness_matrix(triple));

    bool c2 = positive_direction(node) && positive_direction(triple) &&
              positive_direction(quartic);
    verdict(2, "cluster-tilting for every permutation over 3 equations", c2);

    bool c3 = negative_direction(wcusp_x) && negative_direction(wcusp_xy);
    verdict(3, "syzygy witness refutes both cusp-type equations", c3);

    size_t p1 = 0, p2 = 0, p3 = 0;
    bool c4 = six_way(node, 30, p1) && six_way(triple, 30, p2) && six_way(quartic, 30, p3);
    {
        std::ostringstream what;
        what << "six-way vanishing equivalence (" << p1 << "+" << p2 << "+" << p3
             << " ordered pairs)";
        verdict(4, what.str(), c4);
    }

    verdict(5, "periodicity functor: validity, syzygy, Ext transfer",
            knoerrer_functor(node, triple));

    verdict(6, "periodic and cocycle engines agree on 64+9 pairs",
            engines_agree(triple) && engines_agree(node));

    verdict(7, "Ext duality on all 64 ordered pairs", duality(triple));

    verdict(8, "conifold: perp catalog = add(M), finite resolutions", conifold_probe());

    {
        std::ostringstream what;
        what << "stable dims unchanged at D+2 (" << g_log.size() << " results)";
        verdict(9, what.str(), stabilization_hygiene());
    }

    verdict(10, "suite reruns byte-identical", determinism());

    if (g_failed) {
        std::printf("%d criteria failed\n", g_failed);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
