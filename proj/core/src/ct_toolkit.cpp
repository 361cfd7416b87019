#include "mflab/ct_toolkit.hpp"

#include <algorithm>
#include <sstream>

namespace mflab {

std::vector<bool> check_factor_smooth(const FactoredEquation& eq)
{
    std::vector<bool> out;
    for (const auto& g : eq.factors)
        out.push_back(!g.linear_part().is_zero());
    return out;
}

bool ext_oracle_nested(const std::set<int>& I, const std::set<int>& J)
{
    return std::includes(I.begin(), I.end(), J.begin(), J.end()) ||
           std::includes(J.begin(), J.end(), I.begin(), I.end());
}

static std::string subset_label(const std::set<int>& I, size_t n)
{
    if (I.empty())
        return "0";
    if (I.size() == n)
        return "R";
    std::ostringstream os;
    os << "S{";
    bool first = true;
    for (int i : I) {
        if (!first)
            os << ",";
        os << i;
        first = false;
    }
    os << "}";
    return os.str();
}

OmegaObject build_s_omega(const FactoredEquation& eq, const std::vector<int>& omega)
{
    size_t n = eq.n();
    if (omega.size() != n)
        throw error("omega is not a permutation of the factor indices");
    std::set<int> seen(omega.begin(), omega.end());
    for (int i = 1; i <= static_cast<int>(n); ++i)
        if (!seen.count(i))
            throw error("omega is not a permutation of the factor indices");
    OmegaObject obj{eq, omega, {}, {}};
    std::set<int> chain;
    for (int i : omega) {
        chain.insert(i);
        obj.subsets.push_back(chain);
        obj.summands.push_back(s_ideal({eq, chain}));
    }
    return obj;
}

EqWorkspace::EqWorkspace(FactoredEquation eq, std::vector<int> schedule, uint64_t seed)
    : eq_(std::move(eq)), sched_(std::move(schedule)), rng_(seed)
{
}

int EqWorkspace::cocycle_d0() const
{
    return eq_.ctx->nvars() <= 3 ? 6 : 2;
}

MatrixFactorization EqWorkspace::subset_mf(const std::set<int>& I) const
{
    if (I.empty())
        return zero_mf(eq_.ctx, eq_.product());
    return s_ideal({eq_, I});
}

PresentedModule& EqWorkspace::subset_module(const std::set<int>& I)
{
    auto it = mods_.find(I);
    if (it == mods_.end())
        it = mods_.emplace(I, std::make_unique<PresentedModule>(
                                  PresentedModule::from_mf(subset_mf(I))))
                 .first;
    return *it->second;
}

const ExtResult& EqWorkspace::ext1_pair(const std::set<int>& I, const std::set<int>& J)
{
    auto key = std::make_pair(I, J);
    auto it = per_.find(key);
    if (it == per_.end())
        it = per_.emplace(key, ext_periodic(subset_mf(I), subset_module(J), 1, sched_)).first;
    return it->second;
}

const ExtResult& EqWorkspace::ext1_pair_cocycle(const std::set<int>& I, const std::set<int>& J)
{
    auto key = std::make_pair(I, J);
    auto it = coc_.find(key);
    if (it == coc_.end())
        it = coc_.emplace(key, ext1_cocycle(subset_mf(J), subset_mf(I), cocycle_d0())).first;
    return it->second;
}

std::vector<PairCheck> rigidity_check(EqWorkspace& ws, const OmegaObject& obj,
                                      std::optional<bool>& rigid)
{
    std::vector<PairCheck> pairs;
    bool all_stable = true, all_zero = true;
    for (const auto& I : obj.subsets)
        for (const auto& J : obj.subsets) {
            PairCheck pc;
            pc.I = I;
            pc.J = J;
            pc.periodic = ws.ext1_pair(I, J);
            pc.cocycle = ws.ext1_pair_cocycle(I, J);
            pc.oracle_vanish = ext_oracle_nested(I, J);
            bool stable = pc.periodic.stable() && pc.cocycle.stable();
            pc.engines_agree = stable && *pc.periodic.stable_dim == *pc.cocycle.stable_dim;
            pc.oracle_agree =
                stable && ((*pc.periodic.stable_dim == 0) == pc.oracle_vanish);
            if (!stable)
                all_stable = false;
            else if (*pc.periodic.stable_dim != 0)
                all_zero = false;
            pairs.push_back(std::move(pc));
        }
    if (all_stable)
        rigid = all_zero;
    else
        rigid.reset();
    return pairs;
}

CatalogCheck catalog_entry_check(EqWorkspace& ws, const OmegaObject& obj,
                                 const std::set<int>& subset)
{
    CatalogCheck cc;
    cc.label = subset_label(subset, ws.eq().n());
    bool stable = true;
    size_t mx = 0, xm = 0;
    for (const auto& C : obj.subsets) {
        const ExtResult& a = ws.ext1_pair(C, subset);
        const ExtResult& b = ws.ext1_pair(subset, C);
        if (!a.stable() || !b.stable()) {
            stable = false;
            continue;
        }
        mx += *a.stable_dim;
        xm += *b.stable_dim;
    }
    cc.vanish_mx = stable && mx == 0;
    cc.vanish_xm = stable && xm == 0;
    cc.stable = stable;
    return cc;
}

CatalogCheck catalog_entry_check_module(EqWorkspace& ws, const OmegaObject& obj,
                                        const std::string& label, PresentedModule& x,
                                        const MatrixFactorization& x_mf)
{
    CatalogCheck cc;
    cc.label = label;
    bool stable = true;
    size_t mx = 0, xm = 0;
    for (const auto& C : obj.subsets) {
        ExtResult a = ext_periodic(ws.subset_mf(C), x, 1, ws.schedule());
        ExtResult b = ext_periodic(x_mf, ws.subset_module(C), 1, ws.schedule());
        if (!a.stable() || !b.stable()) {
            stable = false;
            continue;
        }
        mx += *a.stable_dim;
        xm += *b.stable_dim;
    }
    cc.vanish_mx = stable && mx == 0;
    cc.vanish_xm = stable && xm == 0;
    cc.stable = stable;
    return cc;
}

PresentedModule witness_non_ct(const FactoredEquation& eq, int bad_index)
{
    if (eq.ctx->nvars() != 2)
        throw error("witness construction needs a 2-variable ring");
    if (bad_index < 1 || bad_index > static_cast<int>(eq.n()))
        throw error("bad_index out of range");
    const Poly& g = eq.factors[bad_index - 1];
    if (!g.linear_part().is_zero())
        throw error("factor is smooth; no witness exists");
    const RingCtxPtr& ctx = eq.ctx;
    // split g = x*a + y*b
    Poly a(ctx), b(ctx);
    for (const auto& [e, c] : g.terms()) {
        Expo d = e;
        if (e[0] > 0) {
            d[0] -= 1;
            a.add_term(d, c);
        } else if (e[1] > 0) {
            d[1] -= 1;
            b.add_term(d, c);
        } else {
            throw error("factor has a constant term");
        }
    }
    if (a.is_zero() || b.is_zero())
        throw error("witness construction degenerate for this factor");
    Poly x = Poly::variable(ctx, ctx->vars()[0]);
    Poly y = Poly::variable(ctx, ctx->vars()[1]);
    PolyMat phi(ctx, 2, 2), psi(ctx, 2, 2);
    phi.at(0, 0) = x;
    phi.at(0, 1) = -b;
    phi.at(1, 0) = y;
    phi.at(1, 1) = a;
    psi.at(0, 0) = a;
    psi.at(0, 1) = b;
    psi.at(1, 0) = -y;
    psi.at(1, 1) = x;
    Poly h(ctx, 1);
    for (size_t i = 0; i < eq.n(); ++i)
        if (static_cast<int>(i) != bad_index - 1)
            h = h * eq.factors[i];
    MatrixFactorization n{ctx, eq.product(), phi, psi.scaled(h)};
    require_valid(n);
    return PresentedModule::from_mf(syzygy(n));
}

CTReport ct_check(EqWorkspace& ws, const std::vector<int>& omega)
{
    const FactoredEquation& eq = ws.eq();
    OmegaObject obj = build_s_omega(eq, omega);
    CTReport rep;
    rep.f_text = eq.product().str();
    rep.omega = omega;
    rep.factor_smooth = check_factor_smooth(eq);
    rep.rigidity_pairs = rigidity_check(ws, obj, rep.rigid);

    // catalog: every nonempty S_I, plus the witness when a factor sits in m^2
    MatrixFactorization sum = obj.summands[0];
    for (size_t i = 1; i < obj.summands.size(); ++i)
        sum = direct_sum(sum, obj.summands[i]);
    PresentedModule m_mod = PresentedModule::from_mf(sum);
    auto m_factors = full_decomposition(m_mod, 48, ws.schedule(), ws.rng());

    size_t n = eq.n();
    std::vector<std::set<int>> all_subsets;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::set<int> I;
        for (size_t i = 0; i < n; ++i)
            if (mask & (1u << i))
                I.insert(static_cast<int>(i) + 1);
        all_subsets.push_back(std::move(I));
    }
    for (const auto& I : all_subsets) {
        CatalogCheck cc = catalog_entry_check(ws, obj, I);
        if (m_factors)
            cc.membership = add_membership_factors(ws.subset_module(I), *m_factors, 48,
                                                   ws.schedule(), ws.rng(), &eq);
        cc.consistent = cc.stable && cc.membership != Membership::inconclusive &&
                        ((cc.vanish_mx && cc.vanish_xm) ==
                         (cc.membership == Membership::member));
        rep.catalog.push_back(std::move(cc));
    }
    for (size_t i = 0; i < eq.n(); ++i) {
        if (rep.factor_smooth[i])
            continue;
        PresentedModule w = witness_non_ct(eq, static_cast<int>(i) + 1);
        CatalogCheck cc = catalog_entry_check_module(ws, obj, "witness(" + std::to_string(i + 1) + ")",
                                                     w, *w.mf());
        if (m_factors)
            cc.membership = add_membership_factors(w, *m_factors, 48, ws.schedule(), ws.rng(), &eq);
        cc.consistent = cc.stable && cc.membership != Membership::inconclusive &&
                        ((cc.vanish_mx && cc.vanish_xm) ==
                         (cc.membership == Membership::member));
        rep.catalog.push_back(std::move(cc));
        break;  // one witness is enough for a refutation
    }

    bool any_refuted = false, all_ok = true;
    std::string refuted_label;
    for (const auto& cc : rep.catalog) {
        if (cc.stable && cc.membership != Membership::inconclusive && !cc.consistent) {
            any_refuted = true;
            refuted_label = cc.label;
        }
        if (!cc.consistent)
            all_ok = false;
    }
    bool engine_fault = false;
    for (const auto& pc : rep.rigidity_pairs)
        if (pc.periodic.stable() && pc.cocycle.stable() && (!pc.engines_agree || !pc.oracle_agree))
            engine_fault = true;
    if (any_refuted) {
        rep.overall = "refuted";
        rep.refutation = refuted_label;
    } else if (rep.rigid.has_value() && *rep.rigid && all_ok && !engine_fault) {
        rep.overall = "cluster-tilting-on-catalog";
    } else {
        rep.overall = "inconclusive";
    }
    return rep;
}

}  // namespace mflab
