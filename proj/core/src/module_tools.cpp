#include "mflab/module_tools.hpp"

#include <algorithm>
#include <map>

namespace mflab {

std::vector<int> rank_vector_presented(const PresentedModule& m, const FactoredEquation& eq,
                                       int samples, std::mt19937_64& rng)
{
    std::vector<int> out;
    for (size_t fi = 0; fi < eq.n(); ++fi) {
        std::vector<int> votes;
        for (int s = 0; s < samples; ++s) {
            auto pt = sample_component_point(eq, fi, rng);
            if (!pt)
                continue;
            Mat ev = m.presentation().eval(*pt);
            votes.push_back(static_cast<int>(m.rows() - rank(ev, m.ctx()->fp())));
        }
        if (votes.empty())
            throw error("no smooth sample points found on a component");
        std::sort(votes.begin(), votes.end());
        out.push_back(votes[votes.size() / 2]);
    }
    return out;
}

Fingerprint fingerprint(const PresentedModule& m, const std::vector<int>& schedule,
                        const FactoredEquation* eq, std::mt19937_64& rng)
{
    Fingerprint fp;
    fp.min_gens = m.min_generators();
    for (int D : schedule)
        fp.dims.emplace_back(D, m.level(D).view.dim);
    // generic ranks only make sense for honest (MCM) presentations
    if (eq && m.mf())
        fp.ranks = rank_vector(*m.mf(), *eq, 5, rng);
    return fp;
}

bool fingerprints_match(const Fingerprint& a, const Fingerprint& b, std::string* separator)
{
    if (a.min_gens != b.min_gens) {
        if (separator)
            *separator = "min_generators";
        return false;
    }
    if (a.dims != b.dims) {
        if (separator)
            *separator = "truncated dims";
        return false;
    }
    if (!a.ranks.empty() && !b.ranks.empty() && a.ranks != b.ranks) {
        if (separator)
            *separator = "rank_vector";
        return false;
    }
    return true;
}

Mat level_map_from_images(const PresentedModule& m, const PresentedModule& n, int D,
                          const std::vector<uint32_t>& gen_images)
{
    const ModuleLevel& lm = m.level(D);
    const ModuleLevel& ln = n.level(D);
    const Fp& fp = m.ctx()->fp();
    size_t t = lm.ring->dim();
    size_t nd = ln.view.dim;
    if (gen_images.size() != m.rows() * nd)
        throw error("generator image vector has wrong length");
    Mat h(nd, lm.view.dim);
    for (size_t k = 0; k < lm.view.dim; ++k) {
        size_t c = 0;
        while (c < m.rows() * t && lm.lift.at(c, k) == 0)
            ++c;
        size_t blk = c / t, b = c % t;
        std::vector<uint32_t> w(gen_images.begin() + blk * nd, gen_images.begin() + (blk + 1) * nd);
        auto img = ln.view.apply_monomial(lm.ring->monomials()[b], std::move(w));
        for (size_t r = 0; r < nd; ++r)
            h.at(r, k) = img[r];
    }
    return h;
}

Mat level_map_from_polymat(const PresentedModule& m, const PresentedModule& n, int D,
                           const PolyMat& h)
{
    const ModuleLevel& ln = n.level(D);
    const Fp& fp = n.ctx()->fp();
    size_t t = ln.ring->dim();
    size_t nd = ln.view.dim;
    if (h.rows() != n.rows() || h.cols() != m.rows())
        throw error("polynomial map shape mismatch");
    std::vector<uint32_t> images(m.rows() * nd, 0);
    for (size_t i = 0; i < m.rows(); ++i) {
        std::vector<uint32_t> amb(n.rows() * t, 0);
        for (size_t r = 0; r < n.rows(); ++r) {
            auto red = ln.ring->reduce(h.at(r, i));
            std::copy(red.begin(), red.end(), amb.begin() + r * t);
        }
        auto proj = ln.project.apply(amb, fp);
        std::copy(proj.begin(), proj.end(), images.begin() + i * nd);
    }
    return level_map_from_images(m, n, D, images);
}

static std::vector<uint32_t> random_combo(const Mat& basis, std::mt19937_64& rng, const Fp& fp)
{
    std::uniform_int_distribution<uint32_t> dist(0, fp.p - 1);
    std::vector<uint32_t> v(basis.rows(), 0);
    for (size_t j = 0; j < basis.cols(); ++j) {
        uint32_t c = dist(rng);
        if (!c)
            continue;
        for (size_t i = 0; i < basis.rows(); ++i)
            v[i] = fp.add(v[i], fp.mul(c, basis.at(i, j)));
    }
    return v;
}

static bool invertible_mod_m(const PresentedModule& m, int D, const Mat& endo)
{
    const TruncModule& v = m.level(D).view;
    Mat ind = induced_on_cogens(v, v, endo);
    return inverse(ind, m.ctx()->fp()).has_value();
}

IsoWitness iso_test(const PresentedModule& m, const PresentedModule& n, int trials,
                    const std::vector<int>& schedule, std::mt19937_64& rng,
                    const FactoredEquation* eq)
{
    IsoWitness w;
    w.fp_m = fingerprint(m, schedule, eq, rng);
    w.fp_n = fingerprint(n, schedule, eq, rng);
    std::string sep;
    if (!fingerprints_match(w.fp_m, w.fp_n, &sep)) {
        w.verdict = "not-isomorphic";
        w.evidence = "fingerprint: " + sep;
        return w;
    }
    int D = schedule.back();
    const Fp& fp = m.ctx()->fp();
    Mat hm = hom_space(m.presentation(), n.level(D).view);
    Mat hn = hom_space(n.presentation(), m.level(D).view);
    // Hom dimensions are isomorphism invariants of the truncations:
    // M ≅ N forces dim Hom(M, N_D) = dim Hom(M, M_D) and symmetrically.
    size_t emm = hom_space(m.presentation(), m.level(D).view).cols();
    size_t enn = hom_space(n.presentation(), n.level(D).view).cols();
    if (hm.cols() != emm || hn.cols() != enn) {
        w.verdict = "not-isomorphic";
        w.evidence = "fingerprint: hom dimensions";
        return w;
    }
    if (hm.cols() == 0 || hn.cols() == 0) {
        w.verdict = "inconclusive";
        w.evidence = "empty hom space";
        return w;
    }
    for (int trial = 0; trial < trials; ++trial) {
        Mat f = level_map_from_images(m, n, D, random_combo(hm, rng, fp));
        Mat g = level_map_from_images(n, m, D, random_combo(hn, rng, fp));
        if (invertible_mod_m(m, D, g.mul(f, fp)) && invertible_mod_m(n, D, f.mul(g, fp))) {
            w.verdict = "isomorphic";
            w.evidence = "mutually inverse modulo m at D=" + std::to_string(D);
            w.maps = std::make_pair(std::move(f), std::move(g));
            return w;
        }
    }
    w.verdict = "inconclusive";
    w.evidence = "no witness after " + std::to_string(trials) + " trials";
    return w;
}

PresentedModule presented_from_trunc(const TruncModule& v)
{
    const RingCtxPtr& ctx = v.ring->ctx();
    const Fp& fp = v.fp();
    auto gens = generator_coords(v);
    size_t g = gens.size();
    size_t t = v.ring->dim();
    if (g == 0)
        return PresentedModule(ctx, v.ring->f(), PolyMat::scalar(ctx, 1, Poly(ctx, 1)));
    // evaluation R_D^g -> V on monomial-times-generator columns; each
    // image is one variable action applied to the image of a divisor
    const auto& mons = v.ring->monomials();
    std::map<Expo, size_t, GrlexDesc> midx;
    for (size_t b = 0; b < t; ++b)
        midx[mons[b]] = b;
    Mat a(v.dim, g * t);
    std::vector<std::vector<uint32_t>> img(t);
    for (size_t j = 0; j < g; ++j) {
        for (size_t b = 0; b < t; ++b) {
            size_t k = 0;
            while (k < mons[b].size() && mons[b][k] == 0)
                ++k;
            if (k == mons[b].size()) {
                img[b].assign(v.dim, 0);
                img[b][gens[j]] = 1;
            } else {
                Expo par = mons[b];
                --par[k];
                img[b] = v.act[k].apply(img[midx.at(par)], fp);
            }
            for (size_t r = 0; r < v.dim; ++r)
                a.at(r, j * t + b) = img[b][r];
        }
    }
    Mat ker = nullspace(a, fp);
    // Nakayama: keep a subset of relation columns that minimally
    // generates the truncated relation module, low degrees first
    std::vector<size_t> order(ker.cols());
    std::vector<int> coldeg(ker.cols(), 0);
    const auto& rdeg = v.ring->degrees();
    for (size_t c = 0; c < ker.cols(); ++c) {
        order[c] = c;
        for (size_t i = 0; i < g * t; ++i)
            if (ker.at(i, c))
                coldeg[c] = std::max(coldeg[c], rdeg[i % t]);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t x, size_t y) { return coldeg[x] < coldeg[y]; });
    RowSpan rad(g * t);
    size_t nv = ctx->nvars();
    for (size_t c = 0; c < ker.cols(); ++c)
        for (size_t k = 0; k < nv; ++k) {
            std::vector<uint32_t> w(g * t, 0);
            for (size_t j = 0; j < g; ++j) {
                std::vector<uint32_t> blk(t);
                for (size_t b = 0; b < t; ++b)
                    blk[b] = ker.at(j * t + b, c);
                auto im = v.ring->var_action(k).apply(blk, fp);
                std::copy(im.begin(), im.end(), w.begin() + j * t);
            }
            rad.insert(std::move(w), fp);
        }
    std::vector<size_t> keep;
    for (size_t c : order) {
        std::vector<uint32_t> col(g * t);
        for (size_t i = 0; i < g * t; ++i)
            col[i] = ker.at(i, c);
        if (rad.insert(std::move(col), fp))
            keep.push_back(c);
    }
    std::sort(keep.begin(), keep.end());
    PolyMat pres(ctx, g, keep.size());
    for (size_t c = 0; c < keep.size(); ++c)
        for (size_t j = 0; j < g; ++j)
            for (size_t b = 0; b < t; ++b)
                if (uint32_t cf = ker.at(j * t + b, keep[c]))
                    pres.at(j, c).add_term(v.ring->monomials()[b], cf);
    return PresentedModule(ctx, v.ring->f(), std::move(pres));
}

DecompResult indecomposable_probe(const PresentedModule& m, int trials,
                                  const std::vector<int>& schedule, std::mt19937_64& rng)
{
    DecompResult res;
    if (m.min_generators() <= 1) {
        // cyclic over a local ring: endomorphisms are multiplications
        res.verdict = "indecomposable-likely";
        return res;
    }
    int D = schedule.back();
    const TruncModule& v = m.level(D).view;
    const Fp& fp = m.ctx()->fp();
    if (v.dim == 0) {
        res.verdict = "indecomposable-likely";
        return res;
    }
    Mat he = hom_space(m.presentation(), v);
    for (int trial = 0; trial < trials; ++trial) {
        Mat a = level_map_from_images(m, m, D, random_combo(he, rng, fp));
        auto chi = charpoly(a, fp);
        for (uint32_t lam = 0; lam < fp.p; ++lam) {
            // Horner evaluation of the characteristic polynomial
            uint32_t val = 0;
            for (size_t k = chi.size(); k-- > 0;)
                val = fp.add(fp.mul(val, lam), chi[k]);
            if (val != 0)
                continue;
            // Fitting decomposition of a - lambda
            Mat b = a.sub(Mat::identity(v.dim).scaled(lam, fp), fp);
            Mat bp = b;
            for (size_t pw = 1; pw < v.dim; pw *= 2)
                bp = bp.mul(bp, fp);
            Mat ker = nullspace(bp, fp);
            if (ker.cols() == 0 || ker.cols() == v.dim)
                continue;
            auto [s1, basis1] = span_submodule(v, ker);
            auto [s2, basis2] = span_submodule(v, bp);
            if (s1.dim + s2.dim != v.dim)
                continue;  // splitting polluted by boundary effects
            res.verdict = "decomposes";
            res.factors.push_back(presented_from_trunc(s1));
            res.factors.push_back(presented_from_trunc(s2));
            return res;
        }
    }
    res.verdict = "indecomposable-likely";
    return res;
}

std::optional<std::vector<PresentedModule>> full_decomposition(const PresentedModule& m,
                                                               int trials,
                                                               const std::vector<int>& schedule,
                                                               std::mt19937_64& rng, int depth)
{
    if (depth > 6)
        return std::nullopt;
    DecompResult r = indecomposable_probe(m, trials, schedule, rng);
    if (r.verdict == "indecomposable-likely")
        return std::vector<PresentedModule>{m};
    if (r.verdict != "decomposes")
        return std::nullopt;
    std::vector<PresentedModule> leaves;
    for (const auto& f : r.factors) {
        auto sub = full_decomposition(f, trials, schedule, rng, depth + 1);
        if (!sub)
            return std::nullopt;
        for (auto& s : *sub)
            leaves.push_back(std::move(s));
    }
    return leaves;
}

std::string to_string(Membership v)
{
    switch (v) {
    case Membership::member: return "member";
    case Membership::not_member: return "not-member";
    default: return "inconclusive";
    }
}

Membership add_membership(const PresentedModule& x, const PresentedModule& m, int trials,
                          const std::vector<int>& schedule, std::mt19937_64& rng,
                          const FactoredEquation* eq)
{
    auto fm = full_decomposition(m, trials, schedule, rng);
    if (!fm)
        return Membership::inconclusive;
    return add_membership_factors(x, *fm, trials, schedule, rng, eq);
}

Membership add_membership_factors(const PresentedModule& x,
                                  const std::vector<PresentedModule>& m_factors, int trials,
                                  const std::vector<int>& schedule, std::mt19937_64& rng,
                                  const FactoredEquation* eq)
{
    if (x.level(schedule.back()).view.dim == 0)
        return Membership::member;  // zero module
    auto fx = full_decomposition(x, trials, schedule, rng);
    if (!fx)
        return Membership::inconclusive;
    const auto& fm = m_factors;
    bool saw_inconclusive = false;
    for (const auto& xf : *fx) {
        bool matched = false;
        bool factor_inconclusive = false;
        for (const auto& mf : fm) {
            IsoWitness w = iso_test(xf, mf, trials, schedule, rng, eq);
            if (w.verdict == "isomorphic") {
                matched = true;
                break;
            }
            if (w.verdict == "inconclusive")
                factor_inconclusive = true;
        }
        if (!matched) {
            if (factor_inconclusive)
                saw_inconclusive = true;
            else
                return Membership::not_member;
        }
    }
    return saw_inconclusive ? Membership::inconclusive : Membership::member;
}

PushforwardResult pushforward(const PresentedModule& m, const std::vector<int>& schedule,
                              std::mt19937_64& rng)
{
    if (m.ctx()->nvars() < 3)
        throw error("pushforward needs a hypersurface of dimension >= 2");
    if (!m.mf())
        throw error("pushforward needs a matrix factorization presentation");
    {
        auto tp = torsion_probe(m, schedule, rng);
        if (tp.verdict != TorsionVerdict::torsion_free)
            throw error("torsion detected in pushforward input");
    }
    const MatrixFactorization& mf = *m.mf();
    const Fp& fp = m.ctx()->fp();
    size_t n = mf.size();
    // generators of M* = coker(phi^T): unit rows independent of phi(0)'s rows
    Mat phi0 = mf.phi.constant_part();
    RowSpan span(n);
    for (size_t r = 0; r < n; ++r) {
        std::vector<uint32_t> row(phi0.row(r), phi0.row(r) + n);
        span.insert(std::move(row), fp);
    }
    std::vector<size_t> sel;
    for (size_t j = 0; j < n && span.dim() < n; ++j) {
        std::vector<uint32_t> e(n, 0);
        e[j] = 1;
        if (span.insert(std::move(e), fp))
            sel.push_back(j);
    }
    PushforwardResult out{.lambda = sel.size(),
                          .embedding = PolyMat(m.ctx(), sel.size(), n),
                          .m1 = PresentedModule(m.ctx(), m.f(), PolyMat(m.ctx(), 1, 0))};
    for (size_t k = 0; k < sel.size(); ++k)
        for (size_t c = 0; c < n; ++c)
            out.embedding.at(k, c) = mf.psi.at(sel[k], c);
    out.m1 = PresentedModule(m.ctx(), m.f(), out.embedding);
    // windowed injectivity of M -> R^lambda at every level
    PresentedModule freemod(m.ctx(), m.f(), PolyMat(m.ctx(), sel.size(), 0));
    std::vector<int> wts = quasi_weights(m.f());
    int maxdeg = 0;
    for (size_t i = 0; i < out.embedding.rows(); ++i)
        for (size_t c = 0; c < out.embedding.cols(); ++c)
            maxdeg = std::max(maxdeg, weighted_degree(out.embedding.at(i, c), wts));
    out.exact = true;
    for (int D : schedule) {
        Mat lv = level_map_from_polymat(m, freemod, D, out.embedding);
        const TruncModule& v = m.level(D).view;
        Mat ker = nullspace(lv, fp);
        RowSpan ks(v.dim);
        for (size_t j = 0; j < ker.cols(); ++j) {
            std::vector<uint32_t> col(v.dim);
            for (size_t i = 0; i < v.dim; ++i)
                col[i] = ker.at(i, j);
            ks.insert(std::move(col), fp);
        }
        size_t kd = ks.dim(), win = 0;
        for (size_t i = 0; i < v.dim; ++i)
            if (v.deg[i] <= D - maxdeg - 1) {
                ++win;
                std::vector<uint32_t> e(v.dim, 0);
                e[i] = 1;
                ks.insert(std::move(e), fp);
            }
        size_t windowed = kd + win - ks.dim();
        out.kernel_trace.emplace_back(D, windowed);
        if (windowed != 0)
            out.exact = false;
    }
    out.depth_m = depth_probe(m, schedule, rng);
    out.depth_m1 = depth_probe(out.m1, schedule, rng);
    return out;
}

}  // namespace mflab
