#include "mflab/endo_probe.hpp"

#include <algorithm>

namespace mflab {

static std::vector<uint32_t> vectorize(const Mat& f)
{
    std::vector<uint32_t> v(f.rows() * f.cols());
    for (size_t i = 0; i < f.rows(); ++i)
        for (size_t j = 0; j < f.cols(); ++j)
            v[i * f.cols() + j] = f.at(i, j);
    return v;
}

EndRing end_ring(const PresentedModule& m, int D)
{
    const Fp& fp = m.ctx()->fp();
    const TruncModule& v = m.level(D).view;
    Mat h = hom_space(m.presentation(), v);
    size_t d = v.dim, k = h.cols();

    EndRing er;
    er.D = D;
    Mat b(d * d, k);
    for (size_t j = 0; j < k; ++j) {
        std::vector<uint32_t> img(h.rows());
        for (size_t i = 0; i < h.rows(); ++i)
            img[i] = h.at(i, j);
        Mat f = level_map_from_images(m, m, D, img);
        auto vec = vectorize(f);
        for (size_t i = 0; i < vec.size(); ++i)
            b.at(i, j) = vec[i];
        er.basis.push_back(std::move(f));
    }

    // batch-solve all composites plus the identity against the basis span
    std::vector<std::vector<uint32_t>> rhs;
    rhs.push_back(vectorize(Mat::identity(d)));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            rhs.push_back(vectorize(er.basis[i].mul(er.basis[j], fp)));
    Mat aug(d * d, k + rhs.size());
    for (size_t i = 0; i < d * d; ++i)
        for (size_t j = 0; j < k; ++j)
            aug.at(i, j) = b.at(i, j);
    for (size_t j = 0; j < rhs.size(); ++j)
        for (size_t i = 0; i < d * d; ++i)
            aug.at(i, k + j) = rhs[j][i];
    auto piv = rref(aug, fp);
    std::vector<bool> bad(rhs.size(), false);
    for (size_t c : piv)
        if (c >= k)
            bad[c - k] = true;
    auto read = [&](size_t j) {
        std::vector<uint32_t> x(k, 0);
        for (size_t r = 0; r < piv.size(); ++r)
            if (piv[r] < k)
                x[piv[r]] = aug.at(r, k + j);
        return x;
    };
    er.closed = std::none_of(bad.begin(), bad.end(), [](bool f) { return f; });
    er.identity = bad[0] ? std::vector<uint32_t>{} : read(0);
    er.table.assign(k, std::vector<std::vector<uint32_t>>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            size_t idx = 1 + i * k + j;
            er.table[i][j] = bad[idx] ? std::vector<uint32_t>{} : read(idx);
        }
    return er;
}

static TruncModule product_module(const TruncModule& v, size_t n)
{
    const Fp& fp = v.fp();
    TruncModule p;
    p.ring = v.ring;
    p.dim = n * v.dim;
    for (size_t blk = 0; blk < n; ++blk)
        p.deg.insert(p.deg.end(), v.deg.begin(), v.deg.end());
    for (const auto& a : v.act) {
        Mat big(p.dim, p.dim);
        for (size_t blk = 0; blk < n; ++blk)
            for (size_t r = 0; r < v.dim; ++r)
                for (size_t c = 0; c < v.dim; ++c)
                    if (a.at(r, c))
                        big.at(blk * v.dim + r, blk * v.dim + c) = a.at(r, c);
        p.act.push_back(std::move(big));
    }
    (void)fp;
    return p;
}

/* basis of the column span of cols intersected with {coordinates of
 * degree <= c}: combinations whose high-degree part vanishes */
static Mat window_columns(const Mat& cols, const std::vector<int>& deg, int c, const Fp& fp)
{
    std::vector<size_t> high;
    for (size_t i = 0; i < deg.size(); ++i)
        if (deg[i] > c)
            high.push_back(i);
    if (high.empty())
        return cols;
    Mat top(high.size(), cols.cols());
    for (size_t r = 0; r < high.size(); ++r)
        for (size_t j = 0; j < cols.cols(); ++j)
            top.at(r, j) = cols.at(high[r], j);
    Mat combos = nullspace(top, fp);
    return cols.mul(combos, fp);
}

/* Multiplicity bookkeeping for large modules, where an explicit
 * decomposition is out of reach: dim Hom(F_j, X_D) is additive in X,
 * so a member of add(M) must solve the Gram system of the factors
 * with non-negative integers, consistently across all levels and
 * generator counts. A failed check refutes membership; a consistent
 * solution is strong (but not certified) evidence for it. */
static Membership membership_by_dims(const PresentedModule& x,
                                     const std::vector<PresentedModule>& factors,
                                     const std::vector<int>& schedule)
{
    size_t k = factors.size();
    // x is usually a truncation artifact, faithful only below its top
    // level; compare at the lower levels of the schedule
    std::vector<int> lvls(schedule.begin(), schedule.end() - (schedule.size() > 2 ? 1 : 0));
    int top = lvls.back();
    auto hdim = [&](const PresentedModule& f, const PresentedModule& t, int L) {
        return static_cast<int64_t>(hom_space(f.presentation(), t.level(L).view).cols());
    };
    std::vector<std::vector<int64_t>> g(k, std::vector<int64_t>(k));
    std::vector<int64_t> h(k);
    for (size_t i = 0; i < k; ++i) {
        h[i] = hdim(factors[i], x, top);
        for (size_t j = 0; j < k; ++j)
            g[i][j] = hdim(factors[i], factors[j], top);
    }
    // fraction-free elimination; k is tiny
    std::vector<std::vector<int64_t>> a(g);
    for (size_t i = 0; i < k; ++i)
        a[i].push_back(h[i]);
    for (size_t c = 0, r = 0; c < k && r < k; ++c) {
        size_t p = r;
        while (p < k && a[p][c] == 0)
            ++p;
        if (p == k)
            return Membership::inconclusive;  // singular Gram matrix
        std::swap(a[p], a[r]);
        for (size_t i = 0; i < k; ++i)
            if (i != r && a[i][c]) {
                int64_t f1 = a[r][c], f2 = a[i][c];
                for (size_t j = 0; j <= k; ++j)
                    a[i][j] = a[i][j] * f1 - a[r][j] * f2;
            }
        ++r;
    }
    std::vector<int64_t> mult(k);
    for (size_t i = 0; i < k; ++i) {
        if (a[i][i] == 0 || a[i][k] % a[i][i] != 0)
            return Membership::not_member;
        mult[i] = a[i][k] / a[i][i];
        if (mult[i] < 0)
            return Membership::not_member;
    }
    // cross-checks: every level, every factor pairing, generator count
    int64_t mg = 0;
    for (size_t j = 0; j < k; ++j)
        mg += mult[j] * static_cast<int64_t>(factors[j].min_generators());
    if (mg != static_cast<int64_t>(x.min_generators()))
        return Membership::not_member;
    for (int L : lvls) {
        int64_t dims = 0;
        for (size_t j = 0; j < k; ++j)
            dims += mult[j] * static_cast<int64_t>(factors[j].level(L).view.dim);
        if (dims != static_cast<int64_t>(x.level(L).view.dim))
            return Membership::not_member;
        for (size_t i = 0; i < k; ++i) {
            int64_t s = 0;
            for (size_t j = 0; j < k; ++j)
                s += mult[j] * hdim(factors[i], factors[j], L);
            if (s != hdim(factors[i], x, L))
                return Membership::not_member;
        }
    }
    return Membership::member;
}

ApproxResolution construction_resolution(const PresentedModule& m, const PresentedModule& n,
                                         int depth, const std::vector<int>& schedule,
                                         std::mt19937_64& rng, const FactoredEquation* eq)
{
    if (depth < 0 || depth > 8)
        throw error("resolution depth must be between 0 and 8");
    const Fp& fp = m.ctx()->fp();
    int D = schedule.back();
    PresentedModule rfree = PresentedModule::from_mf(trivial_mf(m.ctx(), m.f()));
    auto m_factors = full_decomposition(m, 48, schedule, rng);
    auto member_of_m = [&](const PresentedModule& x, bool artifact) {
        if (x.presentation().rows() == 0 || x.level(D).view.dim == 0)
            return Membership::member;  // zero module
        if (m_factors) {
            // kernel artifacts have unreliable top-level dims, and
            // explicit decomposition of large modules is out of reach;
            // both go through multiplicity bookkeeping instead
            if (artifact || x.level(D).view.dim > 256)
                return membership_by_dims(x, *m_factors, schedule);
            return add_membership_factors(x, *m_factors, 24, schedule, rng, eq);
        }
        return add_membership(x, m, 24, schedule, rng, eq);
    };
    if (member_of_m(rfree, false) == Membership::not_member)
        throw error("construction needs R as a direct summand of M");

    ApproxResolution out;
    PresentedModule cur = n;
    bool saw_inconclusive = false;
    for (int i = 0;; ++i) {
        Membership mem = member_of_m(cur, i > 0);
        if (mem == Membership::inconclusive)
            saw_inconclusive = true;
        if (mem == Membership::member) {
            out.pd = i;
            out.status = "finite";
            return out;
        }
        if (i == depth) {
            out.status = saw_inconclusive ? "inconclusive" : "depth-exhausted";
            return out;
        }

        const TruncModule& mv = m.level(D).view;
        const TruncModule& nv = cur.level(D).view;
        // covers of very large intermediate kernels are dominated by
        // truncation-boundary noise; stop rather than resolve noise
        if (nv.dim > 600) {
            out.status = "inconclusive";
            return out;
        }
        Mat h = hom_space(m.presentation(), nv);

        ApproxStep step;
        step.hom_dim = h.cols();
        step.in_add = mem;

        // Hom(M, N_i) as a truncated module inside N_i^{gens(M)};
        // generators outside the degree window are truncation junk
        // (honest homs with image degrees <= D - pdeg - 1 lift), so
        // only windowed generators feed the cover
        const std::vector<int>& wts = mv.ring->weights();
        int pdeg = 0;
        for (size_t r = 0; r < m.presentation().rows(); ++r)
            for (size_t c = 0; c < m.presentation().cols(); ++c)
                pdeg = std::max(pdeg, weighted_degree(m.presentation().at(r, c), wts));
        int c_hom = D - pdeg - 1;
        TruncModule ambient = product_module(nv, m.presentation().rows());
        auto [homed, hbasis] = span_submodule(ambient, h);
        auto gcoords = generator_coords(homed);
        std::vector<Mat> gens;
        std::vector<size_t> kept;
        for (size_t g : gcoords) {
            std::vector<uint32_t> img(ambient.dim);
            int top = 0;
            for (size_t r = 0; r < ambient.dim; ++r) {
                img[r] = hbasis.at(r, g);
                if (img[r])
                    top = std::max(top, ambient.deg[r]);
            }
            if (top > c_hom)
                continue;
            kept.push_back(g);
            gens.push_back(level_map_from_images(m, cur, D, img));
        }
        step.cover = gens.size();
        if (gens.empty()) {
            out.status = "inconclusive";
            out.steps.push_back(std::move(step));
            return out;
        }

        Mat big = gens[0];
        for (size_t g = 1; g < gens.size(); ++g)
            big = big.hcat(gens[g]);
        step.surjective = rank(big, fp) == nv.dim;

        // certificate: the chosen maps R-generate every windowed hom
        // element. R acts through compositions with central
        // endomorphisms r * id, so R-generation gives generation over
        // End(M), i.e. Hom(M, M^cover) -> Hom(M, N_i) stays onto on
        // the honest part of the hom space.
        Mat gen_cols(ambient.dim, kept.size());
        for (size_t j = 0; j < kept.size(); ++j)
            for (size_t r = 0; r < ambient.dim; ++r)
                gen_cols.at(r, j) = hbasis.at(r, kept[j]);
        {
            auto [gspan, gbasis] = span_submodule(ambient, gen_cols);
            RowSpan rs(ambient.dim);
            for (size_t j = 0; j < gbasis.cols(); ++j) {
                std::vector<uint32_t> v(ambient.dim);
                for (size_t r = 0; r < ambient.dim; ++r)
                    v[r] = gbasis.at(r, j);
                rs.insert(std::move(v), fp);
            }
            Mat win = window_columns(hbasis, ambient.deg, c_hom, fp);
            step.hom_exact = true;
            for (size_t j = 0; j < win.cols() && step.hom_exact; ++j) {
                std::vector<uint32_t> v(ambient.dim);
                for (size_t r = 0; r < ambient.dim; ++r)
                    v[r] = win.at(r, j);
                if (!rs.contains(std::move(v), fp))
                    step.hom_exact = false;
            }
        }

        // kernel of the cover, restricted to the degree window so that
        // truncation-boundary junk does not enter the next step
        TruncModule prodm = product_module(mv, gens.size());
        Mat ker = nullspace(big, fp);
        int shift = 0;
        for (size_t r = 0; r < big.rows(); ++r)
            for (size_t c = 0; c < big.cols(); ++c)
                if (big.at(r, c))
                    shift = std::max(shift, nv.deg[r] - prodm.deg[c]);
        Mat seed = window_columns(ker, prodm.deg, D - shift - 1, fp);
        auto [kmod, kbasis] = span_submodule(prodm, seed);
        for (int lvl : schedule)
            step.kernel_dims.emplace_back(lvl, lvl == D ? kmod.dim : 0);
        if (kmod.dim == 0) {
            bool clean = step.surjective && mem != Membership::not_member;
            out.steps.push_back(std::move(step));
            out.pd = i;
            out.status = clean ? "finite" : "inconclusive";
            return out;
        }
        PresentedModule next = presented_from_trunc(kmod);
        step.kernel_dims.clear();
        for (int lvl : schedule)
            step.kernel_dims.emplace_back(lvl, next.level(std::min(lvl, D)).view.dim);
        out.steps.push_back(std::move(step));
        cur = std::move(next);
    }
}

PdResult pd_probe(const PresentedModule& m, const PresentedModule& n, int depth,
                  const std::vector<int>& schedule, std::mt19937_64& rng,
                  const FactoredEquation* eq)
{
    ApproxResolution res = construction_resolution(m, n, depth, schedule, rng, eq);
    PdResult out;
    out.depth = depth;
    out.pd = res.pd;
    out.note = res.status;
    return out;
}

DualityCheck ext_duality_check(const MatrixFactorization& m, const MatrixFactorization& n,
                               const std::vector<int>& schedule)
{
    DualityCheck out;
    PresentedModule nmod = PresentedModule::from_mf(n);
    PresentedModule mdual = PresentedModule::from_mf(dual(m));
    out.lhs = ext_periodic(m, nmod, 1, schedule);
    out.rhs = ext_periodic(dual(n), mdual, 1, schedule);
    if (!out.lhs.stable() || !out.rhs.stable())
        out.verdict = "inconclusive";
    else
        out.verdict = *out.lhs.stable_dim == *out.rhs.stable_dim ? "pass" : "fail";
    return out;
}

std::vector<PerpEntry> perp_catalog(
    const MatrixFactorization& m,
    const std::vector<std::pair<std::string, MatrixFactorization>>& catalog, int n,
    const std::vector<int>& schedule)
{
    if (n < 1)
        throw error("perp depth must be >= 1");
    std::vector<PerpEntry> out;
    for (const auto& [label, xmf] : catalog) {
        PerpEntry e;
        e.label = label;
        PresentedModule x = PresentedModule::from_mf(xmf);
        bool all_zero = true, all_stable = true;
        for (int i = 1; i <= n; ++i) {
            ExtResult r = ext_periodic(m, x, i, schedule);
            if (!r.stable())
                all_stable = false;
            else if (*r.stable_dim != 0)
                all_zero = false;
            e.exts.push_back(std::move(r));
        }
        if (!all_stable)
            e.verdict = "inconclusive";
        else
            e.verdict = all_zero ? "in-perp" : "out";
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace mflab
