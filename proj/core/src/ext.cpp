#include "mflab/ext.hpp"

#include <algorithm>

namespace mflab {

std::vector<int> default_schedule(const RingCtxPtr& ctx)
{
    if (ctx->nvars() <= 3)
        return {8, 10, 12};
    return {4, 5, 6};
}

std::vector<int> default_schedule(const RingCtxPtr& ctx, const Poly& f)
{
    std::vector<int> base = default_schedule(ctx);
    int wmax = 1;
    for (int w : quasi_weights(f))
        wmax = std::max(wmax, w);
    for (int& d : base)
        d *= wmax;
    return base;
}

static int max_entry_wdeg(const PolyMat& m, const std::vector<int>& w)
{
    int d = 0;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            d = std::max(d, weighted_degree(m.at(i, j), w));
    return d;
}

void mark_stable(ExtResult& r)
{
    r.stable_dim.reset();
    if (r.dims.size() < 3)
        return;
    size_t k = r.dims.size();
    size_t a = r.dims[k - 3].second, b = r.dims[k - 2].second, c = r.dims[k - 1].second;
    if (a == b && b == c)
        r.stable_dim = c;
}

/* Classes are counted inside the degree window <= D - maxdeg - 1 only:
 * near the truncation boundary the quotient N/m^D N carries kernel
 * elements that do not lift to the untruncated module, and those would
 * otherwise survive stabilization. Below the window the truncated
 * operators agree with the honest ones. */
static size_t windowed_quotient_dim(const Mat* out_op, const Mat* in_op,
                                    const std::vector<int>& deg, int c, const Fp& fp)
{
    size_t amb = deg.size();
    std::vector<size_t> window;
    for (size_t k = 0; k < amb; ++k)
        if (deg[k] <= c)
            window.push_back(k);

    size_t z = window.size();
    if (out_op) {
        Mat ker = nullspace(*out_op, fp);
        RowSpan ker_span(amb);
        for (size_t j = 0; j < ker.cols(); ++j) {
            std::vector<uint32_t> v(amb);
            for (size_t i = 0; i < amb; ++i)
                v[i] = ker.at(i, j);
            ker_span.insert(std::move(v), fp);
        }
        size_t dim_ker = ker_span.dim();
        for (size_t k : window) {
            std::vector<uint32_t> e(amb, 0);
            e[k] = 1;
            ker_span.insert(std::move(e), fp);
        }
        z = dim_ker + window.size() - ker_span.dim();
    }

    if (!in_op)
        return z;
    const Mat& in_mat = *in_op;
    RowSpan im_span(amb);
    for (size_t j = 0; j < in_mat.cols(); ++j) {
        std::vector<uint32_t> v(amb);
        for (size_t i = 0; i < amb; ++i)
            v[i] = in_mat.at(i, j);
        im_span.insert(std::move(v), fp);
    }
    size_t dim_im = im_span.dim();
    for (size_t k : window) {
        std::vector<uint32_t> e(amb, 0);
        e[k] = 1;
        im_span.insert(std::move(e), fp);
    }
    size_t b = dim_im + window.size() - im_span.dim();
    return z - b;
}

static ExtResult periodic_dims(const MatrixFactorization& m, const PresentedModule& n, int i,
                               const std::vector<int>& schedule, bool contra, const char* kind)
{
    require_valid(m);
    if (i < 0)
        throw error("negative homological index");
    const Fp& fp = n.ctx()->fp();
    std::vector<int> w = quasi_weights(m.f);
    int maxdeg = std::max(max_entry_wdeg(m.phi, w), max_entry_wdeg(m.psi, w));
    ExtResult out;
    out.kind = kind;
    out.i = i;
    for (int D : schedule) {
        if (D - maxdeg - 1 < 1)
            throw error("truncation order too small for this factorization");
        const TruncModule& nd = n.level(D).view;
        Mat p = contra ? contra_op(m.phi, nd) : cov_op(m.phi, nd);
        Mat q = contra ? contra_op(m.psi, nd) : cov_op(m.psi, nd);
        std::vector<int> deg(m.size() * nd.dim);
        for (size_t blk = 0; blk < m.size(); ++blk)
            for (size_t k = 0; k < nd.dim; ++k)
                deg[blk * nd.dim + k] = nd.deg[k];
        int c = D - maxdeg - 1;
        const Mat* op_out;
        const Mat* op_in;
        if (contra) {
            // Ext^i = ker d_{i+1}^* / im d_i^*, d_odd = phi, d_even = psi
            op_out = (i % 2 == 1) ? &q : &p;
            op_in = (i == 0) ? nullptr : ((i % 2 == 1) ? &p : &q);
        } else if (i == 0) {
            // Tor_0 = coker(phi x N)
            op_out = nullptr;
            op_in = &p;
        } else {
            // Tor_i = ker(d_i x N) / im(d_{i+1} x N)
            op_out = (i % 2 == 1) ? &p : &q;
            op_in = (i % 2 == 1) ? &q : &p;
        }
        size_t dim = windowed_quotient_dim(op_out, op_in, deg, c, fp);
        out.dims.emplace_back(D, dim);
    }
    mark_stable(out);
    return out;
}

ExtResult ext_periodic(const MatrixFactorization& m, const PresentedModule& n, int i,
                       const std::vector<int>& schedule)
{
    return periodic_dims(m, n, i, schedule, true, "ext");
}

ExtResult tor_periodic(const MatrixFactorization& m, const PresentedModule& n, int i,
                       const std::vector<int>& schedule)
{
    return periodic_dims(m, n, i, schedule, false, "tor");
}

ExtResult hom_dim(const MatrixFactorization& m, const PresentedModule& n,
                  const std::vector<int>& schedule)
{
    ExtResult r = periodic_dims(m, n, 0, schedule, true, "hom");
    return r;
}

namespace {

/* Coefficientwise embedding of a pair of polynomial matrices into one
 * vector over a fixed monomial window. */
struct PairSpace {
    RingCtxPtr ctx;
    size_t sn, sm;
    std::vector<Expo> mons;
    std::map<Expo, size_t, GrlexDesc> idx;

    PairSpace(RingCtxPtr c, size_t a, size_t b, int degbound) : ctx(std::move(c)), sn(a), sm(b)
    {
        mons = monomials_below(ctx->nvars(), degbound + 1);
        for (size_t j = 0; j < mons.size(); ++j)
            idx.emplace(mons[j], j);
    }

    size_t len() const { return 2 * sn * sm * mons.size(); }

    std::vector<uint32_t> vectorize(const PolyMat& a, const PolyMat& b) const
    {
        std::vector<uint32_t> v(len(), 0);
        size_t half = sn * sm * mons.size();
        for (size_t i = 0; i < sn; ++i)
            for (size_t j = 0; j < sm; ++j) {
                for (const auto& [e, c] : a.at(i, j).terms()) {
                    auto it = idx.find(e);
                    if (it == idx.end())
                        throw error("cocycle degree window overflow");
                    v[(i * sm + j) * mons.size() + it->second] = c;
                }
                for (const auto& [e, c] : b.at(i, j).terms()) {
                    auto it = idx.find(e);
                    if (it == idx.end())
                        throw error("cocycle degree window overflow");
                    v[half + (i * sm + j) * mons.size() + it->second] = c;
                }
            }
        return v;
    }

    std::pair<PolyMat, PolyMat> devectorize(const std::vector<uint32_t>& v) const
    {
        PolyMat a(ctx, sn, sm), b(ctx, sn, sm);
        size_t half = sn * sm * mons.size();
        for (size_t i = 0; i < sn; ++i)
            for (size_t j = 0; j < sm; ++j)
                for (size_t k = 0; k < mons.size(); ++k) {
                    uint32_t ca = v[(i * sm + j) * mons.size() + k];
                    uint32_t cb = v[half + (i * sm + j) * mons.size() + k];
                    if (ca)
                        a.at(i, j).add_term(mons[k], ca);
                    if (cb)
                        b.at(i, j).add_term(mons[k], cb);
                }
        return {std::move(a), std::move(b)};
    }
};

struct CocycleSetup {
    const MatrixFactorization& n;
    const MatrixFactorization& m;
    int maxdeg;
    PairSpace unknowns;   // degree <= d
    PairSpace ambient;    // degree <= d + maxdeg

    CocycleSetup(const MatrixFactorization& nn, const MatrixFactorization& mm, int d)
        : n(nn),
          m(mm),
          maxdeg(std::max({nn.phi.max_entry_degree(), nn.psi.max_entry_degree(),
                           mm.phi.max_entry_degree(), mm.psi.max_entry_degree()})),
          unknowns(nn.ctx, nn.size(), mm.size(), d),
          ambient(nn.ctx, nn.size(), mm.size(), d + maxdeg)
    {
        if (nn.ctx->vars() != mm.ctx->vars() || nn.f != mm.f.lifted(nn.ctx))
            throw error("cocycle spaces need matching ring and equation");
    }

    std::pair<PolyMat, PolyMat> cocycle_value(const PolyMat& a, const PolyMat& b) const
    {
        return {n.phi.mul(b).add(a.mul(m.psi)), n.psi.mul(a).add(b.mul(m.phi))};
    }

    std::pair<PolyMat, PolyMat> coboundary_value(const PolyMat& c, const PolyMat& h) const
    {
        PolyMat a = n.phi.mul(c).add(h.mul(m.phi));
        PolyMat b = n.psi.mul(h).add(c.mul(m.psi)).neg();
        return {std::move(a), std::move(b)};
    }

    /* rank data: cocycle kernel basis (in unknown coordinates) */
    Mat cocycle_kernel() const
    {
        size_t cols = unknowns.len();
        Mat constraints(ambient.len(), cols);
        for (size_t u = 0; u < cols; ++u) {
            auto [a, b] = unknowns.devectorize(unit(u, cols));
            auto [c1, c2] = cocycle_value(a, b);
            auto v = ambient.vectorize(c1, c2);
            for (size_t r = 0; r < v.size(); ++r)
                if (v[r])
                    constraints.at(r, u) = v[r];
        }
        return nullspace(constraints, n.ctx->fp());
    }

    RowSpan coboundary_span() const
    {
        // coboundary parameters (c, h) of degree <= d live in their own
        // copy of the unknown window
        size_t cols = unknowns.len();
        RowSpan span(ambient.len());
        for (size_t u = 0; u < cols; ++u) {
            auto [c, h] = unknowns.devectorize(unit(u, cols));
            auto [a, b] = coboundary_value(c, h);
            span.insert(ambient.vectorize(a, b), n.ctx->fp());
        }
        return span;
    }

  private:
    static std::vector<uint32_t> unit(size_t k, size_t len)
    {
        std::vector<uint32_t> v(len, 0);
        v[k] = 1;
        return v;
    }
};

}  // namespace

ExtResult ext1_cocycle(const MatrixFactorization& n, const MatrixFactorization& m, int d0)
{
    require_valid(n);
    require_valid(m);
    ExtResult out;
    out.kind = "ext";
    out.i = 1;
    for (int d = d0; d < d0 + 3; ++d) {
        CocycleSetup setup(n, m, d);
        Mat z = setup.cocycle_kernel();
        RowSpan span = setup.coboundary_span();
        size_t bdim = span.dim();
        for (size_t j = 0; j < z.cols(); ++j) {
            std::vector<uint32_t> col(z.rows());
            for (size_t i = 0; i < z.rows(); ++i)
                col[i] = z.at(i, j);
            auto [a, b] = setup.unknowns.devectorize(col);
            span.insert(setup.ambient.vectorize(a, b), n.ctx->fp());
        }
        out.dims.emplace_back(d, span.dim() - bdim);
    }
    mark_stable(out);
    return out;
}

std::optional<std::pair<PolyMat, PolyMat>> ext1_witness(const MatrixFactorization& n,
                                                        const MatrixFactorization& m, int d)
{
    CocycleSetup setup(n, m, d);
    Mat z = setup.cocycle_kernel();
    RowSpan span = setup.coboundary_span();
    for (size_t j = 0; j < z.cols(); ++j) {
        std::vector<uint32_t> col(z.rows());
        for (size_t i = 0; i < z.rows(); ++i)
            col[i] = z.at(i, j);
        auto [a, b] = setup.unknowns.devectorize(col);
        if (!span.contains(setup.ambient.vectorize(a, b), n.ctx->fp()))
            return std::make_pair(std::move(a), std::move(b));
    }
    return std::nullopt;
}

}  // namespace mflab
