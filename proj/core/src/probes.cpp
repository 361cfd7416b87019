#include "mflab/probes.hpp"

#include <algorithm>

namespace mflab {

std::string to_string(TorsionVerdict v)
{
    switch (v) {
    case TorsionVerdict::torsion_free: return "torsion-free";
    case TorsionVerdict::has_torsion: return "has-torsion";
    default: return "unstable";
    }
}

static Poly random_linear_form(const RingCtxPtr& ctx, std::mt19937_64& rng)
{
    std::uniform_int_distribution<uint32_t> dist(0, ctx->p() - 1);
    Poly t(ctx);
    bool nonzero = false;
    while (!nonzero) {
        t = Poly(ctx);
        for (size_t k = 0; k < ctx->nvars(); ++k) {
            uint32_t c = dist(rng);
            if (c) {
                Expo e(ctx->nvars(), 0);
                e[k] = 1;
                t.add_term(e, c);
                nonzero = true;
            }
        }
    }
    return t;
}

/* dim of ker(op) intersected with the coordinates of degree <= c */
static size_t windowed_kernel_dim(const Mat& op, const std::vector<int>& deg, int c, const Fp& fp)
{
    Mat ker = nullspace(op, fp);
    RowSpan span(deg.size());
    for (size_t j = 0; j < ker.cols(); ++j) {
        std::vector<uint32_t> v(deg.size());
        for (size_t i = 0; i < deg.size(); ++i)
            v[i] = ker.at(i, j);
        span.insert(std::move(v), fp);
    }
    size_t dim_ker = span.dim(), win = 0;
    for (size_t k = 0; k < deg.size(); ++k)
        if (deg[k] <= c) {
            ++win;
            std::vector<uint32_t> e(deg.size(), 0);
            e[k] = 1;
            span.insert(std::move(e), fp);
        }
    return dim_ker + win - span.dim();
}

TorsionReport torsion_probe(const PresentedModule& m, const std::vector<int>& schedule,
                            std::mt19937_64& rng)
{
    const Fp& fp = m.ctx()->fp();
    TorsionReport rep;
    std::vector<TorsionVerdict> verdicts;
    for (int trial = 0; trial < 3; ++trial) {
        Poly t = random_linear_form(m.ctx(), rng);
        std::vector<std::pair<int, size_t>> trace;
        for (int D : schedule) {
            const TruncModule& v = m.level(D).view;
            int wmax = *std::max_element(v.ring->weights().begin(), v.ring->weights().end());
            trace.emplace_back(D, windowed_kernel_dim(v.mult_op(t), v.deg, D - wmax - 1, fp));
        }
        TorsionVerdict v;
        bool all_zero = std::all_of(trace.begin(), trace.end(),
                                    [](const auto& p) { return p.second == 0; });
        size_t k = trace.size();
        if (all_zero)
            v = TorsionVerdict::torsion_free;
        else if (k >= 3 && trace[k - 1].second == trace[k - 2].second &&
                 trace[k - 2].second == trace[k - 3].second && trace[k - 1].second > 0)
            v = TorsionVerdict::has_torsion;
        else
            v = TorsionVerdict::unstable;
        verdicts.push_back(v);
        rep.traces.push_back(std::move(trace));
    }
    if (std::all_of(verdicts.begin(), verdicts.end(),
                    [&](TorsionVerdict v) { return v == verdicts[0]; }))
        rep.verdict = verdicts[0];
    else
        rep.verdict = TorsionVerdict::unstable;
    return rep;
}

PresentedModule tensor_with_dual(const MatrixFactorization& m, const MatrixFactorization& n)
{
    require_valid(m);
    require_valid(n);
    PolyMat im = PolyMat::identity(m.ctx, m.size());
    PolyMat in = PolyMat::identity(n.ctx, n.size());
    PolyMat pres = kron(m.phi, in).hcat(kron(im, n.phi.transpose()));
    return PresentedModule(m.ctx, m.f, std::move(pres));
}

TorsionReport tensor_mcm_check(const MatrixFactorization& m, const MatrixFactorization& n,
                               const std::vector<int>& schedule, std::mt19937_64& rng)
{
    PresentedModule t = tensor_with_dual(m, n);
    return torsion_probe(t, schedule, rng);
}

int depth_probe(const PresentedModule& m, const std::vector<int>& schedule, std::mt19937_64& rng)
{
    const Fp& fp = m.ctx()->fp();
    int D = schedule.back();
    TruncModule cur = m.level(D).view;
    int wmax = *std::max_element(cur.ring->weights().begin(), cur.ring->weights().end());
    int c = D - wmax - 1;
    int depth = 0;
    int maxdepth = static_cast<int>(m.ctx()->nvars()) - 1;
    while (depth < maxdepth && cur.dim > 0 && c >= 1) {
        bool found = false;
        for (int attempt = 0; attempt < 3 && !found; ++attempt) {
            Poly t = random_linear_form(m.ctx(), rng);
            Mat op = cur.mult_op(t);
            if (windowed_kernel_dim(op, cur.deg, c, fp) != 0)
                continue;
            auto [q, proj] = quotient_module(cur, op);
            cur = std::move(q);
            c -= wmax;
            found = true;
        }
        if (!found)
            break;
        ++depth;
        --c;
    }
    return depth;
}

}  // namespace mflab
