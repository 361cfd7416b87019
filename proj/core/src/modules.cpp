#include "mflab/modules.hpp"

#include <algorithm>

namespace mflab {

PresentedModule::PresentedModule(RingCtxPtr ctx, Poly f, PolyMat presentation)
    : ctx_(std::move(ctx)), f_(std::move(f)), pres_(std::move(presentation))
{
    if (pres_.rows() == 0)
        throw error("empty presentation");
}

PresentedModule PresentedModule::from_mf(const MatrixFactorization& m)
{
    PresentedModule out(m.ctx, m.f, m.phi);
    out.mf_ = m;
    return out;
}

size_t PresentedModule::min_generators() const
{
    Mat c = pres_.constant_part();
    return pres_.rows() - rank(c, ctx_->fp());
}

const ModuleLevel& PresentedModule::level(int D) const
{
    auto it = levels_.find(D);
    if (it != levels_.end())
        return it->second;

    const Fp& fp = ctx_->fp();
    TruncPtr ring = get_truncation(ctx_, f_, D);
    size_t t = ring->dim();
    size_t n = pres_.rows();
    size_t ambient = n * t;

    // span of the presentation image inside R_D^n
    RowSpan span(ambient);
    for (size_t j = 0; j < pres_.cols(); ++j) {
        // multiples of column j by all ring basis monomials
        std::vector<std::vector<uint32_t>> col(n);
        for (size_t i = 0; i < n; ++i)
            col[i] = ring->reduce(pres_.at(i, j));
        for (size_t b = 0; b < t; ++b) {
            std::vector<uint32_t> v(ambient, 0);
            for (size_t i = 0; i < n; ++i) {
                auto w = ring->mult_monomial(ring->monomials()[b], col[i]);
                std::copy(w.begin(), w.end(), v.begin() + i * t);
            }
            span.insert(std::move(v), fp);
        }
    }
    // quotient coordinates: the non-pivot columns of the image span, so
    // that residuals against the span live exactly on these coordinates
    std::vector<size_t> coords = span.free_coords();

    ModuleLevel lvl;
    lvl.ring = ring;
    lvl.view.ring = ring;
    lvl.view.dim = coords.size();
    lvl.lift = Mat(ambient, coords.size());
    for (size_t k = 0; k < coords.size(); ++k)
        lvl.lift.at(coords[k], k) = 1;
    // project: normal form against the image span, then coefficients at coords;
    // a residual with support at a chosen coordinate contributes there
    lvl.project = Mat(coords.size(), ambient);
    for (size_t c = 0; c < ambient; ++c) {
        std::vector<uint32_t> e(ambient, 0);
        e[c] = 1;
        auto res = span.residual(std::move(e), fp);
        if (res.empty())
            continue;  // inside the image
        for (size_t k = 0; k < coords.size(); ++k)
            lvl.project.at(k, c) = res[coords[k]];
    }
    for (size_t k = 0; k < lvl.view.dim; ++k)
        lvl.view.deg.push_back(ring->degrees()[coords[k] % t]);
    for (size_t v = 0; v < ctx_->nvars(); ++v) {
        Mat big(ambient, ambient);
        const Mat& a = ring->var_action(v);
        for (size_t i = 0; i < n; ++i)
            for (size_t r = 0; r < t; ++r)
                for (size_t c = 0; c < t; ++c)
                    big.at(i * t + r, i * t + c) = a.at(r, c);
        lvl.view.act.push_back(lvl.project.mul(big.mul(lvl.lift, fp), fp));
    }
    return levels_.emplace(D, std::move(lvl)).first->second;
}

Mat contra_op(const PolyMat& d, const TruncModule& n)
{
    Mat out(d.cols() * n.dim, d.rows() * n.dim);
    for (size_t i = 0; i < d.rows(); ++i)
        for (size_t j = 0; j < d.cols(); ++j) {
            if (d.at(i, j).is_zero())
                continue;
            Mat b = n.mult_op(d.at(i, j));
            for (size_t r = 0; r < n.dim; ++r)
                for (size_t c = 0; c < n.dim; ++c)
                    if (b.at(r, c))
                        out.at(j * n.dim + r, i * n.dim + c) = b.at(r, c);
        }
    return out;
}

Mat cov_op(const PolyMat& d, const TruncModule& n)
{
    Mat out(d.rows() * n.dim, d.cols() * n.dim);
    for (size_t i = 0; i < d.rows(); ++i)
        for (size_t j = 0; j < d.cols(); ++j) {
            if (d.at(i, j).is_zero())
                continue;
            Mat b = n.mult_op(d.at(i, j));
            for (size_t r = 0; r < n.dim; ++r)
                for (size_t c = 0; c < n.dim; ++c)
                    if (b.at(r, c))
                        out.at(i * n.dim + r, j * n.dim + c) = b.at(r, c);
        }
    return out;
}

Mat hom_space(const PolyMat& d, const TruncModule& n)
{
    return nullspace(contra_op(d, n), n.fp());
}

}  // namespace mflab
