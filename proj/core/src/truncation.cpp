#include "mflab/truncation.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <sstream>

namespace mflab {

TruncationBasis::TruncationBasis(RingCtxPtr ctx, Poly f, int D, size_t memory_cap_mb)
    : ctx_(std::move(ctx)), f_(std::move(f)), D_(D)
{
    if (f_.is_zero() || f_.constant_term() != 0)
        throw error("truncation requires nonzero f with zero constant term");
    if (D_ < 2)
        throw error("truncation order must be >= 2");
    const Fp& fp = ctx_->fp();
    weights_ = quasi_weights(f_);
    all_ = monomials_below(ctx_->nvars(), weights_, D_);
    for (size_t j = 0; j < all_.size(); ++j)
        idx_.emplace(all_[j], j);

    int ord = D_;
    for (const auto& [e, c] : f_.terms())
        ord = std::min(ord, wdeg(e));
    std::vector<Expo> gens = monomials_below(ctx_->nvars(), weights_, std::max(1, D_ - ord));
    size_t est_bytes = (gens.size() + all_.size()) * all_.size() * 8;
    if (est_bytes > memory_cap_mb * (1u << 20))
        throw error("truncation order too large for memory budget");

    Mat rel(gens.size(), all_.size());
    for (size_t r = 0; r < gens.size(); ++r) {
        Poly p = f_ * Poly::monomial(ctx_, gens[r], 1);
        for (const auto& [e, c] : p.terms()) {
            auto it = idx_.find(e);
            if (it != idx_.end())
                rel.at(r, it->second) = c;
        }
    }
    auto pivots = rref(rel, fp);
    std::vector<bool> is_piv(all_.size(), false);
    std::vector<size_t> piv_row(all_.size(), 0);
    for (size_t r = 0; r < pivots.size(); ++r) {
        is_piv[pivots[r]] = true;
        piv_row[pivots[r]] = r;
    }
    std::vector<size_t> basis_cols;
    for (size_t j = 0; j < all_.size(); ++j)
        if (!is_piv[j])
            basis_cols.push_back(j);
    // basis listed by ascending degree (filtration order)
    std::stable_sort(basis_cols.begin(), basis_cols.end(), [&](size_t a, size_t b) {
        return wdeg(all_[a]) < wdeg(all_[b]);
    });
    std::vector<size_t> col_to_basis(all_.size(), SIZE_MAX);
    for (size_t k = 0; k < basis_cols.size(); ++k) {
        basis_.push_back(all_[basis_cols[k]]);
        degs_.push_back(wdeg(all_[basis_cols[k]]));
        col_to_basis[basis_cols[k]] = k;
    }
    nf_ = Mat(basis_.size(), all_.size());
    for (size_t j = 0; j < all_.size(); ++j) {
        if (!is_piv[j]) {
            nf_.at(col_to_basis[j], j) = 1;
            continue;
        }
        size_t r = piv_row[j];
        for (size_t c = 0; c < all_.size(); ++c)
            if (!is_piv[c] && rel.at(r, c))
                nf_.at(col_to_basis[c], j) = fp.neg(rel.at(r, c));
    }
    var_act_.resize(ctx_->nvars());
    for (size_t k = 0; k < ctx_->nvars(); ++k) {
        Mat a(dim(), dim());
        for (size_t b = 0; b < dim(); ++b) {
            Expo e = basis_[b];
            e[k] += 1;
            auto it = idx_.find(e);
            if (it == idx_.end())
                continue;  // degree >= D, truncated away
            for (size_t r = 0; r < dim(); ++r)
                a.at(r, b) = nf_.at(r, it->second);
        }
        var_act_[k] = std::move(a);
    }
}

std::vector<uint32_t> TruncationBasis::reduce(const Poly& p) const
{
    const Fp& fp = ctx_->fp();
    std::vector<uint32_t> v(dim(), 0);
    for (const auto& [e, c] : p.terms()) {
        auto it = idx_.find(e);
        if (it == idx_.end())
            continue;
        for (size_t r = 0; r < dim(); ++r)
            v[r] = fp.add(v[r], fp.mul(c, nf_.at(r, it->second)));
    }
    return v;
}

Mat TruncationBasis::mult_op(const Poly& p) const
{
    const Fp& fp = ctx_->fp();
    Mat acc(dim(), dim());
    for (const auto& [e, c] : p.terms()) {
        if (wdeg(e) >= D_)
            continue;
        Mat term = Mat::identity(dim()).scaled(c, fp);
        for (size_t k = 0; k < e.size(); ++k)
            for (int rep = 0; rep < e[k]; ++rep)
                term = var_act_[k].mul(term, fp);
        acc = acc.add(term, fp);
    }
    return acc;
}

std::vector<uint32_t> TruncationBasis::mult_monomial(const Expo& b, std::vector<uint32_t> v) const
{
    const Fp& fp = ctx_->fp();
    for (size_t k = 0; k < b.size(); ++k)
        for (int rep = 0; rep < b[k]; ++rep)
            v = var_act_[k].apply(v, fp);
    return v;
}

TruncPtr get_truncation(const RingCtxPtr& ctx, const Poly& f, int D)
{
    static std::mutex mu;
    static std::map<std::string, TruncPtr> cache;
    std::ostringstream key;
    for (const auto& v : ctx->vars())
        key << v << ",";
    key << ";" << ctx->p() << ";" << f.str() << ";" << D;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key.str());
    if (it != cache.end())
        return it->second;
    size_t cap = 512;
    if (const char* env = std::getenv("MFLAB_MEMORY_CAP_MB"))
        cap = std::strtoull(env, nullptr, 10);
    auto t = std::make_shared<const TruncationBasis>(ctx, f, D, cap);
    cache.emplace(key.str(), t);
    return t;
}

Mat TruncModule::mult_op(const Poly& p) const
{
    const Fp& f = fp();
    Mat acc(dim, dim);
    for (const auto& [e, c] : p.terms()) {
        Mat term = mult_monomial_op(e).scaled(c, f);
        acc = acc.add(term, f);
    }
    return acc;
}

Mat TruncModule::mult_monomial_op(const Expo& b) const
{
    const Fp& f = fp();
    Mat term = Mat::identity(dim);
    for (size_t k = 0; k < b.size(); ++k)
        for (int rep = 0; rep < b[k]; ++rep)
            term = act[k].mul(term, f);
    return term;
}

std::vector<uint32_t> TruncModule::apply_monomial(const Expo& b, std::vector<uint32_t> v) const
{
    const Fp& f = fp();
    for (size_t k = 0; k < b.size(); ++k)
        for (int rep = 0; rep < b[k]; ++rep)
            v = act[k].apply(v, f);
    return v;
}

Mat radical_span(const TruncModule& v)
{
    const Fp& fp = v.fp();
    RowSpan span(v.dim);
    for (const auto& a : v.act)
        for (size_t j = 0; j < v.dim; ++j) {
            std::vector<uint32_t> col(v.dim);
            for (size_t i = 0; i < v.dim; ++i)
                col[i] = a.at(i, j);
            span.insert(std::move(col), fp);
        }
    // return as columns
    Mat basis(v.dim, span.dim());
    size_t k = 0;
    // re-derive: collect reduced rows by reinserting
    RowSpan again(v.dim);
    for (const auto& a : v.act)
        for (size_t j = 0; j < v.dim; ++j) {
            std::vector<uint32_t> col(v.dim);
            for (size_t i = 0; i < v.dim; ++i)
                col[i] = a.at(i, j);
            auto res = again.residual(col, fp);
            if (!res.empty()) {
                again.insert(col, fp);
                for (size_t i = 0; i < v.dim; ++i)
                    basis.at(i, k) = col[i];
                ++k;
            }
        }
    return basis;
}

size_t trunc_min_generators(const TruncModule& v)
{
    Mat m = radical_span(v);
    return v.dim - m.cols();
}

std::vector<size_t> generator_coords(const TruncModule& v)
{
    const Fp& fp = v.fp();
    Mat m = radical_span(v);
    RowSpan span(v.dim);
    for (size_t j = 0; j < m.cols(); ++j) {
        std::vector<uint32_t> col(v.dim);
        for (size_t i = 0; i < v.dim; ++i)
            col[i] = m.at(i, j);
        span.insert(std::move(col), fp);
    }
    std::vector<size_t> gens;
    for (size_t j = 0; j < v.dim && span.dim() < v.dim; ++j) {
        std::vector<uint32_t> e(v.dim, 0);
        e[j] = 1;
        if (span.insert(std::move(e), fp))
            gens.push_back(j);
    }
    return gens;
}

Mat induced_on_cogens(const TruncModule& src, const TruncModule& dst, const Mat& h)
{
    const Fp& fp = src.fp();
    auto gs = generator_coords(src);
    auto gd = generator_coords(dst);
    Mat mw = radical_span(dst);
    // columns of [mW basis | unit vectors at gd] span dst; solve for the
    // unit-vector coefficients of each image
    Mat a(dst.dim, mw.cols() + gd.size());
    for (size_t j = 0; j < mw.cols(); ++j)
        for (size_t i = 0; i < dst.dim; ++i)
            a.at(i, j) = mw.at(i, j);
    for (size_t j = 0; j < gd.size(); ++j)
        a.at(gd[j], mw.cols() + j) = 1;
    Mat out(gd.size(), gs.size());
    for (size_t j = 0; j < gs.size(); ++j) {
        std::vector<uint32_t> img(dst.dim);
        for (size_t i = 0; i < dst.dim; ++i)
            img[i] = h.at(i, gs[j]);
        auto sol = solve_linear(a, img, fp);
        if (!sol)
            throw error("induced_on_cogens: inconsistent system");
        for (size_t i = 0; i < gd.size(); ++i)
            out.at(i, j) = (*sol)[mw.cols() + i];
    }
    return out;
}

std::pair<TruncModule, Mat> span_submodule(const TruncModule& v, const Mat& seed_cols)
{
    const Fp& fp = v.fp();
    RowSpan span(v.dim);
    std::vector<std::vector<uint32_t>> queue, basis_vecs;
    for (size_t j = 0; j < seed_cols.cols(); ++j) {
        std::vector<uint32_t> col(v.dim);
        for (size_t i = 0; i < v.dim; ++i)
            col[i] = seed_cols.at(i, j);
        if (span.insert(col, fp)) {
            queue.push_back(col);
            basis_vecs.push_back(col);
        }
    }
    while (!queue.empty()) {
        auto cur = std::move(queue.back());
        queue.pop_back();
        for (const auto& a : v.act) {
            auto img = a.apply(cur, fp);
            if (span.insert(img, fp)) {
                queue.push_back(img);
                basis_vecs.push_back(img);
            }
        }
    }
    Mat basis(v.dim, basis_vecs.size());
    for (size_t j = 0; j < basis_vecs.size(); ++j)
        for (size_t i = 0; i < v.dim; ++i)
            basis.at(i, j) = basis_vecs[j][i];
    TruncModule sub;
    sub.ring = v.ring;
    sub.dim = basis.cols();
    sub.deg.resize(sub.dim, 0);
    for (size_t j = 0; j < sub.dim; ++j) {
        int d = 0;
        for (size_t i = 0; i < v.dim; ++i)
            if (basis.at(i, j))
                d = std::max(d, v.deg.empty() ? 0 : v.deg[i]);
        sub.deg[j] = d;
    }
    // induced actions: solve basis * x = act * basis
    for (const auto& a : v.act) {
        Mat img = a.mul(basis, fp);
        Mat aug = basis.hcat(img);
        auto piv = rref(aug, fp);
        for (size_t c : piv)
            if (c >= basis.cols())
                throw error("span_submodule: action does not stabilize span");
        Mat x(basis.cols(), img.cols());
        for (size_t r = 0; r < piv.size(); ++r)
            for (size_t j = 0; j < img.cols(); ++j)
                x.at(piv[r], j) = aug.at(r, basis.cols() + j);
        sub.act.push_back(std::move(x));
    }
    return {std::move(sub), std::move(basis)};
}

std::pair<TruncModule, Mat> quotient_module(const TruncModule& v, const Mat& sub_cols)
{
    const Fp& fp = v.fp();
    RowSpan span(v.dim);
    for (size_t j = 0; j < sub_cols.cols(); ++j) {
        std::vector<uint32_t> col(v.dim);
        for (size_t i = 0; i < v.dim; ++i)
            col[i] = sub_cols.at(i, j);
        span.insert(std::move(col), fp);
    }
    std::vector<size_t> coords = span.free_coords();
    Mat project(coords.size(), v.dim);
    for (size_t c = 0; c < v.dim; ++c) {
        std::vector<uint32_t> e(v.dim, 0);
        e[c] = 1;
        auto res = span.residual(std::move(e), fp);
        if (res.empty())
            continue;
        for (size_t k = 0; k < coords.size(); ++k)
            project.at(k, c) = res[coords[k]];
    }
    Mat lift(v.dim, coords.size());
    for (size_t k = 0; k < coords.size(); ++k)
        lift.at(coords[k], k) = 1;
    TruncModule q;
    q.ring = v.ring;
    q.dim = coords.size();
    for (size_t k = 0; k < coords.size(); ++k)
        q.deg.push_back(v.deg.empty() ? 0 : v.deg[coords[k]]);
    for (const auto& a : v.act)
        q.act.push_back(project.mul(a.mul(lift, fp), fp));
    return {std::move(q), std::move(project)};
}

}  // namespace mflab
