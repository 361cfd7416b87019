#include "mflab/poly_matrix.hpp"

#include <algorithm>

namespace mflab {

PolyMat kron(const PolyMat& a, const PolyMat& b)
{
    PolyMat out(a.ctx(), a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            for (size_t k = 0; k < b.rows(); ++k)
                for (size_t l = 0; l < b.cols(); ++l)
                    out.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
    return out;
}

PolyMat::PolyMat(RingCtxPtr ctx, size_t rows, size_t cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), a_(rows * cols, Poly(ctx_))
{
}

PolyMat PolyMat::identity(const RingCtxPtr& ctx, size_t n)
{
    return scalar(ctx, n, Poly(ctx, 1));
}

PolyMat PolyMat::scalar(const RingCtxPtr& ctx, size_t n, const Poly& d)
{
    PolyMat m(ctx, n, n);
    for (size_t i = 0; i < n; ++i)
        m.at(i, i) = d;
    return m;
}

void PolyMat::check_same(const PolyMat& o) const
{
    if (!ctx_ || !o.ctx_ || !(*ctx_ == *o.ctx_))
        throw error("ring context mismatch between polynomial matrices");
}

PolyMat PolyMat::mul(const PolyMat& o) const
{
    check_same(o);
    if (cols_ != o.rows_)
        throw error("polynomial matrix shape mismatch in multiplication");
    PolyMat r(ctx_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Poly& p = at(i, k);
            if (p.is_zero())
                continue;
            for (size_t j = 0; j < o.cols_; ++j)
                if (!o.at(k, j).is_zero())
                    r.at(i, j) = r.at(i, j) + p * o.at(k, j);
        }
    return r;
}

PolyMat PolyMat::add(const PolyMat& o) const
{
    check_same(o);
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw error("polynomial matrix shape mismatch in addition");
    PolyMat r(ctx_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = a_[i] + o.a_[i];
    return r;
}

PolyMat PolyMat::sub(const PolyMat& o) const
{
    return add(o.neg());
}

PolyMat PolyMat::neg() const
{
    PolyMat r(ctx_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = -a_[i];
    return r;
}

PolyMat PolyMat::scaled(const Poly& c) const
{
    PolyMat r(ctx_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = a_[i] * c;
    return r;
}

PolyMat PolyMat::transpose() const
{
    PolyMat r(ctx_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            r.at(j, i) = at(i, j);
    return r;
}

PolyMat PolyMat::dsum(const PolyMat& o) const
{
    check_same(o);
    PolyMat r(ctx_, rows_ + o.rows_, cols_ + o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            r.at(i, j) = at(i, j);
    for (size_t i = 0; i < o.rows_; ++i)
        for (size_t j = 0; j < o.cols_; ++j)
            r.at(rows_ + i, cols_ + j) = o.at(i, j);
    return r;
}

PolyMat PolyMat::hcat(const PolyMat& o) const
{
    check_same(o);
    if (rows_ != o.rows_)
        throw error("hcat row mismatch");
    PolyMat r(ctx_, rows_, cols_ + o.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j)
            r.at(i, j) = at(i, j);
        for (size_t j = 0; j < o.cols_; ++j)
            r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

PolyMat PolyMat::vcat(const PolyMat& o) const
{
    check_same(o);
    if (cols_ != o.cols_)
        throw error("vcat column mismatch");
    PolyMat r(ctx_, rows_ + o.rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            r.at(i, j) = at(i, j);
    for (size_t i = 0; i < o.rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            r.at(rows_ + i, j) = o.at(i, j);
    return r;
}

bool PolyMat::is_zero() const
{
    for (const auto& p : a_)
        if (!p.is_zero())
            return false;
    return true;
}

bool PolyMat::operator==(const PolyMat& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        return false;
    for (size_t i = 0; i < a_.size(); ++i)
        if (a_[i] != o.a_[i])
            return false;
    return true;
}

int PolyMat::max_entry_degree() const
{
    int d = -1;
    for (const auto& p : a_)
        d = std::max(d, p.degree());
    return d;
}

Mat PolyMat::eval(const std::vector<uint32_t>& point) const
{
    Mat r(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            r.at(i, j) = at(i, j).eval(point);
    return r;
}

Mat PolyMat::constant_part() const
{
    Mat r(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            r.at(i, j) = at(i, j).constant_term();
    return r;
}

PolyMat PolyMat::lifted(const RingCtxPtr& bigger) const
{
    PolyMat r(bigger, rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            r.at(i, j) = at(i, j).lifted(bigger);
    return r;
}

}  // namespace mflab
