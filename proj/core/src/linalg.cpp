#include "mflab/linalg.hpp"

#include <algorithm>

namespace mflab {

Mat Mat::identity(size_t n)
{
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

Mat Mat::mul(const Mat& o, const Fp& fp) const
{
    if (cols_ != o.rows_)
        throw error("matrix shape mismatch in multiplication");
    Mat r(rows_, o.cols_);
    const uint64_t p2 = static_cast<uint64_t>(fp.p) * fp.p;
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t k = 0; k < cols_; ++k) {
            uint64_t aik = at(i, k);
            if (!aik)
                continue;
            const uint32_t* orow = o.row(k);
            uint32_t* rrow = r.row(i);
            for (size_t j = 0; j < o.cols_; ++j) {
                uint64_t v = static_cast<uint64_t>(rrow[j]) + aik * orow[j];
                rrow[j] = static_cast<uint32_t>(v >= p2 ? v % fp.p : v % fp.p);
            }
        }
    }
    return r;
}

Mat Mat::add(const Mat& o, const Fp& fp) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw error("matrix shape mismatch in addition");
    Mat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = fp.add(a_[i], o.a_[i]);
    return r;
}

Mat Mat::sub(const Mat& o, const Fp& fp) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw error("matrix shape mismatch in subtraction");
    Mat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = fp.sub(a_[i], o.a_[i]);
    return r;
}

Mat Mat::scaled(uint32_t c, const Fp& fp) const
{
    Mat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = fp.mul(a_[i], c);
    return r;
}

Mat Mat::transpose() const
{
    Mat r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            r.at(j, i) = at(i, j);
    return r;
}

std::vector<uint32_t> Mat::apply(const std::vector<uint32_t>& v, const Fp& fp) const
{
    if (v.size() != cols_)
        throw error("matrix/vector shape mismatch");
    std::vector<uint32_t> r(rows_, 0);
    for (size_t i = 0; i < rows_; ++i) {
        uint64_t acc = 0;
        const uint32_t* ar = row(i);
        for (size_t j = 0; j < cols_; ++j) {
            acc += static_cast<uint64_t>(ar[j]) * v[j];
            if (acc >> 62)
                acc %= fp.p;
        }
        r[i] = static_cast<uint32_t>(acc % fp.p);
    }
    return r;
}

Mat Mat::select_cols(const std::vector<size_t>& idx) const
{
    Mat r(rows_, idx.size());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < idx.size(); ++j)
            r.at(i, j) = at(i, idx[j]);
    return r;
}

Mat Mat::select_rows(const std::vector<size_t>& idx) const
{
    Mat r(idx.size(), cols_);
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < cols_; ++j)
            r.at(i, j) = at(idx[i], j);
    return r;
}

Mat Mat::hcat(const Mat& o) const
{
    if (rows_ != o.rows_)
        throw error("hcat row mismatch");
    Mat r(rows_, cols_ + o.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        std::copy(row(i), row(i) + cols_, r.row(i));
        std::copy(o.row(i), o.row(i) + o.cols_, r.row(i) + cols_);
    }
    return r;
}

Mat Mat::vcat(const Mat& o) const
{
    if (cols_ != o.cols_)
        throw error("vcat column mismatch");
    Mat r(rows_ + o.rows_, cols_);
    std::copy(a_.begin(), a_.end(), r.a_.begin());
    std::copy(o.a_.begin(), o.a_.end(), r.a_.begin() + a_.size());
    return r;
}

bool Mat::is_zero() const
{
    return std::all_of(a_.begin(), a_.end(), [](uint32_t v) { return v == 0; });
}

std::vector<size_t> rref(Mat& m, const Fp& fp)
{
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t sel = r;
        while (sel < m.rows() && m.at(sel, c) == 0)
            ++sel;
        if (sel == m.rows())
            continue;
        if (sel != r)
            for (size_t j = 0; j < m.cols(); ++j)
                std::swap(m.at(sel, j), m.at(r, j));
        uint32_t inv = fp.inv(m.at(r, c));
        for (size_t j = c; j < m.cols(); ++j)
            m.at(r, j) = fp.mul(m.at(r, j), inv);
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r)
                continue;
            uint32_t f = m.at(i, c);
            if (!f)
                continue;
            uint64_t fneg = fp.p - f;
            uint32_t* ri = m.row(i);
            const uint32_t* rr = m.row(r);
            for (size_t j = c; j < m.cols(); ++j)
                ri[j] = static_cast<uint32_t>((ri[j] + fneg * rr[j]) % fp.p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

size_t rank(Mat m, const Fp& fp)
{
    return rref(m, fp).size();
}

Mat nullspace(const Mat& a, const Fp& fp)
{
    Mat m = a;
    auto pivots = rref(m, fp);
    std::vector<bool> is_pivot(a.cols(), false);
    for (size_t c : pivots)
        is_pivot[c] = true;
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < a.cols(); ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);
    Mat basis(a.cols(), free_cols.size());
    for (size_t k = 0; k < free_cols.size(); ++k) {
        size_t fc = free_cols[k];
        basis.at(fc, k) = 1;
        for (size_t i = 0; i < pivots.size(); ++i)
            basis.at(pivots[i], k) = fp.neg(m.at(i, fc));
    }
    return basis;
}

std::optional<std::vector<uint32_t>> solve_linear(const Mat& a, const std::vector<uint32_t>& b,
                                                  const Fp& fp)
{
    if (b.size() != a.rows())
        throw error("matrix/vector shape mismatch in solve");
    Mat aug(a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        std::copy(a.row(i), a.row(i) + a.cols(), aug.row(i));
        aug.at(i, a.cols()) = b[i];
    }
    auto pivots = rref(aug, fp);
    if (!pivots.empty() && pivots.back() == a.cols())
        return std::nullopt;
    std::vector<uint32_t> x(a.cols(), 0);
    for (size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = aug.at(i, a.cols());
    return x;
}

std::optional<Mat> inverse(const Mat& a, const Fp& fp)
{
    if (a.rows() != a.cols())
        throw error("inverse of non-square matrix");
    Mat aug = a.hcat(Mat::identity(a.rows()));
    auto pivots = rref(aug, fp);
    if (pivots.size() != a.rows() || (!pivots.empty() && pivots.back() >= a.rows()))
        return std::nullopt;
    std::vector<size_t> idx(a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        idx[i] = a.rows() + i;
    return aug.select_cols(idx);
}

std::vector<uint32_t> charpoly(Mat a, const Fp& fp)
{
    size_t n = a.rows();
    if (a.cols() != n)
        throw error("charpoly of non-square matrix");
    // Hessenberg reduction
    for (size_t c = 0; c + 2 < n; ++c) {
        size_t piv = c + 1;
        while (piv < n && a.at(piv, c) == 0)
            ++piv;
        if (piv == n)
            continue;
        if (piv != c + 1) {
            for (size_t j = 0; j < n; ++j)
                std::swap(a.at(piv, j), a.at(c + 1, j));
            for (size_t i = 0; i < n; ++i)
                std::swap(a.at(i, piv), a.at(i, c + 1));
        }
        uint32_t inv = fp.inv(a.at(c + 1, c));
        for (size_t i = c + 2; i < n; ++i) {
            uint32_t f = fp.mul(a.at(i, c), inv);
            if (!f)
                continue;
            for (size_t j = 0; j < n; ++j)
                a.at(i, j) = fp.sub(a.at(i, j), fp.mul(f, a.at(c + 1, j)));
            for (size_t j = 0; j < n; ++j)
                a.at(j, c + 1) = fp.add(a.at(j, c + 1), fp.mul(f, a.at(j, i)));
        }
    }
    // char polys of leading principal Hessenberg blocks, ascending
    std::vector<std::vector<uint32_t>> cp(n + 1);
    cp[0] = {1};
    for (size_t m = 1; m <= n; ++m) {
        // p_m(x) = (x - a[m-1][m-1]) p_{m-1}(x) - sum over subdiagonal products
        std::vector<uint32_t> pm(m + 1, 0);
        const auto& pm1 = cp[m - 1];
        for (size_t i = 0; i < pm1.size(); ++i) {
            pm[i + 1] = fp.add(pm[i + 1], pm1[i]);
            pm[i] = fp.sub(pm[i], fp.mul(a.at(m - 1, m - 1), pm1[i]));
        }
        uint32_t prod = 1;
        for (size_t k = 1; k < m; ++k) {
            prod = fp.mul(prod, a.at(m - k, m - k - 1));
            if (!prod)
                break;
            uint32_t coeff = fp.mul(prod, a.at(m - k - 1, m - 1));
            if (!coeff)
                continue;
            const auto& q = cp[m - k - 1];
            for (size_t i = 0; i < q.size(); ++i)
                pm[i] = fp.sub(pm[i], fp.mul(coeff, q[i]));
        }
        cp[m] = std::move(pm);
    }
    return cp[n];
}

std::vector<uint32_t> RowSpan::residual(std::vector<uint32_t> v, const Fp& fp) const
{
    if (v.size() != width_)
        throw error("RowSpan width mismatch");
    for (size_t i = 0; i < rows_.size(); ++i) {
        uint32_t c = v[lead_[i]];
        if (!c)
            continue;
        uint64_t cneg = fp.p - c;
        const auto& r = rows_[i];
        for (size_t j = lead_[i]; j < width_; ++j)
            v[j] = static_cast<uint32_t>((v[j] + cneg * r[j]) % fp.p);
    }
    if (std::all_of(v.begin(), v.end(), [](uint32_t x) { return x == 0; }))
        return {};
    return v;
}

std::vector<size_t> RowSpan::free_coords() const
{
    std::vector<bool> pivot(width_, false);
    for (size_t l : lead_)
        pivot[l] = true;
    std::vector<size_t> out;
    for (size_t c = 0; c < width_; ++c)
        if (!pivot[c])
            out.push_back(c);
    return out;
}

bool RowSpan::insert(std::vector<uint32_t> v, const Fp& fp)
{
    auto res = residual(std::move(v), fp);
    if (res.empty())
        return false;
    size_t lead = 0;
    while (res[lead] == 0)
        ++lead;
    uint32_t inv = fp.inv(res[lead]);
    for (size_t j = lead; j < width_; ++j)
        res[j] = fp.mul(res[j], inv);
    // keep existing rows reduced against the new one
    for (size_t i = 0; i < rows_.size(); ++i) {
        uint32_t c = rows_[i][lead];
        if (!c)
            continue;
        uint64_t cneg = fp.p - c;
        for (size_t j = lead; j < width_; ++j)
            rows_[i][j] = static_cast<uint32_t>((rows_[i][j] + cneg * res[j]) % fp.p);
    }
    rows_.push_back(std::move(res));
    lead_.push_back(lead);
    return true;
}

}  // namespace mflab
