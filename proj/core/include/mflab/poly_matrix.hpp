#pragma once
#include "mflab/linalg.hpp"
#include "mflab/poly.hpp"

namespace mflab {

/* Dense matrix of polynomials over one ring context. */
class PolyMat {
  public:
    PolyMat() = default;
    PolyMat(RingCtxPtr ctx, size_t rows, size_t cols);

    const RingCtxPtr& ctx() const { return ctx_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Poly& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    const Poly& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    static PolyMat identity(const RingCtxPtr& ctx, size_t n);
    static PolyMat scalar(const RingCtxPtr& ctx, size_t n, const Poly& d);

    PolyMat mul(const PolyMat& o) const;
    PolyMat add(const PolyMat& o) const;
    PolyMat sub(const PolyMat& o) const;
    PolyMat neg() const;
    PolyMat scaled(const Poly& c) const;
    PolyMat transpose() const;
    /* block diagonal [this 0; 0 o] */
    PolyMat dsum(const PolyMat& o) const;
    /* [this o] and [this; o] */
    PolyMat hcat(const PolyMat& o) const;
    PolyMat vcat(const PolyMat& o) const;
    bool is_zero() const;
    bool operator==(const PolyMat& o) const;
    int max_entry_degree() const;

    Mat eval(const std::vector<uint32_t>& point) const;
    /* constant terms of all entries */
    Mat constant_part() const;
    PolyMat lifted(const RingCtxPtr& bigger) const;

  private:
    void check_same(const PolyMat& o) const;
    RingCtxPtr ctx_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<Poly> a_;
};

/* Kronecker product; used for tensor-product presentations. */
PolyMat kron(const PolyMat& a, const PolyMat& b);

}  // namespace mflab
