#pragma once
#include "mflab/mf.hpp"

#include <map>

namespace mflab {

/* Finite-dimensional model of S/((f) + I_D), where I_D is spanned by
 * the monomials of weighted degree >= D under the grading that makes f
 * quasi-homogeneous (plain degree for homogeneous f): a monomial basis
 * with normal forms and multiplication operators. All downstream
 * Hom/Ext/Tor computations happen in these truncations. */
class TruncationBasis {
  public:
    TruncationBasis(RingCtxPtr ctx, Poly f, int D, size_t memory_cap_mb = 512);

    const RingCtxPtr& ctx() const { return ctx_; }
    const Poly& f() const { return f_; }
    int D() const { return D_; }
    size_t dim() const { return basis_.size(); }
    const std::vector<Expo>& monomials() const { return basis_; }
    /* weighted degree of each basis monomial */
    const std::vector<int>& degrees() const { return degs_; }
    /* grading weights of f (all ones for homogeneous f) */
    const std::vector<int>& weights() const { return weights_; }
    int wdeg(const Expo& e) const { return weighted_degree(e, weights_); }

    /* coordinates of a polynomial modulo (f) + m^D */
    std::vector<uint32_t> reduce(const Poly& p) const;
    /* multiplication operator of one variable on basis coordinates */
    const Mat& var_action(size_t k) const { return var_act_[k]; }
    /* multiplication operator of an arbitrary polynomial */
    Mat mult_op(const Poly& p) const;
    /* mult_op(monomial b) applied to a coordinate vector */
    std::vector<uint32_t> mult_monomial(const Expo& b, std::vector<uint32_t> v) const;

  private:
    RingCtxPtr ctx_;
    Poly f_;
    int D_;
    std::vector<int> weights_;
    std::vector<Expo> all_;  // all monomials of weighted degree < D
    std::map<Expo, size_t, GrlexDesc> idx_;  // index into all_
    std::vector<Expo> basis_;
    std::vector<int> degs_;
    Mat nf_;  // dim x |all_|, column j = normal form of all_[j]
    std::vector<Mat> var_act_;
};

using TruncPtr = std::shared_ptr<const TruncationBasis>;

/* Shared, memoized truncation bases keyed by (ring, f, D). */
TruncPtr get_truncation(const RingCtxPtr& ctx, const Poly& f, int D);

/* A finite-dimensional module over one truncation: a coordinate space
 * with one action matrix per ring variable. Quotients, kernels and
 * direct summands all land here. */
struct TruncModule {
    TruncPtr ring;
    size_t dim = 0;
    std::vector<Mat> act;
    std::vector<int> deg;  // filtration degree estimate per basis vector

    const Fp& fp() const { return ring->ctx()->fp(); }
    Mat mult_op(const Poly& p) const;
    Mat mult_monomial_op(const Expo& b) const;
    /* mult_monomial_op(b) applied to one coordinate vector, without
     * forming the operator matrix */
    std::vector<uint32_t> apply_monomial(const Expo& b, std::vector<uint32_t> v) const;
};

/* span of the columns of all action matrices, i.e. m * V */
Mat radical_span(const TruncModule& v);
/* dim V / mV */
size_t trunc_min_generators(const TruncModule& v);
/* coordinate indices of unit vectors lifting a basis of V/mV */
std::vector<size_t> generator_coords(const TruncModule& v);
/* matrix of the induced map on V/mV for an endomorphism given on V,
 * or between two modules; rows/cols indexed by generator_coords */
Mat induced_on_cogens(const TruncModule& src, const TruncModule& dst, const Mat& h);

/* Submodule spanned by the given column vectors together with their
 * closure under the variable actions; returns the summand as a module
 * plus its basis (columns in the ambient coordinates). */
std::pair<TruncModule, Mat> span_submodule(const TruncModule& v, const Mat& seed_cols);

/* Quotient of V by the span of the given columns (must be closed under
 * the actions); returns the quotient plus the projection matrix. */
std::pair<TruncModule, Mat> quotient_module(const TruncModule& v, const Mat& sub_cols);

}  // namespace mflab
