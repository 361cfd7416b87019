#pragma once
#include "mflab/truncation.hpp"

namespace mflab {

/* One truncation level of a presented module: the quotient
 * R_D^rows / im(presentation) in explicit coordinates. */
struct ModuleLevel {
    TruncPtr ring;
    TruncModule view;
    Mat project;  // view.dim x (rows * ring dim)
    Mat lift;     // (rows * ring dim) x view.dim, project * lift = I
};

/* A finitely presented module over R = S/(f): the cokernel of a
 * polynomial matrix R^cols -> R^rows. Truncation levels are computed
 * lazily and cached per D. */
class PresentedModule {
  public:
    PresentedModule(RingCtxPtr ctx, Poly f, PolyMat presentation);

    static PresentedModule from_mf(const MatrixFactorization& m);

    const RingCtxPtr& ctx() const { return ctx_; }
    const Poly& f() const { return f_; }
    const PolyMat& presentation() const { return pres_; }
    const std::optional<MatrixFactorization>& mf() const { return mf_; }
    size_t rows() const { return pres_.rows(); }

    /* exact by Nakayama: rows - rank of the constant part */
    size_t min_generators() const;

    const ModuleLevel& level(int D) const;

  private:
    RingCtxPtr ctx_;
    Poly f_;
    PolyMat pres_;
    std::optional<MatrixFactorization> mf_;
    mutable std::map<int, ModuleLevel> levels_;
};

/* Operator on N^rows(d) induced by precomposition with d: send w to
 * (sum_i rho(d_ij) w_i)_j. Computes Hom-side differentials. */
Mat contra_op(const PolyMat& d, const TruncModule& n);
/* Operator induced by d tensor N: send w to (sum_j rho(d_ij) w_j)_i. */
Mat cov_op(const PolyMat& d, const TruncModule& n);

/* Basis of Hom(coker d, N) as column vectors in N^rows(d):
 * the generator images satisfying all relations of d. */
Mat hom_space(const PolyMat& d, const TruncModule& n);

}  // namespace mflab
