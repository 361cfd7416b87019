#pragma once
#include "mflab/modules.hpp"

namespace mflab {

/* Dimension of one Ext/Tor/Hom group, sampled over a truncation
 * schedule. stable_dim is set only when the tail of the schedule
 * agrees (the last three values coincide). */
struct ExtResult {
    std::string kind;  // "ext", "tor", "hom"
    int i = 0;
    std::vector<std::pair<int, size_t>> dims;  // (D, dim)
    std::optional<size_t> stable_dim;

    bool stable() const { return stable_dim.has_value(); }
};

/* Truncation orders used by default: heavier rings get a lighter
 * schedule. */
std::vector<int> default_schedule(const RingCtxPtr& ctx);
/* same, scaled by the largest grading weight of f so that windows for
 * quasi-homogeneous equations stay roomy */
std::vector<int> default_schedule(const RingCtxPtr& ctx, const Poly& f);

void mark_stable(ExtResult& r);

/* dim_k Ext^i_R(coker phi, N) via the 2-periodic resolution
 * ... -> R^n -psi-> R^n -phi-> R^n -> M -> 0, evaluated at each
 * truncation level of N. i >= 0. */
ExtResult ext_periodic(const MatrixFactorization& m, const PresentedModule& n, int i,
                       const std::vector<int>& schedule);

/* dim_k Tor_i^R(coker phi, N), same resolution tensored with N. */
ExtResult tor_periodic(const MatrixFactorization& m, const PresentedModule& n, int i,
                       const std::vector<int>& schedule);

/* dim_k Hom_R(coker phi, N) at each level. */
ExtResult hom_dim(const MatrixFactorization& m, const PresentedModule& n,
                  const std::vector<int>& schedule);

/* Independent engine for Ext^1(coker phi_m, coker phi_n): polynomial
 * cocycle pairs (alpha, beta) with
 *   phi_n * beta + alpha * psi_m = 0,  psi_n * alpha + beta * phi_m = 0,
 * entries of degree <= d, modulo the coboundaries
 *   (phi_n c + h phi_m, -(psi_n h + c psi_m)),
 * compared inside the space of pairs of degree <= d + max entry degree.
 * The reported dims are indexed by d over d0, d0+1, d0+2. */
ExtResult ext1_cocycle(const MatrixFactorization& n, const MatrixFactorization& m, int d0);

/* A nonzero cocycle pair witnessing Ext^1 != 0, when one exists at
 * degree bound d. */
std::optional<std::pair<PolyMat, PolyMat>> ext1_witness(const MatrixFactorization& n,
                                                        const MatrixFactorization& m, int d);

}  // namespace mflab
