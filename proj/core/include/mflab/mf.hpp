#pragma once
#include "mflab/poly_matrix.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <set>

namespace mflab {

/* A pair of square polynomial matrices (phi, psi) with
 * phi*psi = psi*phi = f*I. The cokernel of phi is the MCM module
 * the factorization presents. */
struct MatrixFactorization {
    RingCtxPtr ctx;
    Poly f;
    PolyMat phi;
    PolyMat psi;

    size_t size() const { return phi.rows(); }
};

struct MfVerdict {
    bool valid = true;
    /* on failure: which product, entry position and the offending value */
    std::string detail;
};

MfVerdict validate_mf(const MatrixFactorization& m);
void require_valid(const MatrixFactorization& m);

/* (psi, phi): presents the first syzygy of coker(phi); an involution. */
MatrixFactorization syzygy(const MatrixFactorization& m);
/* (phi^T, psi^T): presents the dual module; an involution. */
MatrixFactorization dual(const MatrixFactorization& m);
MatrixFactorization direct_sum(const MatrixFactorization& a, const MatrixFactorization& b);
/* (f*I_1, I_1): carrier for the free module R */
MatrixFactorization trivial_mf(const RingCtxPtr& ctx, const Poly& f);
/* ([1], [f]): carrier for the zero module */
MatrixFactorization zero_mf(const RingCtxPtr& ctx, const Poly& f);

/* Block factorization of f + u*v over the ring extended by u, v:
 * ([u, psi; phi, -v], [v, psi; phi, -u]). Size doubles. */
MatrixFactorization knoerrer(const MatrixFactorization& m, const std::string& u,
                             const std::string& v);

/* f = f_1 ... f_n, each factor with zero constant term, pairwise
 * non-proportional. */
struct FactoredEquation {
    RingCtxPtr ctx;
    std::vector<Poly> factors;

    Poly product() const;
    Poly subset_product(const std::set<int>& I) const;  // 1-based indices
    std::set<int> complement(const std::set<int>& I) const;
    size_t n() const { return factors.size(); }
};

FactoredEquation make_equation(RingCtxPtr ctx, std::vector<Poly> factors);

struct SubsetModuleSpec {
    FactoredEquation eq;
    std::set<int> I;  // 1-based
};

/* The 1x1 factorization (f_I, f_{I^c}); I = full set gives the trivial
 * factorization carrying R. Empty I is rejected. */
MatrixFactorization s_ideal(const SubsetModuleSpec& spec);

/* Block upper-triangular extension ([phi_n, alpha; 0, phi_m], [psi_n, beta; 0, psi_m]).
 * Requires the cocycle identities phi_n*beta + alpha*psi_m = 0 and
 * psi_n*alpha + beta*phi_m = 0; represents a class in Ext^1(coker phi_m, coker phi_n). */
MatrixFactorization extension_from_cocycle(const MatrixFactorization& n,
                                           const MatrixFactorization& m, const PolyMat& alpha,
                                           const PolyMat& beta);

/* Generic ranks of coker(phi) on each curve component V(f_i), estimated by
 * evaluating phi at sampled smooth F_p-points, majority vote. */
std::vector<int> rank_vector(const MatrixFactorization& m, const FactoredEquation& eq,
                             int samples, std::mt19937_64& rng);

/* A random point of V(factor) smooth on V(f): all other factors and the
 * gradient of `factor` nonvanishing. */
std::optional<std::vector<uint32_t>> sample_component_point(const FactoredEquation& eq,
                                                            size_t factor_idx,
                                                            std::mt19937_64& rng);

/* Conjugate by random elementary row/column operations: a valid
 * factorization of the same f presenting an isomorphic module. */
MatrixFactorization random_equivalent(const MatrixFactorization& m, int ops,
                                      std::mt19937_64& rng);

}  // namespace mflab
