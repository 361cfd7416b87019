#pragma once
#include "mflab/module_tools.hpp"

namespace mflab {

/* End(M) at one truncation level: a basis of module endomorphisms of
 * M_D with composition structure constants over F_p. */
struct EndRing {
    int D = 0;
    std::vector<Mat> basis;                                  // maps M_D -> M_D
    std::vector<uint32_t> identity;                          // coordinates of id
    std::vector<std::vector<std::vector<uint32_t>>> table;   // table[i][j] = coords of b_i * b_j
    bool closed = true;  // every composite solved inside the basis span

    size_t dim() const { return basis.size(); }
};

EndRing end_ring(const PresentedModule& m, int D);

/* One step of the approximation resolution: a covering M^{cover} -> N_i
 * built from minimal generators of the truncated Hom(M, N_i), with the
 * certificates that define the construction. */
struct ApproxStep {
    size_t cover = 0;            // number of M copies
    size_t hom_dim = 0;          // dim Hom(M, N_i) at the working level
    bool surjective = false;     // M^cover -> N_i onto at the level
    bool hom_exact = false;      // Hom(M, M^cover) -> Hom(M, N_i) onto
    Membership in_add = Membership::inconclusive;  // N_i against add(M)
    std::vector<std::pair<int, size_t>> kernel_dims;
};

struct ApproxResolution {
    std::vector<ApproxStep> steps;
    std::string status;          // finite | depth-exhausted | inconclusive
    std::optional<int> pd;       // first index with N_i in add(M)
};

/* Resolve N by add(M)-covers: generators of Hom(M, N_i) (which contain
 * generators of Hom(R, N_i) because R is a summand of M and minimal
 * generators of a Hom direct sum restrict to each block), surjection
 * M^{n_i} -> N_i, kernel as the next N. Everything happens at the top
 * schedule level; kernels keep only their degree window to shed
 * truncation artifacts. */
ApproxResolution construction_resolution(const PresentedModule& m, const PresentedModule& n,
                                         int depth, const std::vector<int>& schedule,
                                         std::mt19937_64& rng,
                                         const FactoredEquation* eq = nullptr);

struct PdResult {
    std::optional<int> pd;  // unset means "> depth" (or inconclusive)
    int depth = 0;
    std::string note;
};

PdResult pd_probe(const PresentedModule& m, const PresentedModule& n, int depth,
                  const std::vector<int>& schedule, std::mt19937_64& rng,
                  const FactoredEquation* eq = nullptr);

/* dim Ext^1(M, N) = dim Ext^1(N*, M*): both sides by the periodic
 * engine, pass only when both stabilize and agree. */
struct DualityCheck {
    ExtResult lhs, rhs;
    std::string verdict;  // pass | fail | inconclusive
};

DualityCheck ext_duality_check(const MatrixFactorization& m, const MatrixFactorization& n,
                               const std::vector<int>& schedule);

/* Membership of X in M^{perp_n}: Ext^i(M, X) = 0 for 1 <= i <= n. */
struct PerpEntry {
    std::string label;
    std::vector<ExtResult> exts;
    std::string verdict;  // in-perp | out | inconclusive
};

std::vector<PerpEntry> perp_catalog(
    const MatrixFactorization& m,
    const std::vector<std::pair<std::string, MatrixFactorization>>& catalog, int n,
    const std::vector<int>& schedule);

}  // namespace mflab
