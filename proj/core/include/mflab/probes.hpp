#pragma once
#include "mflab/ext.hpp"

#include <random>

namespace mflab {

enum class TorsionVerdict { torsion_free, has_torsion, unstable };

std::string to_string(TorsionVerdict v);

struct TorsionReport {
    TorsionVerdict verdict = TorsionVerdict::unstable;
    /* per sampled form: (D, windowed kernel dim) trace */
    std::vector<std::vector<std::pair<int, size_t>>> traces;
};

/* Generic-linear-form torsion detector: the kernel of a generic t on a
 * torsion-free module lives entirely at the truncation boundary, so a
 * nonzero kernel inside the degree window <= D-2 signals torsion.
 * Three independent forms must agree. */
TorsionReport torsion_probe(const PresentedModule& m, const std::vector<int>& schedule,
                            std::mt19937_64& rng);

/* M tensor N^* presented by [phi_M x I | I x phi_N^T]. */
PresentedModule tensor_with_dual(const MatrixFactorization& m, const MatrixFactorization& n);

/* Lemma-style MCM test: torsion probe on M tensor N^*. */
TorsionReport tensor_mcm_check(const MatrixFactorization& m, const MatrixFactorization& n,
                               const std::vector<int>& schedule, std::mt19937_64& rng);

/* Depth at the maximal ideal, probed by a greedy regular sequence of
 * random linear forms at the largest schedule level. */
int depth_probe(const PresentedModule& m, const std::vector<int>& schedule, std::mt19937_64& rng);

}  // namespace mflab
