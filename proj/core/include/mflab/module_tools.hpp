#pragma once
#include "mflab/probes.hpp"

namespace mflab {

struct Fingerprint {
    size_t min_gens = 0;
    std::vector<std::pair<int, size_t>> dims;  // truncated dims per D
    std::vector<int> ranks;                    // per-component generic ranks (may be empty)
};

/* rank_vector computed from an arbitrary presentation: at a sampled
 * smooth point of each component, rank = rows - rank(pres(pt)). */
std::vector<int> rank_vector_presented(const PresentedModule& m, const FactoredEquation& eq,
                                       int samples, std::mt19937_64& rng);

Fingerprint fingerprint(const PresentedModule& m, const std::vector<int>& schedule,
                        const FactoredEquation* eq, std::mt19937_64& rng);

bool fingerprints_match(const Fingerprint& a, const Fingerprint& b, std::string* separator);

/* Full linear map N_D <- M_D induced by generator images (a hom_space
 * column: one vector of N-view coordinates per generator of M). */
Mat level_map_from_images(const PresentedModule& m, const PresentedModule& n, int D,
                          const std::vector<uint32_t>& gen_images);

/* Level map induced by a polynomial matrix h with rows(n) x rows(m). */
Mat level_map_from_polymat(const PresentedModule& m, const PresentedModule& n, int D,
                           const PolyMat& h);

struct IsoWitness {
    std::string verdict;  // isomorphic | not-isomorphic | inconclusive
    std::string evidence;
    Fingerprint fp_m, fp_n;
    std::optional<std::pair<Mat, Mat>> maps;  // forward / backward at the top level
};

IsoWitness iso_test(const PresentedModule& m, const PresentedModule& n, int trials,
                    const std::vector<int>& schedule, std::mt19937_64& rng,
                    const FactoredEquation* eq = nullptr);

/* Truncated module turned back into a presented one: generators from
 * V/mV, relations from the kernel of the evaluation map R_D^g -> V.
 * Faithful at levels <= the D of the underlying truncation. */
PresentedModule presented_from_trunc(const TruncModule& v);

struct DecompResult {
    std::string verdict;  // indecomposable-likely | decomposes | inconclusive
    std::vector<PresentedModule> factors;
};

DecompResult indecomposable_probe(const PresentedModule& m, int trials,
                                  const std::vector<int>& schedule, std::mt19937_64& rng);

/* Recursive leaf decomposition with a depth cap of 6. */
std::optional<std::vector<PresentedModule>> full_decomposition(const PresentedModule& m,
                                                               int trials,
                                                               const std::vector<int>& schedule,
                                                               std::mt19937_64& rng,
                                                               int depth = 0);

enum class Membership { member, not_member, inconclusive };

std::string to_string(Membership v);

Membership add_membership(const PresentedModule& x, const PresentedModule& m, int trials,
                          const std::vector<int>& schedule, std::mt19937_64& rng,
                          const FactoredEquation* eq = nullptr);

/* Same, against an already-decomposed list of indecomposable factors
 * of M (reusable across many X). */
Membership add_membership_factors(const PresentedModule& x,
                                  const std::vector<PresentedModule>& m_factors, int trials,
                                  const std::vector<int>& schedule, std::mt19937_64& rng,
                                  const FactoredEquation* eq = nullptr);

struct PushforwardResult {
    size_t lambda = 0;
    PolyMat embedding;  // lambda x rows(M), selected rows of psi
    PresentedModule m1;
    bool exact = false;                          // windowed injectivity at every level
    std::vector<std::pair<int, size_t>> kernel_trace;
    int depth_m = 0, depth_m1 = 0;
};

/* 0 -> M -> R^lambda -> M1 -> 0 via the dual presentation; needs >= 3
 * variables and a torsion-free M backed by a matrix factorization. */
PushforwardResult pushforward(const PresentedModule& m, const std::vector<int>& schedule,
                              std::mt19937_64& rng);

}  // namespace mflab
