#pragma once
#include "mflab/module_tools.hpp"

#include <set>

namespace mflab {

/* per-factor smoothness: linear part nonzero */
std::vector<bool> check_factor_smooth(const FactoredEquation& eq);

/* Vanishing oracle for Ext^1(S_I, S_J): true iff I and J are nested. */
bool ext_oracle_nested(const std::set<int>& I, const std::set<int>& J);

/* S^omega = direct sum of the chain modules S_{omega(1)..omega(i)}. */
struct OmegaObject {
    FactoredEquation eq;
    std::vector<int> omega;
    std::vector<std::set<int>> subsets;
    std::vector<MatrixFactorization> summands;
};

OmegaObject build_s_omega(const FactoredEquation& eq, const std::vector<int>& omega);

/* Per-equation cache of subset modules and Ext^1 pairs; the empty
 * subset maps to the zero module ([1],[f]). */
class EqWorkspace {
  public:
    EqWorkspace(FactoredEquation eq, std::vector<int> schedule, uint64_t seed);

    const FactoredEquation& eq() const { return eq_; }
    const std::vector<int>& schedule() const { return sched_; }
    std::mt19937_64& rng() { return rng_; }
    int cocycle_d0() const;

    MatrixFactorization subset_mf(const std::set<int>& I) const;
    PresentedModule& subset_module(const std::set<int>& I);
    const ExtResult& ext1_pair(const std::set<int>& I, const std::set<int>& J);
    const ExtResult& ext1_pair_cocycle(const std::set<int>& I, const std::set<int>& J);

  private:
    FactoredEquation eq_;
    std::vector<int> sched_;
    std::mt19937_64 rng_;
    std::map<std::set<int>, std::unique_ptr<PresentedModule>> mods_;
    std::map<std::pair<std::set<int>, std::set<int>>, ExtResult> per_, coc_;
};

struct PairCheck {
    std::set<int> I, J;
    ExtResult periodic, cocycle;
    bool oracle_vanish = false;
    bool engines_agree = false;
    bool oracle_agree = false;
};

struct CatalogCheck {
    std::string label;
    bool stable = false;
    bool vanish_mx = false;  // Ext^1(M, X) = 0
    bool vanish_xm = false;  // Ext^1(X, M) = 0
    Membership membership = Membership::inconclusive;
    bool consistent = false;  // (vanish_mx && vanish_xm) == member
};

struct CTReport {
    std::string f_text;
    std::vector<int> omega;
    std::vector<bool> factor_smooth;
    std::vector<PairCheck> rigidity_pairs;
    std::optional<bool> rigid;
    std::vector<CatalogCheck> catalog;
    std::string overall;  // cluster-tilting-on-catalog | refuted | inconclusive
    std::string refutation;
};

/* Ext^1 of every ordered summand pair via both engines plus the
 * nestedness oracle. rigid is unset when some pair is unstable. */
std::vector<PairCheck> rigidity_check(EqWorkspace& ws, const OmegaObject& obj,
                                      std::optional<bool>& rigid);

/* One catalog module against M = sum of the omega summands. */
CatalogCheck catalog_entry_check(EqWorkspace& ws, const OmegaObject& obj,
                                 const std::set<int>& subset);
CatalogCheck catalog_entry_check_module(EqWorkspace& ws, const OmegaObject& obj,
                                        const std::string& label, PresentedModule& x,
                                        const MatrixFactorization& x_mf);

/* The syzygy witness for a factor inside m^2: a non-free MCM module
 * over S/(f_i) lifted to R, Ext^1-orthogonal to every S_I yet outside
 * add(S^omega). */
PresentedModule witness_non_ct(const FactoredEquation& eq, int bad_index);

/* Full report: smoothness, rigidity, S_I catalog closure, and the
 * witness refutation when a non-smooth factor exists. */
CTReport ct_check(EqWorkspace& ws, const std::vector<int>& omega);

}  // namespace mflab
