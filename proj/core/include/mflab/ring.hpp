#pragma once
#include "mflab/field.hpp"

#include <memory>
#include <string>
#include <vector>

namespace mflab {

/* Exponent vector; length always equals the number of ring variables. */
using Expo = std::vector<int>;

inline int total_degree(const Expo& e)
{
    int d = 0;
    for (int x : e)
        d += x;
    return d;
}

inline int weighted_degree(const Expo& e, const std::vector<int>& w)
{
    int d = 0;
    for (size_t i = 0; i < e.size(); ++i)
        d += w[i] * e[i];
    return d;
}

/* Graded lexicographic order, descending convention used for canonical
 * serialization: higher degree first, then lex by variable order. */
inline bool grlex_greater(const Expo& a, const Expo& b)
{
    int da = total_degree(a), db = total_degree(b);
    if (da != db)
        return da > db;
    return a > b;
}

struct GrlexDesc {
    bool operator()(const Expo& a, const Expo& b) const { return grlex_greater(a, b); }
};

/* Polynomial ring context: ordered variables over F_p. */
class RingCtx {
  public:
    RingCtx(std::vector<std::string> vars, uint32_t p);

    const std::vector<std::string>& vars() const { return vars_; }
    size_t nvars() const { return vars_.size(); }
    const Fp& fp() const { return fp_; }
    uint32_t p() const { return fp_.p; }
    /* index of a variable name, or -1 */
    int var_index(const std::string& name) const;

    bool operator==(const RingCtx& o) const { return vars_ == o.vars_ && fp_.p == o.fp_.p; }

    /* Context extended by fresh variables (Knoerrer lift). */
    static std::shared_ptr<const RingCtx> extend(const RingCtx& base,
                                                 const std::vector<std::string>& extra);

  private:
    std::vector<std::string> vars_;
    Fp fp_;
};

using RingCtxPtr = std::shared_ptr<const RingCtx>;

RingCtxPtr make_ring(std::vector<std::string> vars, uint32_t p);

/* All monomials in n variables of total degree exactly d, grlex-descending. */
std::vector<Expo> monomials_of_degree(size_t nvars, int d);
/* All monomials of total degree < bound, grlex-descending. */
std::vector<Expo> monomials_below(size_t nvars, int bound);

/* all monomials of weighted degree < bound, descending by weighted
 * degree then grlex */
std::vector<Expo> monomials_below(size_t nvars, const std::vector<int>& w, int bound);

}  // namespace mflab
