#include "mflab/ring.hpp"

#include <algorithm>
#include <set>

namespace mflab {

RingCtx::RingCtx(std::vector<std::string> vars, uint32_t p) : vars_(std::move(vars)), fp_(p)
{
    if (vars_.empty() || vars_.size() > 6)
        throw error("ring context needs between 1 and 6 variables");
    std::set<std::string> seen;
    for (const auto& v : vars_) {
        if (v.empty())
            throw error("empty variable name");
        if (!seen.insert(v).second)
            throw error("duplicate variable name: " + v);
    }
}

int RingCtx::var_index(const std::string& name) const
{
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name)
            return static_cast<int>(i);
    return -1;
}

RingCtxPtr RingCtx::extend(const RingCtx& base, const std::vector<std::string>& extra)
{
    auto vars = base.vars();
    for (const auto& v : extra) {
        if (base.var_index(v) >= 0)
            throw error("variable already present in ring: " + v);
        vars.push_back(v);
    }
    return std::make_shared<const RingCtx>(std::move(vars), base.p());
}

RingCtxPtr make_ring(std::vector<std::string> vars, uint32_t p)
{
    return std::make_shared<const RingCtx>(std::move(vars), p);
}

static void gen_degree(size_t nvars, size_t pos, int rem, Expo& cur, std::vector<Expo>& out)
{
    if (pos + 1 == nvars) {
        cur[pos] = rem;
        out.push_back(cur);
        return;
    }
    for (int e = rem; e >= 0; --e) {
        cur[pos] = e;
        gen_degree(nvars, pos + 1, rem - e, cur, out);
    }
    cur[pos] = 0;
}

std::vector<Expo> monomials_of_degree(size_t nvars, int d)
{
    std::vector<Expo> out;
    Expo cur(nvars, 0);
    gen_degree(nvars, 0, d, cur, out);
    return out;
}

std::vector<Expo> monomials_below(size_t nvars, int bound)
{
    std::vector<Expo> out;
    for (int d = bound - 1; d >= 0; --d) {
        auto layer = monomials_of_degree(nvars, d);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

static void enum_weighted(size_t v, std::vector<int>& e, int budget, const std::vector<int>& w,
                          std::vector<Expo>& out)
{
    if (v == e.size()) {
        out.push_back(e);
        return;
    }
    for (int k = 0; k * w[v] <= budget; ++k) {
        e[v] = k;
        enum_weighted(v + 1, e, budget - k * w[v], w, out);
    }
    e[v] = 0;
}

std::vector<Expo> monomials_below(size_t nvars, const std::vector<int>& w, int bound)
{
    std::vector<Expo> out;
    std::vector<int> e(nvars, 0);
    enum_weighted(0, e, bound - 1, w, out);
    std::sort(out.begin(), out.end(), [&](const Expo& a, const Expo& b) {
        int da = weighted_degree(a, w), db = weighted_degree(b, w);
        if (da != db)
            return da > db;
        return grlex_greater(a, b);
    });
    return out;
}

}  // namespace mflab
