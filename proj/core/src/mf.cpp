#include "mflab/mf.hpp"

#include <algorithm>
#include <sstream>

namespace mflab {

MfVerdict validate_mf(const MatrixFactorization& m)
{
    MfVerdict v;
    if (m.f.is_zero()) {
        v.valid = false;
        v.detail = "f = 0";
        return v;
    }
    if (m.phi.rows() != m.phi.cols() || m.psi.rows() != m.psi.cols() ||
        m.phi.rows() != m.psi.rows()) {
        v.valid = false;
        v.detail = "non-square or mismatched blocks";
        return v;
    }
    const size_t n = m.size();
    auto check = [&](const PolyMat& a, const PolyMat& b, const char* name) {
        PolyMat prod = a.mul(b);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                const Poly want = (i == j) ? m.f : Poly(m.ctx);
                if (prod.at(i, j) != want) {
                    std::ostringstream os;
                    os << name << " entry (" << i + 1 << "," << j + 1
                       << "): " << prod.at(i, j).str() << " != " << want.str();
                    v.valid = false;
                    v.detail = os.str();
                    return false;
                }
            }
        return true;
    };
    if (!check(m.phi, m.psi, "phi*psi"))
        return v;
    check(m.psi, m.phi, "psi*phi");
    return v;
}

void require_valid(const MatrixFactorization& m)
{
    auto v = validate_mf(m);
    if (!v.valid)
        throw error("invalid matrix factorization: " + v.detail);
}

MatrixFactorization syzygy(const MatrixFactorization& m)
{
    require_valid(m);
    return {m.ctx, m.f, m.psi, m.phi};
}

MatrixFactorization dual(const MatrixFactorization& m)
{
    require_valid(m);
    return {m.ctx, m.f, m.phi.transpose(), m.psi.transpose()};
}

MatrixFactorization direct_sum(const MatrixFactorization& a, const MatrixFactorization& b)
{
    if (!(*a.ctx == *b.ctx) || a.f != b.f)
        throw error("direct sum requires matching ring and equation");
    return {a.ctx, a.f, a.phi.dsum(b.phi), a.psi.dsum(b.psi)};
}

MatrixFactorization trivial_mf(const RingCtxPtr& ctx, const Poly& f)
{
    PolyMat phi(ctx, 1, 1), psi(ctx, 1, 1);
    phi.at(0, 0) = f;
    psi.at(0, 0) = Poly(ctx, 1);
    return {ctx, f, phi, psi};
}

MatrixFactorization zero_mf(const RingCtxPtr& ctx, const Poly& f)
{
    PolyMat phi(ctx, 1, 1), psi(ctx, 1, 1);
    phi.at(0, 0) = Poly(ctx, 1);
    psi.at(0, 0) = f;
    return {ctx, f, phi, psi};
}

MatrixFactorization knoerrer(const MatrixFactorization& m, const std::string& u,
                             const std::string& v)
{
    require_valid(m);
    auto big = RingCtx::extend(*m.ctx, {u, v});
    const size_t n = m.size();
    Poly pu = Poly::variable(big, u), pv = Poly::variable(big, v);
    PolyMat phi = PolyMat::scalar(big, n, pu).hcat(m.psi.lifted(big))
                      .vcat(m.phi.lifted(big).hcat(PolyMat::scalar(big, n, -pv)));
    PolyMat psi = PolyMat::scalar(big, n, pv).hcat(m.psi.lifted(big))
                      .vcat(m.phi.lifted(big).hcat(PolyMat::scalar(big, n, -pu)));
    return {big, m.f.lifted(big) + pu * pv, phi, psi};
}

Poly FactoredEquation::product() const
{
    Poly r(ctx, 1);
    for (const auto& f : factors)
        r = r * f;
    return r;
}

Poly FactoredEquation::subset_product(const std::set<int>& I) const
{
    Poly r(ctx, 1);
    for (int i : I) {
        if (i < 1 || i > static_cast<int>(factors.size()))
            throw error("factor index out of range");
        r = r * factors[i - 1];
    }
    return r;
}

std::set<int> FactoredEquation::complement(const std::set<int>& I) const
{
    std::set<int> c;
    for (int i = 1; i <= static_cast<int>(factors.size()); ++i)
        if (!I.count(i))
            c.insert(i);
    return c;
}

FactoredEquation make_equation(RingCtxPtr ctx, std::vector<Poly> factors)
{
    if (factors.empty())
        throw error("equation needs at least one factor");
    const Fp& fp = ctx->fp();
    for (size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].is_zero())
            throw error("zero factor");
        if (factors[i].constant_term() != 0)
            throw error("factor with nonzero constant term: " + factors[i].str());
        for (size_t j = 0; j < i; ++j) {
            // pairwise-reducedness surrogate: no two factors proportional
            const auto& a = factors[j], &b = factors[i];
            if (a.terms().size() != b.terms().size())
                continue;
            uint32_t ratio = 0;
            bool prop = true;
            for (const auto& [e, c] : a.terms()) {
                uint32_t bc = b.coeff(e);
                if (bc == 0) {
                    prop = false;
                    break;
                }
                uint32_t r = fp.mul(bc, fp.inv(c));
                if (ratio == 0)
                    ratio = r;
                else if (ratio != r) {
                    prop = false;
                    break;
                }
            }
            if (prop)
                throw error("factors " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                            " are proportional; equation not reduced");
        }
    }
    return {std::move(ctx), std::move(factors)};
}

MatrixFactorization s_ideal(const SubsetModuleSpec& spec)
{
    if (spec.I.empty())
        throw error("empty subset in S_I");
    const auto& eq = spec.eq;
    Poly fI = eq.subset_product(spec.I);
    Poly fC = eq.subset_product(eq.complement(spec.I));
    PolyMat phi(eq.ctx, 1, 1), psi(eq.ctx, 1, 1);
    phi.at(0, 0) = fI;
    psi.at(0, 0) = fC;
    return {eq.ctx, eq.product(), phi, psi};
}

MatrixFactorization extension_from_cocycle(const MatrixFactorization& n,
                                           const MatrixFactorization& m, const PolyMat& alpha,
                                           const PolyMat& beta)
{
    require_valid(n);
    require_valid(m);
    if (!(*n.ctx == *m.ctx) || n.f != m.f)
        throw error("extension requires matching ring and equation");
    if (alpha.rows() != n.size() || alpha.cols() != m.size() || beta.rows() != n.size() ||
        beta.cols() != m.size())
        throw error("cocycle block shape mismatch");
    if (!n.phi.mul(beta).add(alpha.mul(m.psi)).is_zero() ||
        !n.psi.mul(alpha).add(beta.mul(m.phi)).is_zero())
        throw error("cocycle condition fails");
    PolyMat zero(n.ctx, m.size(), n.size());
    PolyMat phi = n.phi.hcat(alpha).vcat(zero.hcat(m.phi));
    PolyMat psi = n.psi.hcat(beta).vcat(zero.hcat(m.psi));
    return {n.ctx, n.f, phi, psi};
}

static Poly partial_derivative(const Poly& p, size_t var)
{
    Poly r(p.ctx());
    for (const auto& [e, c] : p.terms()) {
        if (e[var] == 0)
            continue;
        Expo d = e;
        d[var] -= 1;
        r.add_term(d, static_cast<int64_t>(c) * e[var]);
    }
    return r;
}

std::optional<std::vector<uint32_t>> sample_component_point(const FactoredEquation& eq,
                                                            size_t factor_idx,
                                                            std::mt19937_64& rng)
{
    const auto& ctx = eq.ctx;
    const Fp& fp = ctx->fp();
    const Poly& g = eq.factors[factor_idx];
    size_t nv = ctx->nvars();
    std::vector<Poly> grad;
    for (size_t k = 0; k < nv; ++k)
        grad.push_back(partial_derivative(g, k));
    // scan a coordinate the factor actually depends on
    size_t scan = nv - 1;
    for (size_t k = nv; k-- > 0;) {
        bool used = false;
        for (const auto& [e, c] : g.terms())
            if (e[k] > 0)
                used = true;
        if (used) {
            scan = k;
            break;
        }
    }
    std::uniform_int_distribution<uint32_t> dist(0, fp.p - 1);
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<uint32_t> pt(nv, 0);
        for (size_t k = 0; k < nv; ++k)
            if (k != scan)
                pt[k] = dist(rng);
        uint32_t start = dist(rng);
        bool found = false;
        for (uint32_t off = 0; off < fp.p && !found; ++off) {
            pt[scan] = (start + off) % fp.p;
            if (g.eval(pt) == 0)
                found = true;
        }
        if (!found)
            continue;
        bool ok = true;
        for (size_t j = 0; j < eq.factors.size() && ok; ++j)
            if (j != factor_idx && eq.factors[j].eval(pt) == 0)
                ok = false;
        if (!ok)
            continue;
        bool smooth = false;
        for (size_t k = 0; k < nv && !smooth; ++k)
            if (grad[k].eval(pt) != 0)
                smooth = true;
        if (smooth)
            return pt;
    }
    return std::nullopt;
}

std::vector<int> rank_vector(const MatrixFactorization& m, const FactoredEquation& eq,
                             int samples, std::mt19937_64& rng)
{
    require_valid(m);
    if (m.f != eq.product())
        throw error("factorization does not factor the equation product");
    const Fp& fp = m.ctx->fp();
    std::vector<int> ranks;
    for (size_t i = 0; i < eq.n(); ++i) {
        std::vector<int> votes;
        for (int s = 0; s < samples; ++s) {
            auto pt = sample_component_point(eq, i, rng);
            if (!pt)
                break;
            votes.push_back(static_cast<int>(m.size() - rank(m.phi.eval(*pt), fp)));
        }
        if (static_cast<int>(votes.size()) < samples)
            throw error("insufficient sample points on component " + std::to_string(i + 1));
        std::sort(votes.begin(), votes.end());
        ranks.push_back(votes[votes.size() / 2]);  // majority / median vote
    }
    return ranks;
}

MatrixFactorization random_equivalent(const MatrixFactorization& m, int ops,
                                      std::mt19937_64& rng)
{
    require_valid(m);
    MatrixFactorization r = m;
    const size_t n = m.size();
    if (n < 2)
        return r;
    std::uniform_int_distribution<size_t> pick(0, n - 1);
    std::uniform_int_distribution<uint32_t> coeff(1, m.ctx->p() - 1);
    std::uniform_int_distribution<int> degpick(0, static_cast<int>(m.ctx->nvars()));
    for (int t = 0; t < ops; ++t) {
        size_t i = pick(rng), j = pick(rng);
        if (i == j)
            continue;
        Poly c(m.ctx, coeff(rng));
        int dv = degpick(rng);
        if (dv > 0)
            c = c * Poly::variable(m.ctx, m.ctx->vars()[dv - 1]);
        PolyMat e = PolyMat::identity(m.ctx, n);
        PolyMat einv = PolyMat::identity(m.ctx, n);
        e.at(i, j) = c;
        einv.at(i, j) = -c;
        if (t % 2 == 0) {
            // row operation on phi, compensated on psi
            r.phi = e.mul(r.phi);
            r.psi = r.psi.mul(einv);
        }
        else {
            r.phi = r.phi.mul(e);
            r.psi = einv.mul(r.psi);
        }
    }
    return r;
}

}  // namespace mflab
