#include "mflab/serialize.hpp"

#include "mflab/parse.hpp"

namespace mflab {

json to_json(const RunMeta& m)
{
    return json{{"p", m.p}, {"vars", m.vars}, {"D_schedule", m.schedule}, {"seed", m.seed}};
}

json to_json(const Poly& p)
{
    return p.str();
}

json to_json(const PolyMat& m)
{
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols(); ++j)
            row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const MatrixFactorization& m)
{
    return json{{"f", m.f.str()},
                {"size", m.size()},
                {"phi", to_json(m.phi)},
                {"psi", to_json(m.psi)}};
}

static json dims_json(const std::vector<std::pair<int, size_t>>& dims)
{
    json out = json::array();
    for (const auto& [d, v] : dims)
        out.push_back(json{{"D", d}, {"dim", v}});
    return out;
}

json to_json(const ExtResult& r)
{
    json out{{"kind", r.kind}, {"i", r.i}, {"dims", dims_json(r.dims)}};
    if (r.stable_dim)
        out["stable_dim"] = *r.stable_dim;
    else
        out["stable_dim"] = nullptr;
    return out;
}

json to_json(const TorsionReport& r)
{
    json traces = json::array();
    for (const auto& t : r.traces)
        traces.push_back(dims_json(t));
    return json{{"verdict", to_string(r.verdict)}, {"traces", std::move(traces)}};
}

json to_json(const Fingerprint& f)
{
    return json{{"min_gens", f.min_gens}, {"dims", dims_json(f.dims)}, {"ranks", f.ranks}};
}

json to_json(const IsoWitness& w)
{
    return json{{"verdict", w.verdict},
                {"evidence", w.evidence},
                {"fingerprint_m", to_json(w.fp_m)},
                {"fingerprint_n", to_json(w.fp_n)},
                {"has_maps", w.maps.has_value()}};
}

json to_json(const PushforwardResult& r)
{
    return json{{"lambda", r.lambda},
                {"embedding", to_json(r.embedding)},
                {"exact", r.exact},
                {"kernel_trace", dims_json(r.kernel_trace)},
                {"depth_m", r.depth_m},
                {"depth_m1", r.depth_m1}};
}

static json subset_json(const std::set<int>& s)
{
    return json(std::vector<int>(s.begin(), s.end()));
}

json to_json(const PairCheck& c)
{
    return json{{"I", subset_json(c.I)},
                {"J", subset_json(c.J)},
                {"periodic", to_json(c.periodic)},
                {"cocycle", to_json(c.cocycle)},
                {"oracle_vanish", c.oracle_vanish},
                {"engines_agree", c.engines_agree},
                {"oracle_agree", c.oracle_agree}};
}

json to_json(const CatalogCheck& c)
{
    return json{{"label", c.label},
                {"stable", c.stable},
                {"vanish_mx", c.vanish_mx},
                {"vanish_xm", c.vanish_xm},
                {"membership", to_string(c.membership)},
                {"consistent", c.consistent}};
}

json to_json(const CTReport& r)
{
    json rigid = nullptr;
    if (r.rigid)
        rigid = *r.rigid;
    json pairs = json::array();
    for (const auto& p : r.rigidity_pairs)
        pairs.push_back(to_json(p));
    json cat = json::array();
    for (const auto& c : r.catalog)
        cat.push_back(to_json(c));
    return json{{"f", r.f_text},
                {"omega", r.omega},
                {"factor_smooth", r.factor_smooth},
                {"rigidity_pairs", std::move(pairs)},
                {"rigid", rigid},
                {"catalog", std::move(cat)},
                {"overall", r.overall},
                {"refutation", r.refutation}};
}

json to_json(const EndRing& e)
{
    json table = json::array();
    for (const auto& row : e.table) {
        json r = json::array();
        for (const auto& entry : row)
            r.push_back(entry);
        table.push_back(std::move(r));
    }
    return json{{"D", e.D},
                {"dim", e.dim()},
                {"closed", e.closed},
                {"identity", e.identity},
                {"table", std::move(table)}};
}

json to_json(const ApproxStep& s)
{
    return json{{"cover", s.cover},
                {"hom_dim", s.hom_dim},
                {"surjective", s.surjective},
                {"hom_exact", s.hom_exact},
                {"in_add", to_string(s.in_add)},
                {"kernel_dims", dims_json(s.kernel_dims)}};
}

json to_json(const ApproxResolution& r)
{
    json steps = json::array();
    for (const auto& s : r.steps)
        steps.push_back(to_json(s));
    json pd = nullptr;
    if (r.pd)
        pd = *r.pd;
    return json{{"steps", std::move(steps)}, {"status", r.status}, {"pd", pd}};
}

json to_json(const PdResult& r)
{
    json pd = nullptr;
    if (r.pd)
        pd = *r.pd;
    return json{{"pd", pd}, {"depth", r.depth}, {"note", r.note}};
}

json to_json(const DualityCheck& c)
{
    return json{{"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}, {"verdict", c.verdict}};
}

json to_json(const PerpEntry& e)
{
    json exts = json::array();
    for (const auto& x : e.exts)
        exts.push_back(to_json(x));
    return json{{"label", e.label}, {"exts", std::move(exts)}, {"verdict", e.verdict}};
}

json report(const RunMeta& meta, const std::string& kind, json payload)
{
    json out = to_json(meta);
    out["version"] = artifact_version;
    out["kind"] = kind;
    out["result"] = std::move(payload);
    return out;
}

json mf_to_json(const MatrixFactorization& m)
{
    json out{{"p", m.ctx->p()}, {"vars", m.ctx->vars()}};
    out.update(to_json(m));
    return out;
}

MatrixFactorization mf_from_json(const json& doc)
{
    RingCtxPtr ctx = make_ring(doc.at("vars").get<std::vector<std::string>>(),
                               doc.at("p").get<uint32_t>());
    auto mat = [&](const json& rows) {
        size_t n = rows.size();
        PolyMat out(ctx, n, n);
        for (size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n)
                throw error("matrix factorization JSON: phi/psi must be square");
            for (size_t j = 0; j < n; ++j)
                out.at(i, j) = parse_poly(rows[i][j].get<std::string>(), ctx);
        }
        return out;
    };
    MatrixFactorization m{ctx, parse_poly(doc.at("f").get<std::string>(), ctx),
                          mat(doc.at("phi")), mat(doc.at("psi"))};
    require_valid(m);
    return m;
}

}  // namespace mflab
