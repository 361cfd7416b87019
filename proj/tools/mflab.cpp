#include "mflab/endo_probe.hpp"
#include "mflab/parse.hpp"
#include "mflab/serialize.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace mflab;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_usage = 1;
constexpr int exit_inconclusive = 2;
constexpr int exit_refuted = 3;

struct RunConfig {
    uint32_t p = 32003;
    std::vector<std::string> vars{"x", "y"};
    std::vector<int> schedule;  // empty = default for the equation
    uint64_t seed = 42;
    int depth = 6;
    std::string out;
};

/* split a product expression at top-level '*'; each chunk is one factor */
std::vector<std::string> split_factors(const std::string& text)
{
    std::vector<std::string> chunks;
    std::string cur;
    int paren = 0;
    for (char c : text) {
        if (c == '(')
            ++paren;
        if (c == ')')
            --paren;
        if (c == '*' && paren == 0) {
            chunks.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    chunks.push_back(cur);
    return chunks;
}

FactoredEquation parse_equation(const std::string& text, const RingCtxPtr& ctx)
{
    std::vector<Poly> factors;
    for (const auto& chunk : split_factors(text))
        factors.push_back(parse_poly(chunk, ctx));
    return make_equation(ctx, std::move(factors));
}

std::set<int> parse_subset(const std::string& body, size_t nfactors)
{
    std::set<int> out;
    std::string item;
    auto flush = [&] {
        if (item.empty())
            return;
        int v = std::stoi(item);
        if (v < 1 || static_cast<size_t>(v) > nfactors)
            throw error("subset index " + item + " out of range");
        out.insert(v);
        item.clear();
    };
    for (char c : body) {
        if (c == ',')
            flush();
        else if (!std::isspace(static_cast<unsigned char>(c)))
            item += c;
    }
    flush();
    if (out.empty())
        throw error("empty subset");
    return out;
}

/* module spec: R | S{1,2} | syz(SPEC) | dual(SPEC) |
 * knoerrer(SPEC,u,v) | path to an MF JSON file */
MatrixFactorization parse_spec(const std::string& spec, const FactoredEquation& eq)
{
    auto wrapped = [&](const char* name) -> std::optional<std::string> {
        std::string pre = std::string(name) + "(";
        if (spec.rfind(pre, 0) == 0 && spec.back() == ')')
            return spec.substr(pre.size(), spec.size() - pre.size() - 1);
        return std::nullopt;
    };
    if (spec == "R")
        return trivial_mf(eq.ctx, eq.product());
    if (spec.rfind("S{", 0) == 0 && spec.back() == '}')
        return s_ideal({eq, parse_subset(spec.substr(2, spec.size() - 3), eq.n())});
    if (auto body = wrapped("syz"))
        return syzygy(parse_spec(*body, eq));
    if (auto body = wrapped("dual"))
        return dual(parse_spec(*body, eq));
    if (auto body = wrapped("knoerrer")) {
        size_t c2 = body->rfind(',');
        size_t c1 = body->rfind(',', c2 - 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw error("knoerrer spec needs (SPEC,u,v)");
        std::string u = body->substr(c1 + 1, c2 - c1 - 1), v = body->substr(c2 + 1);
        return knoerrer(parse_spec(body->substr(0, c1), eq), u, v);
    }
    std::ifstream in(spec);
    if (!in)
        throw error("cannot read module spec '" + spec + "'");
    return mf_from_json(json::parse(in));
}

/* N parsed against M's ring when a wrapper (knoerrer, file) moved M off
 * the base equation */
MatrixFactorization parse_spec_like(const std::string& spec, const FactoredEquation& eq,
                                    const MatrixFactorization& m)
{
    if (spec == "R")
        return trivial_mf(m.ctx, m.f);
    MatrixFactorization n = parse_spec(spec, eq);
    if (n.f.str() != m.f.str())
        throw error("module specs live over different equations: " + m.f.str() + " vs " +
                    n.f.str());
    return n;
}

void emit(const RunConfig& cfg, const json& doc)
{
    std::string text = doc.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.out);
        out << text;
    }
}

RunMeta meta_of(const RunConfig& cfg, const std::vector<int>& schedule)
{
    return RunMeta{cfg.p, cfg.vars, schedule, cfg.seed};
}

struct Session {
    RunConfig cfg;
    RingCtxPtr ctx;
    FactoredEquation eq;
    std::vector<int> schedule;
    std::mt19937_64 rng;

    Session(const RunConfig& c, const std::string& f_text)
        : cfg(c), ctx(make_ring(c.vars, c.p)), eq(parse_equation(f_text, ctx)), rng(c.seed)
    {
        schedule = cfg.schedule.empty() ? default_schedule(ctx, eq.product()) : cfg.schedule;
        if (schedule.size() < 3)
            throw error("schedule needs at least 3 levels");
        for (size_t i = 1; i < schedule.size(); ++i)
            if (schedule[i] <= schedule[i - 1])
                throw error("schedule must be strictly increasing");
    }
};

int run_ext(Session& s, const std::string& mspec, const std::string& nspec, int i, bool tor)
{
    MatrixFactorization m = parse_spec(mspec, s.eq);
    MatrixFactorization n = parse_spec_like(nspec, s.eq, m);
    PresentedModule nm = PresentedModule::from_mf(n);
    std::vector<int> sched =
        m.ctx == s.ctx ? s.schedule : default_schedule(m.ctx, m.f);
    ExtResult r = tor ? tor_periodic(m, nm, i, sched) : ext_periodic(m, nm, i, sched);
    emit(s.cfg, report(meta_of(s.cfg, sched), r.kind, to_json(r)));
    return r.stable() ? exit_pass : exit_inconclusive;
}

int run_suite(const RunConfig& cfg, const std::string& config_path)
{
    std::ifstream in(config_path);
    if (!in)
        throw error("cannot read suite config '" + config_path + "'");
    json conf = json::parse(in);
    RunConfig base = cfg;
    base.p = conf.value("p", base.p);
    base.seed = conf.value("seed", base.seed);
    if (conf.contains("vars"))
        base.vars = conf.at("vars").get<std::vector<std::string>>();
    if (conf.contains("D_schedule"))
        base.schedule = conf.at("D_schedule").get<std::vector<int>>();

    json checks = json::array();
    bool all_pass = true;
    for (const auto& chk : conf.value("checks", json::array())) {
        std::string kind = chk.at("kind").get<std::string>();
        std::string name = chk.value("name", kind);
        json entry{{"name", name}, {"kind", kind}};
        bool pass = false;
        try {
            RunConfig local = base;
            if (chk.contains("vars"))
                local.vars = chk.at("vars").get<std::vector<std::string>>();
            Session s(local, chk.at("f").get<std::string>());
            if (kind == "ext") {
                MatrixFactorization m = parse_spec(chk.at("M").get<std::string>(), s.eq);
                MatrixFactorization n =
                    parse_spec_like(chk.at("N").get<std::string>(), s.eq, m);
                ExtResult r =
                    ext_periodic(m, PresentedModule::from_mf(n), chk.value("i", 1), s.schedule);
                entry["result"] = to_json(r);
                pass = r.stable() && chk.contains("expect") &&
                       *r.stable_dim == chk.at("expect").get<size_t>();
            } else if (kind == "ct-check") {
                EqWorkspace ws(s.eq, s.schedule, s.cfg.seed);
                std::vector<int> omega;
                if (chk.contains("omega"))
                    omega = chk.at("omega").get<std::vector<int>>();
                else
                    for (size_t i = 1; i <= s.eq.n(); ++i)
                        omega.push_back(static_cast<int>(i));
                CTReport r = ct_check(ws, omega);
                entry["result"] = to_json(r);
                pass = r.overall == chk.value("expect", "cluster-tilting-on-catalog");
            } else if (kind == "nested-matrix") {
                EqWorkspace ws(s.eq, s.schedule, s.cfg.seed);
                std::vector<std::set<int>> subsets;
                std::vector<int> all(s.eq.n());
                for (size_t i = 0; i < s.eq.n(); ++i)
                    all[i] = static_cast<int>(i + 1);
                for (size_t mask = 1; mask < (1u << s.eq.n()); ++mask) {
                    std::set<int> I;
                    for (size_t b = 0; b < s.eq.n(); ++b)
                        if (mask & (1u << b))
                            I.insert(all[b]);
                    subsets.push_back(std::move(I));
                }
                pass = true;
                size_t pairs = 0, mismatches = 0;
                for (const auto& I : subsets)
                    for (const auto& J : subsets) {
                        const ExtResult& r = ws.ext1_pair(I, J);
                        ++pairs;
                        bool vanish = r.stable() && *r.stable_dim == 0;
                        if (!r.stable() || vanish != ext_oracle_nested(I, J)) {
                            pass = false;
                            ++mismatches;
                        }
                    }
                entry["result"] = json{{"pairs", pairs}, {"mismatches", mismatches}};
            } else {
                throw error("unknown check kind '" + kind + "'");
            }
        } catch (const std::exception& e) {
            entry["error"] = e.what();
            pass = false;
        }
        entry["pass"] = pass;
        all_pass = all_pass && pass;
        checks.push_back(std::move(entry));
    }
    json summary{{"config", config_path}, {"checks", std::move(checks)}, {"all_pass", all_pass}};
    emit(cfg, report(RunMeta{base.p, base.vars, base.schedule, base.seed}, "suite", summary));
    return all_pass ? exit_pass : exit_refuted;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact matrix-factorization experiments over F_p"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string f_text, mspec, nspec, omega_text, config_path, u = "u", v = "v";
    int i = 1, bad_index = 0, trials = 24;

    auto add_common = [&](CLI::App* c, bool needs_f = true) {
        c->add_option("--p", cfg.p, "field characteristic (odd prime)");
        c->add_option("--vars", cfg.vars, "ring variables")->delimiter(',');
        c->add_option("--schedule", cfg.schedule, "truncation schedule")->delimiter(',');
        c->add_option("--seed", cfg.seed, "random seed");
        c->add_option("--out", cfg.out, "output file (default stdout)");
        if (needs_f)
            c->add_option("--f", f_text, "factored equation, e.g. \"x*y*(x+y)\"")->required();
    };

    CLI::App* ext = app.add_subcommand("ext", "Ext^i via the periodic resolution");
    add_common(ext);
    ext->add_option("--M", mspec)->required();
    ext->add_option("--N", nspec)->required();
    ext->add_option("--i", i, "cohomological degree");

    CLI::App* tor = app.add_subcommand("tor", "Tor_i via the periodic resolution");
    add_common(tor);
    tor->add_option("--M", mspec)->required();
    tor->add_option("--N", nspec)->required();
    tor->add_option("--i", i, "homological degree");

    CLI::App* kno = app.add_subcommand("knoerrer", "periodicity functor, f -> f + u*v");
    add_common(kno);
    kno->add_option("--M", mspec)->required();
    kno->add_option("--u", u, "first new variable");
    kno->add_option("--v", v, "second new variable");

    CLI::App* syz = app.add_subcommand("syzygy", "first syzygy (swap phi and psi)");
    add_common(syz);
    syz->add_option("--M", mspec)->required();

    CLI::App* dua = app.add_subcommand("dual", "transpose factorization");
    add_common(dua);
    dua->add_option("--M", mspec)->required();

    CLI::App* iso = app.add_subcommand("iso", "isomorphism probe for two modules");
    add_common(iso);
    iso->add_option("--M", mspec)->required();
    iso->add_option("--N", nspec)->required();
    iso->add_option("--trials", trials);

    CLI::App* push = app.add_subcommand("pushforward", "finite-cover exact sequence probe");
    add_common(push);
    push->add_option("--M", mspec)->required();

    CLI::App* ct = app.add_subcommand("ct-check", "cluster-tilting report for S^omega");
    add_common(ct);
    ct->add_option("--omega", omega_text, "permutation, e.g. 1,2,3");

    CLI::App* wit = app.add_subcommand("witness", "syzygy witness for a factor inside m^2");
    add_common(wit);
    wit->add_option("--factor", bad_index, "1-based factor index (default: first non-smooth)");

    CLI::App* endo = app.add_subcommand("endo-probe", "End(M) and approximation resolution");
    add_common(endo);
    endo->add_option("--M", mspec)->required();
    endo->add_option("--N", nspec, "module to resolve by add(M)-covers");
    endo->add_option("--depth", cfg.depth, "resolution depth cap");

    CLI::App* suite = app.add_subcommand("suite", "run a config of checks");
    suite->add_option("--config", config_path, "suite config JSON")->required();
    suite->add_option("--out", cfg.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_pass : exit_usage;
    }

    try {
        if (suite->parsed())
            return run_suite(cfg, config_path);

        Session s(cfg, f_text);
        if (ext->parsed() || tor->parsed())
            return run_ext(s, mspec, nspec, i, tor->parsed());

        if (kno->parsed() || syz->parsed() || dua->parsed()) {
            MatrixFactorization m = parse_spec(mspec, s.eq);
            MatrixFactorization out = kno->parsed()  ? knoerrer(m, u, v)
                                      : syz->parsed() ? syzygy(m)
                                                      : dual(m);
            require_valid(out);
            emit(s.cfg, mf_to_json(out));
            return exit_pass;
        }
        if (iso->parsed()) {
            MatrixFactorization m = parse_spec(mspec, s.eq);
            MatrixFactorization n = parse_spec_like(nspec, s.eq, m);
            PresentedModule pm = PresentedModule::from_mf(m);
            PresentedModule pn = PresentedModule::from_mf(n);
            const FactoredEquation* eqp = m.ctx == s.ctx ? &s.eq : nullptr;
            std::vector<int> sched =
                m.ctx == s.ctx ? s.schedule : default_schedule(m.ctx, m.f);
            IsoWitness w = iso_test(pm, pn, trials, sched, s.rng, eqp);
            emit(s.cfg, report(meta_of(s.cfg, sched), "iso", to_json(w)));
            return w.verdict == "isomorphic"       ? exit_pass
                   : w.verdict == "not-isomorphic" ? exit_refuted
                                                   : exit_inconclusive;
        }
        if (push->parsed()) {
            MatrixFactorization m = parse_spec(mspec, s.eq);
            PresentedModule pm = PresentedModule::from_mf(m);
            std::vector<int> sched =
                m.ctx == s.ctx ? s.schedule : default_schedule(m.ctx, m.f);
            PushforwardResult r = pushforward(pm, sched, s.rng);
            emit(s.cfg, report(meta_of(s.cfg, sched), "pushforward", to_json(r)));
            return r.exact ? exit_pass : exit_inconclusive;
        }
        if (ct->parsed()) {
            std::vector<int> omega;
            if (omega_text.empty()) {
                for (size_t k = 1; k <= s.eq.n(); ++k)
                    omega.push_back(static_cast<int>(k));
            } else {
                std::string item;
                for (char c : omega_text + ",") {
                    if (c == ',') {
                        if (!item.empty())
                            omega.push_back(std::stoi(item));
                        item.clear();
                    } else if (!std::isspace(static_cast<unsigned char>(c))) {
                        item += c;
                    }
                }
            }
            EqWorkspace ws(s.eq, s.schedule, s.cfg.seed);
            CTReport r = ct_check(ws, omega);
            emit(s.cfg, report(meta_of(s.cfg, s.schedule), "ct-check", to_json(r)));
            return r.overall == "cluster-tilting-on-catalog" ? exit_pass
                   : r.overall == "refuted"                  ? exit_refuted
                                                             : exit_inconclusive;
        }
        if (wit->parsed()) {
            auto smooth = check_factor_smooth(s.eq);
            int idx = bad_index;
            if (idx == 0) {
                for (size_t k = 0; k < smooth.size(); ++k)
                    if (!smooth[k]) {
                        idx = static_cast<int>(k + 1);
                        break;
                    }
            }
            if (idx == 0) {
                emit(s.cfg, report(meta_of(s.cfg, s.schedule), "witness",
                                   json{{"error", "all factors are smooth"}}));
                return exit_refuted;
            }
            PresentedModule w = witness_non_ct(s.eq, idx);
            json payload{{"factor", idx},
                         {"presentation", to_json(w.presentation())},
                         {"fingerprint", to_json(fingerprint(w, s.schedule, &s.eq, s.rng))}};
            emit(s.cfg, report(meta_of(s.cfg, s.schedule), "witness", payload));
            return exit_pass;
        }
        if (endo->parsed()) {
            MatrixFactorization m = parse_spec(mspec, s.eq);
            PresentedModule pm = PresentedModule::from_mf(m);
            std::vector<int> sched =
                m.ctx == s.ctx ? s.schedule : default_schedule(m.ctx, m.f);
            EndRing er = end_ring(pm, sched.back());
            json payload{{"end_ring",
                          json{{"D", er.D}, {"dim", er.dim()}, {"closed", er.closed}}}};
            int rc = exit_pass;
            if (!nspec.empty()) {
                MatrixFactorization n = parse_spec_like(nspec, s.eq, m);
                const FactoredEquation* eqp = m.ctx == s.ctx ? &s.eq : nullptr;
                ApproxResolution res = construction_resolution(
                    pm, PresentedModule::from_mf(n), cfg.depth, sched, s.rng, eqp);
                payload["resolution"] = to_json(res);
                rc = res.status == "finite" ? exit_pass : exit_inconclusive;
            }
            emit(s.cfg, report(meta_of(s.cfg, sched), "endo-probe", payload));
            return rc;
        }
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
