#include "mflab/poly.hpp"

#include <numeric>
#include <sstream>

namespace mflab {

Poly::Poly(RingCtxPtr ctx, int64_t c) : ctx_(std::move(ctx))
{
    add_term(Expo(ctx_->nvars(), 0), c);
}

Poly Poly::variable(const RingCtxPtr& ctx, const std::string& name)
{
    int i = ctx->var_index(name);
    if (i < 0)
        throw error("unknown variable: " + name);
    Expo e(ctx->nvars(), 0);
    e[i] = 1;
    return monomial(ctx, std::move(e), 1);
}

Poly Poly::monomial(const RingCtxPtr& ctx, Expo e, int64_t c)
{
    if (e.size() != ctx->nvars())
        throw error("exponent vector length mismatch");
    Poly p(ctx);
    p.add_term(e, c);
    return p;
}

int Poly::degree() const
{
    return terms_.empty() ? -1 : total_degree(terms_.begin()->first);
}

int Poly::order() const
{
    return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first);
}

uint32_t Poly::coeff(const Expo& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
}

uint32_t Poly::constant_term() const
{
    return coeff(Expo(ctx_->nvars(), 0));
}

void Poly::add_term(const Expo& e, int64_t c)
{
    if (e.size() != ctx_->nvars())
        throw error("exponent vector length mismatch");
    const Fp& fp = ctx_->fp();
    uint32_t cc = fp.reduce(c);
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (cc != 0)
            terms_.emplace(e, cc);
        return;
    }
    it->second = fp.add(it->second, cc);
    if (it->second == 0)
        terms_.erase(it);
}

void Poly::check_ctx(const Poly& o) const
{
    if (!(*ctx_ == *o.ctx_))
        throw error("ring context mismatch");
}

Poly Poly::operator+(const Poly& o) const
{
    check_ctx(o);
    Poly r = *this;
    for (const auto& [e, c] : o.terms_)
        r.add_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const
{
    check_ctx(o);
    Poly r = *this;
    const Fp& fp = ctx_->fp();
    for (const auto& [e, c] : o.terms_)
        r.add_term(e, fp.neg(c));
    return r;
}

Poly Poly::operator-() const
{
    return scaled(ctx_->fp().neg(1));
}

Poly Poly::scaled(uint32_t c) const
{
    const Fp& fp = ctx_->fp();
    Poly r(ctx_);
    for (const auto& [e, cc] : terms_)
        r.add_term(e, fp.mul(cc, c));
    return r;
}

Poly Poly::operator*(const Poly& o) const
{
    check_ctx(o);
    const Fp& fp = ctx_->fp();
    Poly r(ctx_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            Expo e = ea;
            for (size_t i = 0; i < e.size(); ++i)
                e[i] += eb[i];
            r.add_term(e, fp.mul(ca, cb));
        }
    return r;
}

Poly Poly::pow(unsigned e) const
{
    Poly r(ctx_, 1);
    Poly base = *this;
    while (e) {
        if (e & 1)
            r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

Poly Poly::linear_part() const
{
    if (constant_term() != 0)
        throw error("unit or non-local input: nonzero constant term");
    Poly r(ctx_);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) == 1)
            r.add_term(e, c);
    return r;
}

Poly Poly::truncated(int bound) const
{
    Poly r(ctx_);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) < bound)
            r.add_term(e, c);
    return r;
}

uint32_t Poly::eval(const std::vector<uint32_t>& point) const
{
    if (point.size() != ctx_->nvars())
        throw error("evaluation point length mismatch");
    const Fp& fp = ctx_->fp();
    uint32_t acc = 0;
    for (const auto& [e, c] : terms_) {
        uint32_t t = c;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i])
                t = fp.mul(t, fp.pow(point[i], e[i]));
        acc = fp.add(acc, t);
    }
    return acc;
}

Poly Poly::lifted(const RingCtxPtr& bigger) const
{
    if (bigger->p() != ctx_->p() || bigger->nvars() < ctx_->nvars())
        throw error("cannot lift polynomial into incompatible ring");
    for (size_t i = 0; i < ctx_->nvars(); ++i)
        if (bigger->vars()[i] != ctx_->vars()[i])
            throw error("cannot lift polynomial: variable order differs");
    Poly r(bigger);
    for (const auto& [e, c] : terms_) {
        Expo be(bigger->nvars(), 0);
        for (size_t i = 0; i < e.size(); ++i)
            be[i] = e[i];
        r.add_term(be, c);
    }
    return r;
}

std::string Poly::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        bool unit_coeff = (c == 1) && total_degree(e) > 0;
        bool printed = false;
        if (!unit_coeff) {
            os << c;
            printed = true;
        }
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            if (printed)
                os << "*";
            os << ctx_->vars()[i];
            if (e[i] > 1)
                os << "^" << e[i];
            printed = true;
        }
    }
    return os.str();
}


std::vector<int> quasi_weights(const Poly& f)
{
    size_t n = f.ctx()->nvars();
    std::vector<int> ones(n, 1);
    std::vector<Expo> expos;
    for (const auto& [e, c] : f.terms())
        expos.push_back(e);
    if (expos.size() < 2)
        return ones;
    // rows of the constraint matrix: differences of exponent vectors
    std::vector<std::vector<long long>> rows;
    for (size_t j = 1; j < expos.size(); ++j) {
        std::vector<long long> r(n);
        for (size_t k = 0; k < n; ++k)
            r[k] = expos[j][k] - expos[0][k];
        rows.push_back(std::move(r));
    }
    // fraction-free elimination over the integers
    std::vector<size_t> piv_col, piv_row;
    size_t rr = 0;
    for (size_t c = 0; c < n && rr < rows.size(); ++c) {
        size_t sel = rr;
        while (sel < rows.size() && rows[sel][c] == 0)
            ++sel;
        if (sel == rows.size())
            continue;
        std::swap(rows[rr], rows[sel]);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rr || rows[i][c] == 0)
                continue;
            long long p = rows[rr][c], q = rows[i][c];
            for (size_t k = 0; k < n; ++k)
                rows[i][k] = rows[i][k] * p - rows[rr][k] * q;
            long long g = 0;
            for (long long x : rows[i])
                g = std::gcd(g, x);
            if (g > 1)
                for (long long& x : rows[i])
                    x /= g;
        }
        piv_col.push_back(c);
        piv_row.push_back(rr);
        ++rr;
    }
    if (n - rr != 1)
        return ones;  // no unique weight ray; plain grading is the best guess
    std::vector<bool> is_piv(n, false);
    for (size_t c : piv_col)
        is_piv[c] = true;
    size_t free_col = 0;
    while (is_piv[free_col])
        ++free_col;
    // w[piv] = -row[free] / row[piv] * w[free]; clear denominators
    long long den = 1;
    for (size_t k = 0; k < rr; ++k)
        den = std::lcm(den, std::abs(rows[piv_row[k]][piv_col[k]]));
    std::vector<long long> w(n, 0);
    w[free_col] = den;
    for (size_t k = 0; k < rr; ++k)
        w[piv_col[k]] = -rows[piv_row[k]][free_col] * (den / rows[piv_row[k]][piv_col[k]]);
    long long g = 0;
    bool neg = w[free_col] < 0;
    for (long long& x : w) {
        if (neg)
            x = -x;
        g = std::gcd(g, x);
    }
    std::vector<int> out(n);
    for (size_t k = 0; k < n; ++k) {
        long long v = w[k] / g;
        if (v <= 0)
            return ones;
        out[k] = static_cast<int>(v);
    }
    return out;
}

int weighted_degree(const Poly& f, const std::vector<int>& w)
{
    int d = -1;
    for (const auto& [e, c] : f.terms())
        d = std::max(d, weighted_degree(e, w));
    return d;
}

}  // namespace mflab
