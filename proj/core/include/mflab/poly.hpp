#pragma once
#include "mflab/ring.hpp"

#include <map>

namespace mflab {

/* Sparse multivariate polynomial over F_p; terms kept in descending
 * graded-lex order, zero coefficients never stored. */
class Poly {
  public:
    using TermMap = std::map<Expo, uint32_t, GrlexDesc>;

    explicit Poly(RingCtxPtr ctx) : ctx_(std::move(ctx)) {}
    Poly(RingCtxPtr ctx, int64_t c);

    static Poly variable(const RingCtxPtr& ctx, const std::string& name);
    static Poly monomial(const RingCtxPtr& ctx, Expo e, int64_t c);

    const RingCtxPtr& ctx() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /* -1 for the zero polynomial */
    int degree() const;
    /* degree of the lowest-degree term, -1 for zero */
    int order() const;
    uint32_t coeff(const Expo& e) const;
    uint32_t constant_term() const;

    void add_term(const Expo& e, int64_t c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scaled(uint32_t c) const;
    Poly pow(unsigned e) const;
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /* degree-1 homogeneous component; input must have zero constant term */
    Poly linear_part() const;
    /* drop all terms of total degree >= bound */
    Poly truncated(int bound) const;
    uint32_t eval(const std::vector<uint32_t>& point) const;
    /* same terms read in a larger ring whose leading variables match ctx */
    Poly lifted(const RingCtxPtr& bigger) const;

    /* canonical text form, e.g. "x^2*y + 6*y^3"; "0" for zero */
    std::string str() const;

  private:
    void check_ctx(const Poly& o) const;
    RingCtxPtr ctx_;
    TermMap terms_;
};

/* Positive integer weights making every term of f the same weighted
 * degree, primitive (gcd 1). Falls back to all ones when the weight
 * cone is not a single positive ray; homogeneous f always yields ones. */
std::vector<int> quasi_weights(const Poly& f);

/* largest weighted term degree, -1 for the zero polynomial */
int weighted_degree(const Poly& f, const std::vector<int>& w);

}  // namespace mflab
