#include "mflab/parse.hpp"

#include <cctype>

namespace mflab {
namespace {

class Parser {
  public:
    Parser(const std::string& src, const RingCtxPtr& ctx) : src_(src), ctx_(ctx) {}

    Poly parse_expr()
    {
        bool neg = false;
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            neg = true;
        }
        Poly acc = parse_term();
        if (neg)
            acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                Poly t = parse_term();
                acc = (c == '+') ? acc + t : acc - t;
            }
            else
                break;
        }
        return acc;
    }

    Poly parse_term()
    {
        Poly acc = parse_factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc = acc * parse_factor();
            }
            else
                break;
        }
        return acc;
    }

    Poly parse_factor()
    {
        Poly base = parse_atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            base = base.pow(parse_exponent());
        }
        return base;
    }

    Poly parse_atom()
    {
        skip_ws();
        size_t at = pos_;
        char c = peek();
        if (c == '(') {
            ++pos_;
            Poly inner = parse_expr();
            skip_ws();
            if (peek() != ')')
                throw parse_error(pos_, "expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            int64_t v = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                v = v * 10 + (src_[pos_] - '0');
                if (v > (1LL << 40))
                    v %= ctx_->p();
                ++pos_;
            }
            return Poly(ctx_, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
                name += src_[pos_++];
            if (ctx_->var_index(name) < 0)
                throw parse_error(at, "unknown variable '" + name + "'");
            return Poly::variable(ctx_, name);
        }
        throw parse_error(at, c ? std::string("unexpected character '") + c + "'"
                              : std::string("unexpected end of input"));
    }

    unsigned parse_exponent()
    {
        skip_ws();
        size_t at = pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw parse_error(pos_, "exponent must be a nonnegative integer literal");
        int64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (src_[pos_] - '0');
            if (v > 64)
                throw parse_error(at, "exponent overflow (> 64)");
            ++pos_;
        }
        return static_cast<unsigned>(v);
    }

    void expect_end()
    {
        skip_ws();
        if (pos_ != src_.size())
            throw parse_error(pos_, "trailing input");
    }

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    size_t pos_ = 0;
    const std::string& src_;
    RingCtxPtr ctx_;
};

}  // namespace

Poly parse_poly(const std::string& src, const RingCtxPtr& ctx)
{
    Parser p(src, ctx);
    Poly r = p.parse_expr();
    p.expect_end();
    return r;
}

std::vector<Poly> parse_factored(const std::string& src, const RingCtxPtr& ctx)
{
    Parser p(src, ctx);
    std::vector<Poly> factors;
    for (;;) {
        Poly f = p.parse_factor();
        factors.push_back(f);
        p.skip_ws();
        if (p.peek() == '*') {
            ++p.pos_;
            continue;
        }
        break;
    }
    p.expect_end();
    return factors;
}

}  // namespace mflab
