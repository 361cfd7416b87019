#pragma once
#include "mflab/poly.hpp"

namespace mflab {

struct parse_error : error {
    size_t pos;
    parse_error(size_t at, const std::string& msg)
        : error("parse error at position " + std::to_string(at) + ": " + msg), pos(at)
    {
    }
};

/* Recursive-descent parser for the grammar:
 *   expr   := ['-'] term (('+'|'-') term)*
 *   term   := factor ('*' factor)*
 *   factor := atom ['^' nat]
 *   atom   := integer | variable | '(' expr ')'
 * Exponents are capped at 64. */
Poly parse_poly(const std::string& src, const RingCtxPtr& ctx);

/* Factored input "x * y * (x+y)": top-level '*' splits factors;
 * parenthesized factors may contain sums. */
std::vector<Poly> parse_factored(const std::string& src, const RingCtxPtr& ctx);

}  // namespace mflab
