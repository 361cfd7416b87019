#include "mflab/field.hpp"

namespace mflab {

bool is_prime(uint32_t n)
{
    if (n < 2)
        return false;
    for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Fp::Fp(uint32_t prime) : p(prime)
{
    if (p < 3)
        throw error("field characteristic must be an odd prime >= 3, got " + std::to_string(p));
    if (p % 2 == 0)
        throw error("characteristic 2 is not supported");
    if (!is_prime(p))
        throw error(std::to_string(p) + " is not prime");
}

uint32_t Fp::pow(uint32_t a, uint64_t e) const
{
    uint32_t r = 1 % p, base = a % p;
    while (e) {
        if (e & 1)
            r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

uint32_t Fp::inv(uint32_t a) const
{
    if (a % p == 0)
        throw error("division by zero in F_" + std::to_string(p));
    // extended Euclid
    int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        int64_t q = r / newr;
        int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0)
        t += p;
    return static_cast<uint32_t>(t);
}

}  // namespace mflab
