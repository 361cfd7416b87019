#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mflab {

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/* Arithmetic context for the prime field F_p, p an odd prime. */
struct Fp {
    uint32_t p = 0;

    Fp() = default;
    explicit Fp(uint32_t prime);

    uint32_t reduce(int64_t v) const
    {
        int64_t r = v % static_cast<int64_t>(p);
        if (r < 0)
            r += p;
        return static_cast<uint32_t>(r);
    }
    uint32_t add(uint32_t a, uint32_t b) const
    {
        uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const
    {
        return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
    }
    uint32_t pow(uint32_t a, uint64_t e) const;
    uint32_t inv(uint32_t a) const;

    bool operator==(const Fp& o) const { return p == o.p; }
};

bool is_prime(uint32_t n);

}  // namespace mflab
