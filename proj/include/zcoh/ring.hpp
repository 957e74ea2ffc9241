#pragma once

#include <cstdint>
#include <string>

#include "zcoh/errors.hpp"

namespace zcoh {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// The coefficient ring Z/p^e. All module arithmetic in the engine happens
// modulo p^e; individual cyclic summands Z/p^a (a <= e) refine this per
// coordinate.
struct Ring {
    u32 p = 2;
    u32 e = 1;
    u32 mod = 2;  // p^e

    bool operator==(const Ring&) const = default;

    u32 reduce(u64 x) const { return static_cast<u32>(x % mod); }

    u32 add(u32 a, u32 b) const { return reduce(u64(a) + b); }
    u32 sub(u32 a, u32 b) const { return reduce(u64(a) + mod - (b % mod)); }
    u32 mul(u32 a, u32 b) const { return reduce(u64(a) * b); }
    u32 neg(u32 a) const { return a % mod == 0 ? 0 : mod - a % mod; }

    // p-adic valuation, capped at e (val(0) = e).
    u32 val(u32 a) const {
        a %= mod;
        if (a == 0) return e;
        u32 v = 0;
        while (a % p == 0) { a /= p; ++v; }
        return v;
    }

    // p^k for k <= e.
    u32 pow_p(u32 k) const {
        u32 r = 1;
        for (u32 i = 0; i < k; ++i) r *= p;
        return r;
    }

    bool is_unit(u32 a) const { return a % p != 0; }

    // Inverse of a unit mod p^e.
    u32 inv_unit(u32 a) const;

    // sign = +1/-1 as a ring element
    u32 sign(int s) const { return (s % 2 == 0) ? 1u : mod - 1u; }

    std::string str() const { return "Z/" + std::to_string(mod); }
};

Ring make_ring(u32 p, u32 e);

}  // namespace zcoh
