#include "zcoh/ring.hpp"

namespace zcoh {

static bool is_prime(u32 n) {
    if (n < 2) return false;
    for (u32 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Ring make_ring(u32 p, u32 e) {
    if (!is_prime(p)) throw ValidationError("ring: p = " + std::to_string(p) + " is not prime");
    if (e < 1) throw ValidationError("ring: e must be >= 1");
    u64 m = 1;
    for (u32 i = 0; i < e; ++i) {
        m *= p;
        if (m > (1u << 20)) throw ValidationError("ring: p^e too large (cap 2^20)");
    }
    return Ring{p, e, static_cast<u32>(m)};
}

u32 Ring::inv_unit(u32 a) const {
    a %= mod;
    if (!is_unit(a)) throw Error("inv_unit: " + std::to_string(a) + " is not a unit mod " + std::to_string(mod));
    // extended euclid
    long long t = 0, newt = 1, r = mod, newr = a;
    while (newr != 0) {
        long long q = r / newr;
        long long tmp = t - q * newt;
        t = newt; newt = tmp;
        tmp = r - q * newr;
        r = newr; newr = tmp;
    }
    long long res = t % mod;
    if (res < 0) res += mod;
    return static_cast<u32>(res);
}

}  // namespace zcoh
