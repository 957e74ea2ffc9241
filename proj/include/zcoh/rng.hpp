#pragma once

#include "zcoh/ring.hpp"

namespace zcoh {

// splitmix64. Seeded runs must be byte-identical across platforms, so the
// engine never uses std:: distributions.
struct Rng {
    u64 s;

    explicit Rng(u64 seed) : s(seed) {}

    u64 next() {
        s += 0x9e3779b97f4a7c15ULL;
        u64 z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    u32 below(u32 n) { return n ? static_cast<u32>(next() % n) : 0; }

    Rng fork() { return Rng(next()); }
};

}  // namespace zcoh
