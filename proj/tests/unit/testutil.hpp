#pragma once

#include <set>
#include <vector>

#include "zcoh/finab.hpp"
#include "zcoh/rng.hpp"

namespace zcoh::testutil {

using zcoh::Rng;

// All elements of the module +_i Z/p^{exp_i}, in mixed-radix order.
inline std::vector<std::vector<u32>> enumerate_module(const Orders& o, const Ring& R) {
    std::vector<std::vector<u32>> out;
    u64 total = o.size(R);
    std::vector<u32> v(o.rank(), 0);
    for (u64 n = 0; n < total; ++n) {
        out.push_back(v);
        for (u32 i = 0; i < o.rank(); ++i) {
            v[i] = (v[i] + 1) % R.pow_p(o.exp[i]);
            if (v[i] != 0) break;
        }
    }
    return out;
}

// Brute-force span of the given rows inside the module (ambient order <= 2^12
// in all uses, per the enumeration-oracle policy).
inline std::set<std::vector<u32>> enumerate_span(const Mat& gens, const Orders& o, const Ring& R) {
    std::set<std::vector<u32>> span;
    span.insert(std::vector<u32>(o.rank(), 0));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<u32>> cur(span.begin(), span.end());
        for (const auto& v : cur)
            for (u32 i = 0; i < gens.rows; ++i) {
                auto w = o.canon(vec_add(v, gens.row(i), R), R);
                if (span.insert(w).second) grew = true;
            }
    }
    return span;
}

inline Mat random_mat(Rng& rng, u32 r, u32 c, const Ring& R) {
    Mat m(r, c);
    for (auto& x : m.a) x = rng.below(R.mod);
    return m;
}

}  // namespace zcoh::testutil
