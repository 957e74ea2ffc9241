#include "zcoh/group.hpp"

#include <algorithm>
#include <set>

#include "zcoh/errors.hpp"

namespace zcoh {

u32 FiniteGroup::order_of(u32 a) const {
    u32 x = a, k = 1;
    while (x != 0) { x = mul(x, a); ++k; }
    return k;
}

bool FiniteGroup::is_abelian() const {
    for (u32 a = 0; a < n; ++a)
        for (u32 b = a + 1; b < n; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

GroupPtr make_group(std::vector<u32> table, std::string label, u32 cap) {
    u64 n2 = table.size();
    u32 n = 0;
    while (u64(n + 1) * (n + 1) <= n2) ++n;
    if (u64(n) * n != n2 || n == 0) throw ValidationError("group table is not square");
    if (n > cap)
        throw ValidationError("group order " + std::to_string(n) + " exceeds cap " +
                              std::to_string(cap));
    FiniteGroup g;
    g.n = n;
    g.table = std::move(table);
    g.label = std::move(label);
    for (u32 v : g.table)
        if (v >= n) throw ValidationError("group table entry out of range");
    for (u32 a = 0; a < n; ++a) {
        if (g.mul(0, a) != a || g.mul(a, 0) != a)
            throw ValidationError("element 0 is not an identity (fails at " + std::to_string(a) + ")");
    }
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b)
            for (u32 c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    throw ValidationError("non-associative triple (" + std::to_string(a) + "," +
                                          std::to_string(b) + "," + std::to_string(c) + ")");
    g.inv.assign(n, UINT32_MAX);
    for (u32 a = 0; a < n; ++a) {
        for (u32 b = 0; b < n; ++b)
            if (g.mul(a, b) == 0 && g.mul(b, a) == 0) { g.inv[a] = b; break; }
        if (g.inv[a] == UINT32_MAX)
            throw ValidationError("element " + std::to_string(a) + " has no inverse");
    }
    return std::make_shared<FiniteGroup>(std::move(g));
}

GroupPtr cyclic_group(u32 n, u32 cap) {
    check(n >= 1, "cyclic group order must be >= 1");
    std::vector<u32> t(size_t(n) * n);
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b) t[size_t(a) * n + b] = (a + b) % n;
    return make_group(std::move(t), "cyclic:" + std::to_string(n), cap);
}

GroupPtr symmetric3() {
    // permutations of {0,1,2} in lexicographic order; 0 is the identity
    const u32 perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto find = [&](const u32* p) -> u32 {
        for (u32 i = 0; i < 6; ++i)
            if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2]) return i;
        return UINT32_MAX;
    };
    std::vector<u32> t(36);
    for (u32 a = 0; a < 6; ++a)
        for (u32 b = 0; b < 6; ++b) {
            u32 c[3];
            for (u32 x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
            t[size_t(a) * 6 + b] = find(c);
        }
    return make_group(std::move(t), "s3");
}

GroupPtr dihedral4() {
    // r^4 = s^2 = e, s r = r^{-1} s; element r^i s^j has index i + 4j
    std::vector<u32> t(64);
    auto idx = [](u32 i, u32 j) { return i + 4 * j; };
    for (u32 a = 0; a < 8; ++a)
        for (u32 b = 0; b < 8; ++b) {
            u32 ai = a % 4, aj = a / 4, bi = b % 4, bj = b / 4;
            u32 i = aj ? (ai + 4 - bi % 4) % 4 : (ai + bi) % 4;
            t[size_t(a) * 8 + b] = idx(i, (aj + bj) % 2);
        }
    return make_group(std::move(t), "d4");
}

GroupPtr quaternion8() {
    // elements 1,-1,i,-i,j,-j,k,-k as indices 0..7; sign bit is the low bit
    auto unit = [](u32 x) { return x / 2; };  // 0:1, 1:i, 2:j, 3:k
    auto sign = [](u32 x) { return x % 2; };
    auto mk = [](u32 u, u32 s) { return 2 * u + s; };
    // unit multiplication with result sign: 1*x=x; i*i=j*j=k*k=-1; i*j=k etc.
    auto umul = [](u32 a, u32 b, u32& s) -> u32 {
        s = 0;
        if (a == 0) return b;
        if (b == 0) return a;
        if (a == b) { s = 1; return 0; }
        // i=1, j=2, k=3: cyclic products
        static const u32 prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static const u32 psgn[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
        // psgn[a][b]: sign of e_a * e_b for a,b in {i,j,k}: ij=k, ji=-k, jk=i, kj=-i, ki=j, ik=-j
        s = psgn[a][b];
        return prod[a][b];
    };
    std::vector<u32> t(64);
    for (u32 a = 0; a < 8; ++a)
        for (u32 b = 0; b < 8; ++b) {
            u32 s;
            u32 u = umul(unit(a), unit(b), s);
            t[size_t(a) * 8 + b] = mk(u, (s + sign(a) + sign(b)) % 2);
        }
    return make_group(std::move(t), "q8");
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b, u32 cap) {
    u32 n = a->n * b->n;
    std::vector<u32> t(size_t(n) * n);
    auto idx = [&](u32 x, u32 y) { return x * b->n + y; };
    for (u32 x1 = 0; x1 < a->n; ++x1)
        for (u32 y1 = 0; y1 < b->n; ++y1)
            for (u32 x2 = 0; x2 < a->n; ++x2)
                for (u32 y2 = 0; y2 < b->n; ++y2)
                    t[size_t(idx(x1, y1)) * n + idx(x2, y2)] = idx(a->mul(x1, x2), b->mul(y1, y2));
    return make_group(std::move(t), a->label + "x" + b->label, cap);
}

GroupPtr builtin_group(const std::string& name, u32 cap) {
    if (name.rfind("cyclic:", 0) == 0) {
        u32 n = 0;
        try {
            n = static_cast<u32>(std::stoul(name.substr(7)));
        } catch (...) {
            throw ValidationError("bad cyclic group spec '" + name + "'");
        }
        return cyclic_group(n, cap);
    }
    if (name == "s3") return symmetric3();
    if (name == "d4") return dihedral4();
    if (name == "q8") return quaternion8();
    if (name == "klein4") return direct_product(cyclic_group(2), cyclic_group(2), cap);
    throw ValidationError("unknown builtin group '" + name + "'");
}

GroupHom make_hom(GroupPtr src, GroupPtr dst, std::vector<u32> img) {
    check(img.size() == src->n, "hom image table has wrong size");
    for (u32 v : img)
        if (v >= dst->n) throw ValidationError("hom image out of range");
    for (u32 a = 0; a < src->n; ++a)
        for (u32 b = 0; b < src->n; ++b)
            if (img[src->mul(a, b)] != dst->mul(img[a], img[b]))
                throw ValidationError("not a homomorphism at (" + std::to_string(a) + "," +
                                      std::to_string(b) + ")");
    return GroupHom{std::move(src), std::move(dst), std::move(img)};
}

GroupHom identity_hom(const GroupPtr& g) {
    std::vector<u32> img(g->n);
    for (u32 i = 0; i < g->n; ++i) img[i] = i;
    return GroupHom{g, g, std::move(img)};
}

Subgroup subgroup_of(const GroupPtr& g, std::vector<u32> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    std::set<u32> s(elements.begin(), elements.end());
    if (!s.count(0)) throw NotASubgroup("subset does not contain the identity");
    for (u32 a : elements) {
        if (a >= g->n) throw NotASubgroup("element out of range");
        if (!s.count(g->inverse(a))) throw NotASubgroup("subset not closed under inverse");
        for (u32 b : elements)
            if (!s.count(g->mul(a, b))) throw NotASubgroup("subset not closed under product");
    }
    u32 m = static_cast<u32>(elements.size());
    std::vector<u32> to_sub(g->n, UINT32_MAX);
    for (u32 i = 0; i < m; ++i) to_sub[elements[i]] = i;
    std::vector<u32> t(size_t(m) * m);
    for (u32 i = 0; i < m; ++i)
        for (u32 j = 0; j < m; ++j) t[size_t(i) * m + j] = to_sub[g->mul(elements[i], elements[j])];
    GroupPtr sub = make_group(std::move(t), g->label + "-sub" + std::to_string(m), g->n);
    GroupHom incl{sub, g, elements};
    return Subgroup{sub, std::move(incl), elements, std::move(to_sub)};
}

bool is_normal(const FiniteGroup& g, const std::vector<u32>& elements) {
    std::set<u32> s(elements.begin(), elements.end());
    for (u32 x = 0; x < g.n; ++x)
        for (u32 u : elements)
            if (!s.count(g.mul(g.mul(x, u), g.inverse(x)))) return false;
    return true;
}

QuotientDatum make_quotient(const GroupPtr& g, std::vector<u32> u_elements) {
    Subgroup u = subgroup_of(g, std::move(u_elements));
    if (!is_normal(*g, u.elements)) throw NotNormal("subgroup is not normal in " + g->label);
    // cosets keyed by least element, ascending
    std::vector<u32> coset_of(g->n, UINT32_MAX);
    std::vector<u32> reps;
    for (u32 x = 0; x < g->n; ++x) {
        if (coset_of[x] != UINT32_MAX) continue;
        u32 c = static_cast<u32>(reps.size());
        reps.push_back(x);  // x is least in its coset by scan order
        for (u32 e : u.elements) coset_of[g->mul(x, e)] = c;
    }
    u32 q = static_cast<u32>(reps.size());
    std::vector<u32> t(size_t(q) * q);
    for (u32 a = 0; a < q; ++a)
        for (u32 b = 0; b < q; ++b) t[size_t(a) * q + b] = coset_of[g->mul(reps[a], reps[b])];
    GroupPtr quot = make_group(std::move(t), g->label + "/U" + std::to_string(u.sub->n), g->n);
    GroupHom proj{g, quot, coset_of};
    return QuotientDatum{g, std::move(u), std::move(quot), std::move(proj), std::move(reps)};
}

std::vector<u32> left_coset_reps(const FiniteGroup& g, const std::vector<u32>& u_elements) {
    std::vector<bool> seen(g.n, false);
    std::vector<u32> reps;
    for (u32 x = 0; x < g.n; ++x) {
        if (seen[x]) continue;
        reps.push_back(x);
        for (u32 e : u_elements) seen[g.mul(x, e)] = true;
    }
    return reps;
}

u64 tuple_index(const std::vector<u32>& t, u32 n) {
    u64 idx = 0;
    for (u32 g : t) idx = idx * n + g;
    return idx;
}

std::vector<u32> tuple_unrank(u64 idx, u32 k, u32 n) {
    std::vector<u32> t(k, 0);
    for (u32 i = k; i-- > 0;) {
        t[i] = static_cast<u32>(idx % n);
        idx /= n;
    }
    return t;
}

u64 tuple_count(u32 n, u32 k) {
    u64 c = 1;
    for (u32 i = 0; i < k; ++i) c *= n;
    return c;
}

}  // namespace zcoh
