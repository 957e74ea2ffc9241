#include "zcoh/gen.hpp"

#include <algorithm>
#include <functional>

namespace zcoh {

std::vector<u32> random_vector(const Orders& o, const Ring& R, Rng& rng) {
    std::vector<u32> v(o.rank());
    for (u32 i = 0; i < o.rank(); ++i) v[i] = rng.below(R.pow_p(o.exp[i]));
    return v;
}

namespace {

// all characters G -> (Z/p^e)^* by backtracking over the element list
std::vector<Character> all_characters(const GroupPtr& g, const Ring& R, u32 limit = 8) {
    std::vector<u32> units;
    for (u32 u = 1; u < R.mod; ++u)
        if (R.is_unit(u)) units.push_back(u);
    std::vector<Character> out;
    std::vector<u32> vals(g->n, 0);
    vals[0] = 1;
    // assign values elementwise with consistency checks against the table
    std::function<void(u32)> rec = [&](u32 x) {
        if (out.size() >= limit) return;
        if (x == g->n) {
            try {
                out.push_back(make_character(g, vals, R));
            } catch (const Error&) {
            }
            return;
        }
        if (vals[x] != 0) { rec(x + 1); return; }
        for (u32 u : units) {
            bool ok = true;
            vals[x] = u;
            // quick local consistency: powers of x
            u32 y = x, acc = u;
            while (ok && y != 0) {
                y = g->mul(y, x);
                acc = R.mul(acc, u);
                if (vals[y] != 0 && vals[y] != acc) ok = false;
            }
            if (ok && acc != vals[0]) ok = false;  // order consistency at y = 0
            if (ok) rec(x + 1);
            vals[x] = 0;
            if (out.size() >= limit) return;
        }
    };
    rec(1);
    if (out.empty()) out.push_back(trivial_character(g));
    return out;
}

std::vector<std::vector<u32>> normal_subgroup_catalog(const GroupPtr& g) {
    // cyclic subgroups generated by single elements, filtered for normality
    std::vector<std::vector<u32>> out;
    out.push_back({0});
    for (u32 x = 1; x < g->n; ++x) {
        std::vector<u32> elems{0};
        u32 y = x;
        while (y != 0) {
            elems.push_back(y);
            y = g->mul(y, x);
        }
        std::sort(elems.begin(), elems.end());
        if (is_normal(*g, elems) && std::find(out.begin(), out.end(), elems) == out.end())
            out.push_back(elems);
    }
    return out;
}

}  // namespace

GModulePtr random_gmodule(const Ring& R, const GroupPtr& g, Rng& rng, u32 max_rank) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        u32 kind = rng.below(6);
        GModulePtr m;
        switch (kind) {
            case 0: {  // trivial module with random orders
                Orders o;
                u32 r = 1 + rng.below(std::min(max_rank, 2u));
                for (u32 i = 0; i < r; ++i) o.exp.push_back(1 + rng.below(R.e));
                m = trivial_module(R, o, g);
                break;
            }
            case 1: {  // character twist of a trivial module
                auto chars = all_characters(g, R);
                Orders o{{R.e}};
                m = twist_by_character(trivial_module(R, o, g), chars[rng.below((u32)chars.size())]);
                break;
            }
            case 2: {  // regular module of a quotient
                auto subs = normal_subgroup_catalog(g);
                auto q = make_quotient(g, subs[rng.below((u32)subs.size())]);
                m = restrict_module(regular_module(R, q.quot), q.proj);
                break;
            }
            case 3: {  // dual of a character twist
                auto chars = all_characters(g, R);
                Orders o{{1 + rng.below(R.e)}};
                auto base = twist_by_character(trivial_module(R, o, g),
                                               chars[rng.below((u32)chars.size())]);
                m = pontryagin_dual(base).dual;
                break;
            }
            case 4: {  // tensor of two small ones
                auto chars = all_characters(g, R);
                auto a = twist_by_character(trivial_module(R, Orders{{1 + rng.below(R.e)}}, g),
                                            chars[rng.below((u32)chars.size())]);
                auto subs = normal_subgroup_catalog(g);
                auto q = make_quotient(g, subs.back());
                auto b = restrict_module(regular_module(R, q.quot), q.proj);
                m = tensor_mod(a, b);
                break;
            }
            default: {  // dual of the regular module
                m = pontryagin_dual(regular_module(R, g)).dual;
                break;
            }
        }
        if (m->rank() > 0 && m->rank() <= max_rank) return m;
    }
    return trivial_module(R, Orders{{1}}, g);
}

ModuleMap random_equivariant_map(const GModulePtr& a, const GModulePtr& b, Rng& rng) {
    Mat basis = equivariant_hom_basis(a, b);
    std::vector<u32> c(basis.cols, 0);
    const Ring& R = a->ring;
    for (u32 r = 0; r < basis.rows; ++r)
        c = vec_add(c, vec_scale(rng.below(R.mod), basis.row(r), R), R);
    return make_map(a, b, hom_coords_to_matrix(a, b, c));
}

ComplexPtr random_complex(const Ring& R, const GroupPtr& g, Rng& rng, int lo, u32 max_terms,
                          u32 max_rank) {
    u32 nterms = 1 + rng.below(max_terms);
    std::vector<GModulePtr> terms;
    for (u32 i = 0; i < nterms; ++i) terms.push_back(random_gmodule(R, g, rng, max_rank));
    std::vector<ModuleMap> diffs;
    for (u32 i = 0; i + 1 < nterms; ++i) {
        if (i == 0) {
            diffs.push_back(random_equivariant_map(terms[0], terms[1], rng));
        } else {
            // sample d with d o d_prev = 0: restrict the equivariant hom
            // space by the linear condition coords(phi o d_prev) = 0
            const GModulePtr& A = terms[i];
            const GModulePtr& B = terms[i + 1];
            const GModulePtr& P = terms[i - 1];
            Mat basis = equivariant_hom_basis(A, B);
            Mat cond = hom_transport(A, B, P, B, diffs.back().m, Mat::identity(B->rank()));
            // rows: lambda-space gens; map lambda -> coords(phi o d_prev)
            GModulePtr homAB = hom_mod(A, B);
            GModulePtr homPB = hom_mod(P, B);
            Mat sys(homPB->rank(), basis.rows);
            for (u32 r = 0; r < basis.rows; ++r) {
                auto img = homPB->orders.canon(mat_apply(cond, basis.row(r), R), R);
                for (u32 s = 0; s < homPB->rank(); ++s) sys.at(s, r) = img[s];
            }
            Orders lam = Orders::free(basis.rows, R);
            Mat K = kernel_of_map(sys, lam, homPB->orders, R);
            std::vector<u32> c(homAB->rank(), 0);
            for (u32 r = 0; r < K.rows; ++r) {
                u32 coef = rng.below(R.mod);
                for (u32 s = 0; s < basis.rows; ++s) {
                    u32 lambda = R.mul(coef, K.at(r, s));
                    c = vec_add(c, vec_scale(lambda, basis.row(s), R), R);
                }
            }
            c = homAB->orders.canon(c, R);
            diffs.push_back(make_map(A, B, hom_coords_to_matrix(A, B, c)));
        }
    }
    return make_complex(R, g, lo, std::move(terms), std::move(diffs));
}

namespace {

// generator rows for degree-0 cycles of Hom(X, Y), intersected with the
// G-equivariant subspace
Mat chain_map_cycle_basis(const TotalComplex& hom_xy, const Ring& R, const GroupPtr& g) {
    GModulePtr h0 = hom_xy.cx->term(0);
    ModuleMap d0 = hom_xy.cx->diff(0);
    u32 r = h0->rank();
    // stack the differential with the action constraints
    u32 extra = (g->n > 1) ? g->n - 1 : 0;
    Mat stacked(d0.tgt->rank() + extra * r, r);
    Orders tgt;
    for (u32 i = 0; i < d0.tgt->rank(); ++i) {
        tgt.exp.push_back(d0.tgt->orders.exp[i]);
        for (u32 j = 0; j < r; ++j) stacked.at(i, j) = d0.m.at(i, j);
    }
    u32 off = d0.tgt->rank();
    for (u32 x = 1; x < g->n; ++x) {
        Mat dm = mat_sub(h0->act[x], Mat::identity(r), R);
        for (u32 i = 0; i < r; ++i) {
            tgt.exp.push_back(h0->orders.exp[i]);
            for (u32 j = 0; j < r; ++j) stacked.at(off + i, j) = dm.at(i, j) % R.pow_p(h0->orders.exp[i]);
        }
        off += r;
    }
    return kernel_of_map(stacked, h0->orders, tgt, R);
}

}  // namespace

ChainMap random_chain_map(const ComplexPtr& x, const ComplexPtr& y, Rng& rng) {
    const Ring& R = x->ring;
    TotalComplex h = hom_complex(x, y);
    if (!h.cx->in_range(0)) return zero_chain_map(x, y);
    Mat basis = chain_map_cycle_basis(h, R, x->group);
    GModulePtr h0 = h.cx->term(0);
    std::vector<u32> f0(h0->rank(), 0);
    for (u32 r = 0; r < basis.rows; ++r)
        f0 = vec_add(f0, vec_scale(rng.below(R.mod), basis.row(r), R), R);
    f0 = h0->orders.canon(f0, R);
    return chain_map_from_hom_cycle(h, x, y, f0);
}

ComplexPairing random_pairing(const ComplexPtr& x, const ComplexPtr& y, const ComplexPtr& z,
                              Rng& rng) {
    TotalComplex xy = tensor_complex(x, y);
    ChainMap f = random_chain_map(xy.cx, z, rng);
    std::map<std::pair<int, int>, ModuleMap> comp;
    for (int a = x->lo; a <= x->hi; ++a)
        for (int b = y->lo; b <= y->hi; ++b) {
            const TotalPiece* p = xy.piece(a + b, a);
            if (!p) continue;
            comp.emplace(std::make_pair(a, b), compose(f.component(a + b), p->inc));
        }
    return make_pairing(x, y, z, std::move(comp));
}

QuasiIsoSample random_quasi_iso(const ComplexPtr& x, Rng& rng) {
    const Ring& R = x->ring;
    // acyclic complex: cone of the identity on a random complex
    ComplexPtr a = random_complex(R, x->group, rng, x->lo, 2, 2);
    ConeData c = cone(identity_chain_map(a));
    const ComplexPtr& k = c.cone;
    int lo = std::min(x->lo, k->lo), hi = std::max(x->hi, k->hi);
    std::vector<GModulePtr> terms;
    std::vector<SumDecomp> sums;
    for (int i = lo; i <= hi; ++i) {
        SumDecomp s = direct_sum({x->term(i), k->term(i)}, R, x->group);
        terms.push_back(s.sum);
        sums.push_back(std::move(s));
    }
    std::vector<ModuleMap> diffs;
    for (int i = lo; i < hi; ++i) {
        const SumDecomp& s = sums[size_t(i - lo)];
        const SumDecomp& t = sums[size_t(i - lo + 1)];
        diffs.push_back(map_add(compose(t.inc[0], compose(x->diff(i), s.prj[0])),
                                compose(t.inc[1], compose(k->diff(i), s.prj[1]))));
    }
    ComplexPtr big = make_complex(R, x->group, lo, std::move(terms), std::move(diffs));
    std::map<int, ModuleMap> ic, pc;
    for (int i = lo; i <= hi; ++i) {
        const SumDecomp& s = sums[size_t(i - lo)];
        ic.emplace(i, ModuleMap{x->term(i), big->term(i), s.inc[0].m});
        pc.emplace(i, ModuleMap{big->term(i), x->term(i), s.prj[0].m});
    }
    ChainMap incl = make_chain_map(x, big, std::move(ic));
    ChainMap proj = make_chain_map(big, x, std::move(pc));
    return QuasiIsoSample{big, std::move(incl), std::move(proj)};
}

std::vector<GroupPtr> group_catalog_le8() {
    auto z2 = cyclic_group(2);
    auto z4 = cyclic_group(4);
    return {cyclic_group(1), z2,
            cyclic_group(3), z4,
            cyclic_group(5), cyclic_group(6),
            cyclic_group(7), cyclic_group(8),
            direct_product(z2, z2), direct_product(z2, direct_product(z2, z2)),
            direct_product(z2, z4), symmetric3(),
            dihedral4(), quaternion8()};
}

}  // namespace zcoh
