#include "zcoh/cup.hpp"

namespace zcoh {

ModuleMap equivariant_pairing(const GModulePtr& a, const GModulePtr& b, const GModulePtr& c,
                              const Mat& m) {
    try {
        return make_map(tensor_mod(a, b), c, m);
    } catch (const ValidationError& e) {
        throw NonEquivariantPairing(e.what());
    }
}

Mat cup_matrix(const GroupPtr& g, const GModulePtr& a, const GModulePtr& b, const GModulePtr& c,
               const Mat& pairing, u32 i, u32 j) {
    const Ring& R = a->ring;
    u32 ra = a->rank(), rb = b->rank(), rc = c->rank();
    u64 ta = tuple_count(g->n, i), tb = tuple_count(g->n, j), tc = tuple_count(g->n, i + j);
    // source coordinates: tensor of cochain modules:
    //   ((sigma, x), (tau, y)) -> (sigma * ta_rank + ...) handled through pair_index
    u32 src_cols = static_cast<u32>(ta * ra * tb * rb);
    Mat out(static_cast<u32>(tc * rc), src_cols);
    for (u64 t = 0; t < tc; ++t) {
        auto tup = tuple_unrank(t, i + j, g->n);
        std::vector<u32> sig(tup.begin(), tup.begin() + i);
        std::vector<u32> tau(tup.begin() + i, tup.end());
        u32 prod = 0;
        for (u32 k = 0; k < i; ++k) prod = g->mul(prod, sig[k]);
        u64 si = tuple_index(sig, g->n), ti = tuple_index(tau, g->n);
        const Mat& act = b->act[prod];
        // value = pairing(e_x (x) act e_y)
        for (u32 x = 0; x < ra; ++x)
            for (u32 y = 0; y < rb; ++y) {
                u32 src = pair_index(static_cast<u32>(si * ra + x), static_cast<u32>(ti * rb + y),
                                     static_cast<u32>(tb * rb));
                for (u32 z = 0; z < rc; ++z) {
                    u64 acc = 0;
                    for (u32 y2 = 0; y2 < rb; ++y2)
                        acc += u64(pairing.at(z, pair_index(x, y2, rb))) * act.at(y2, y) % R.mod;
                    u32 v = static_cast<u32>(acc % R.mod);
                    if (v) out.at(static_cast<u32>(t * rc + z), src) = R.add(out.at(static_cast<u32>(t * rc + z), src), v);
                }
            }
    }
    return out;
}

std::vector<u32> cup(const GroupPtr& g, const ModuleMap& pairing, const GModulePtr& a, u32 i,
                     const std::vector<u32>& alpha, const GModulePtr& b, u32 j,
                     const std::vector<u32>& beta) {
    const Ring& R = a->ring;
    u32 rc = pairing.tgt->rank();
    u64 tc = tuple_count(g->n, i + j);
    std::vector<u32> out(tc * rc, 0);
    for (u64 t = 0; t < tc; ++t) {
        auto tup = tuple_unrank(t, i + j, g->n);
        std::vector<u32> sig(tup.begin(), tup.begin() + i);
        std::vector<u32> tau(tup.begin() + i, tup.end());
        u32 prod = 0;
        for (u32 k = 0; k < i; ++k) prod = g->mul(prod, sig[k]);
        u64 si = tuple_index(sig, g->n), ti = tuple_index(tau, g->n);
        std::vector<u32> av(alpha.begin() + si * a->rank(), alpha.begin() + (si + 1) * a->rank());
        std::vector<u32> bv(beta.begin() + ti * b->rank(), beta.begin() + (ti + 1) * b->rank());
        bv = b->orders.canon(mat_apply(b->act[prod], bv, R), R);
        auto val = pairing(tensor_elem(a, b, av, bv));
        for (u32 z = 0; z < rc; ++z) out[t * rc + z] = val[z];
    }
    return out;
}

TotalCupData total_cup(const GroupPtr& g, const ComplexPairing& coeff, u32 cap) {
    const Ring& R = coeff.x->ring;
    TotalCupData d{cochain_total(g, coeff.x, cap), cochain_total(g, coeff.y, cap),
                   cochain_total(g, coeff.z, cap), {}, {}, {}};
    d.tensor_cn_cm = tensor_complex(d.cn.cx, d.cm.cx);
    // components on total degrees: C^{a+i}(G,N^a) (x) C^{b+j}(G,M^b) with the
    // sign (-1)^{ib} per (cochain degree i of the first, complex degree b of
    // the second)
    std::map<std::pair<int, int>, ModuleMap> comps;
    for (int n1 = d.cn.cx->lo; n1 <= d.cn.cx->hi; ++n1)
        for (int n2 = d.cm.cx->lo; n2 <= d.cm.cx->hi; ++n2) {
            GModulePtr srcmod = tensor_mod(d.cn.cx->term(n1), d.cm.cx->term(n2));
            GModulePtr tgtmod = d.ca.cx->term(n1 + n2);
            ModuleMap acc = zero_map(srcmod, tgtmod);
            auto it1 = d.cn.pieces.find(n1);
            auto it2 = d.cm.pieces.find(n2);
            if (it1 != d.cn.pieces.end() && it2 != d.cm.pieces.end()) {
                for (const auto& p1 : it1->second)
                    for (const auto& p2 : it2->second) {
                        int a = p1.a, b = p2.a;
                        u32 i = static_cast<u32>(n1 - a), j = static_cast<u32>(n2 - b);
                        const TotalPiece* q = d.ca.piece(n1 + n2, a + b);
                        if (!q || !coeff.z->in_range(a + b)) continue;
                        Mat cm = cup_matrix(g, coeff.x->term(a), coeff.y->term(b),
                                            coeff.z->term(a + b), coeff.component(a, b).m, i, j);
                        Mat sel = tensor_matrix(p1.prj.m, p2.prj.m, d.cn.cx->term(n1)->orders,
                                                d.cm.cx->term(n2)->orders, p1.prj.tgt->orders,
                                                p2.prj.tgt->orders, R);
                        Mat t = mat_mul(q->inc.m, mat_mul(cm, sel, R), R);
                        if ((i % 2) != 0 && (b % 2) != 0) t = mat_scale(R.mod - 1, t, R);
                        acc = map_add(acc, ModuleMap{srcmod, tgtmod, t});
                    }
            }
            comps.emplace(std::make_pair(n1, n2), std::move(acc));
        }
    d.cochain_pairing = make_pairing(d.cn.cx, d.cm.cx, d.ca.cx, std::move(comps));
    d.cup = pairing_chain_map(d.cochain_pairing, d.tensor_cn_cm);
    return d;
}

}  // namespace zcoh
