#include "zcoh/compact.hpp"

#include <algorithm>

namespace zcoh {

namespace {

GroupPtr trivial_group() {
    static GroupPtr e = cyclic_group(1);
    return e;
}

// restriction along phi as a raw matrix C^j(G, m) -> C^j(H, m|phi)
Mat restriction_block(const GroupHom& phi, const GModulePtr& m, u32 j) {
    u32 r = m->rank();
    u64 ut = tuple_count(phi.src->n, j);
    Mat blk(static_cast<u32>(ut * r), static_cast<u32>(tuple_count(phi.dst->n, j) * r));
    for (u64 t = 0; t < ut; ++t) {
        auto tup = tuple_unrank(t, j, phi.src->n);
        for (auto& x : tup) x = phi(x);
        u64 gi = tuple_index(tup, phi.dst->n);
        for (u32 a = 0; a < r; ++a)
            blk.at(static_cast<u32>(t * r + a), static_cast<u32>(gi * r + a)) = 1;
    }
    return blk;
}

// coefficient map block C^j(g, src) -> C^j(g, tgt) for f : src -> tgt
Mat coefficient_block(const GroupPtr& g, const Mat& f, u32 rs, u32 rt, u32 j) {
    u64 tuples = tuple_count(g->n, j);
    Mat blk(static_cast<u32>(tuples * rt), static_cast<u32>(tuples * rs));
    for (u64 t = 0; t < tuples; ++t)
        for (u32 a = 0; a < rt; ++a)
            for (u32 b = 0; b < rs; ++b)
                blk.at(static_cast<u32>(t * rt + a), static_cast<u32>(t * rs + b)) = f.at(a, b);
    return blk;
}

}  // namespace

LocalDatum make_local_datum(GroupPtr g, std::vector<Place> places) {
    for (auto& p : places) {
        check(p.into.dst->table == g->table, "place " + p.name + ": homomorphism target mismatch");
        if (p.tate_at)
            check(p.local->n >= 1, "place " + p.name + ": bad local group");
    }
    return LocalDatum{std::move(g), std::move(places)};
}

CompactComplex compact_complex(const LocalDatum& d, const GModulePtr& m, u32 cap) {
    const Ring& R = m->ring;
    CompactComplex out;
    out.cap = cap;
    out.global = cochain_complex(d.group, m, cap);
    int icap = static_cast<int>(cap);
    // local complexes
    int plo = 0, phi_deg = icap;
    for (const auto& p : d.places) {
        GModulePtr mv = restrict_module(m, p.into);
        if (p.tate_at) {
            out.locals.push_back(tate_complex(p.local, mv, -icap, icap));
            plo = std::min(plo, -icap);
        } else {
            out.locals.push_back(cochain_complex(p.local, mv, cap));
        }
    }
    // P = direct sum of the locals
    std::vector<GModulePtr> terms;
    std::vector<SumDecomp> decomp;
    for (int i = plo; i <= phi_deg; ++i) {
        std::vector<GModulePtr> parts;
        for (const auto& l : out.locals) parts.push_back(l->term(i));
        decomp.push_back(direct_sum(parts, R, trivial_group()));
        terms.push_back(decomp.back().sum);
    }
    std::vector<ModuleMap> diffs;
    for (int i = plo; i < phi_deg; ++i) {
        const SumDecomp& s = decomp[size_t(i - plo)];
        const SumDecomp& t = decomp[size_t(i - plo + 1)];
        ModuleMap acc = zero_map(terms[size_t(i - plo)], terms[size_t(i - plo + 1)]);
        for (size_t v = 0; v < out.locals.size(); ++v)
            acc = map_add(acc, compose(t.inc[v], compose(out.locals[v]->diff(i), s.prj[v])));
        diffs.push_back(std::move(acc));
    }
    out.local_sum = d.places.empty() ? zero_complex(R, trivial_group())
                                     : make_complex(R, trivial_group(), plo, std::move(terms),
                                                    std::move(diffs));
    out.local_decomp = std::move(decomp);
    // res_S
    std::map<int, ModuleMap> comps;
    for (int j = 0; j <= icap && !d.places.empty(); ++j) {
        ModuleMap acc = zero_map(out.global->term(j), out.local_sum->term(j));
        for (size_t v = 0; v < d.places.size(); ++v) {
            GModulePtr mv = restrict_module(m, d.places[v].into);
            Mat blk = restriction_block(d.places[v].into, m, static_cast<u32>(j));
            ModuleMap piece{out.global->term(j), out.locals[v]->term(j), blk};
            acc = map_add(acc, compose(compose(out.local_decomp[size_t(j - plo)].inc[v],
                                               identity_map(out.locals[v]->term(j))),
                                       piece));
        }
        comps.emplace(j, std::move(acc));
    }
    out.res_s = make_chain_map(out.global, out.local_sum, std::move(comps));
    out.cone = shifted_cone(out.res_s);
    out.cx = out.cone.e;
    return out;
}

CompactComplex compact_complex(const LocalDatum& d, const ComplexPtr& m, u32 cap) {
    const Ring& R = m->ring;
    for (const auto& p : d.places)
        if (p.tate_at)
            throw MalformedDatum("complex coefficients with a complete-complex place are not supported");
    CompactComplex out;
    out.cap = cap;
    TotalComplex gt = cochain_total(d.group, m, cap);
    out.global = gt.cx;
    std::vector<TotalComplex> ltotals;
    for (const auto& p : d.places) {
        // restrict the complex along phi
        std::vector<GModulePtr> terms;
        std::vector<ModuleMap> diffs;
        for (int i = m->lo; i <= m->hi; ++i) terms.push_back(restrict_module(m->term(i), p.into));
        for (int i = m->lo; i < m->hi; ++i)
            diffs.push_back(make_map(terms[size_t(i - m->lo)], terms[size_t(i - m->lo + 1)],
                                     m->diff(i).m));
        ComplexPtr mv = make_complex(R, p.local, m->lo, std::move(terms), std::move(diffs));
        ltotals.push_back(cochain_total(p.local, mv, cap));
        out.locals.push_back(ltotals.back().cx);
    }
    int plo = m->lo, phi_deg = m->hi + static_cast<int>(cap);
    std::vector<GModulePtr> terms;
    std::vector<SumDecomp> decomp;
    for (int i = plo; i <= phi_deg; ++i) {
        std::vector<GModulePtr> parts;
        for (const auto& l : out.locals) parts.push_back(l->term(i));
        decomp.push_back(direct_sum(parts, R, trivial_group()));
        terms.push_back(decomp.back().sum);
    }
    std::vector<ModuleMap> diffs;
    for (int i = plo; i < phi_deg; ++i) {
        const SumDecomp& s = decomp[size_t(i - plo)];
        const SumDecomp& t = decomp[size_t(i - plo + 1)];
        ModuleMap acc = zero_map(terms[size_t(i - plo)], terms[size_t(i - plo + 1)]);
        for (size_t v = 0; v < out.locals.size(); ++v)
            acc = map_add(acc, compose(t.inc[v], compose(out.locals[v]->diff(i), s.prj[v])));
        diffs.push_back(std::move(acc));
    }
    out.local_sum = d.places.empty() ? zero_complex(R, trivial_group())
                                     : make_complex(R, trivial_group(), plo, std::move(terms),
                                                    std::move(diffs));
    out.local_decomp = std::move(decomp);
    std::map<int, ModuleMap> comps;
    for (int n = out.global->lo; n <= out.global->hi && !d.places.empty(); ++n) {
        ModuleMap acc = zero_map(out.global->term(n), out.local_sum->term(n));
        auto git = gt.pieces.find(n);
        if (git != gt.pieces.end()) {
            for (size_t v = 0; v < d.places.size(); ++v) {
                auto lit = ltotals[v].pieces.find(n);
                if (lit == ltotals[v].pieces.end()) continue;
                for (const auto& gp : git->second) {
                    const TotalPiece* lp = ltotals[v].piece(n, gp.a);
                    if (!lp) continue;
                    GModulePtr mj = m->term(gp.a);
                    Mat blk = restriction_block(d.places[v].into, mj, static_cast<u32>(n - gp.a));
                    ModuleMap piece{gp.prj.tgt, lp->inc.src, blk};
                    acc = map_add(acc,
                                  compose(out.local_decomp[size_t(n - plo)].inc[v],
                                          compose(lp->inc, compose(piece, gp.prj))));
                }
            }
        }
        comps.emplace(n, std::move(acc));
    }
    out.res_s = make_chain_map(out.global, out.local_sum, std::move(comps));
    out.cone = shifted_cone(out.res_s);
    out.cx = out.cone.e;
    return out;
}

FinAb compact_cohomology(const LocalDatum& d, const GModulePtr& m, int i, u32 cap) {
    CompactComplex cc = compact_complex(d, m, cap);
    return cohomology_at(*cc.cx, i).group;
}

CompactLES compact_les(const LocalDatum& d, const GModulePtr& m, u32 cap) {
    CompactComplex cc = compact_complex(d, m, cap);
    CompactLES out;
    ComplexSES ses = make_ses(cc.cone.from_b, cc.cone.to_a);
    out.les = les_report(ses);
    for (int i = cc.cx->lo; i <= cc.cx->hi; ++i) out.h_c[i] = cohomology_at(*cc.cx, i).group;
    for (int i = 0; i <= static_cast<int>(cap); ++i)
        out.h_global[i] = cohomology_at(*cc.global, i).group;
    for (int i = cc.local_sum->lo; i <= cc.local_sum->hi; ++i)
        out.h_local[i] = cohomology_at(*cc.local_sum, i).group;
    return out;
}

namespace {

// place-diagonal cup pairing on the local sums
ComplexPairing local_cup_pairing(const LocalDatum& d, const CompactComplex& cn,
                                 const CompactComplex& cm, const CompactComplex& cd,
                                 const GModulePtr& n, const GModulePtr& m, const GModulePtr& dd,
                                 const Mat& pairing, u32 cap) {
    const Ring& R = n->ring;
    std::map<std::pair<int, int>, ModuleMap> comp;
    for (int i = 0; i <= static_cast<int>(cap); ++i)
        for (int j = 0; i + j <= static_cast<int>(cap); ++j) {
            GModulePtr src = tensor_mod(cn.local_sum->term(i), cm.local_sum->term(j));
            GModulePtr tgt = cd.local_sum->term(i + j);
            ModuleMap acc = zero_map(src, tgt);
            for (size_t v = 0; v < d.places.size(); ++v) {
                const Place& p = d.places[v];
                GModulePtr nv = restrict_module(n, p.into);
                GModulePtr mv = restrict_module(m, p.into);
                GModulePtr dv = restrict_module(dd, p.into);
                Mat cupm = cup_matrix(p.local, nv, mv, dv, pairing, static_cast<u32>(i),
                                      static_cast<u32>(j));
                Mat sel = tensor_matrix(cn.local_decomp[size_t(i)].prj[v].m,
                                        cm.local_decomp[size_t(j)].prj[v].m,
                                        cn.local_sum->term(i)->orders, cm.local_sum->term(j)->orders,
                                        cn.locals[v]->term(i)->orders, cm.locals[v]->term(j)->orders, R);
                Mat t = mat_mul(cd.local_decomp[size_t(i + j)].inc[v].m, mat_mul(cupm, sel, R), R);
                acc = map_add(acc, ModuleMap{src, tgt, t});
            }
            comp.emplace(std::make_pair(i, j), std::move(acc));
        }
    return make_pairing(cn.local_sum, cm.local_sum, cd.local_sum, std::move(comp));
}

ComplexPairing global_cup_pairing(const LocalDatum& d, const CompactComplex& cn,
                                  const CompactComplex& cm, const CompactComplex& cd,
                                  const GModulePtr& n, const GModulePtr& m, const GModulePtr& dd,
                                  const Mat& pairing, u32 cap) {
    std::map<std::pair<int, int>, ModuleMap> comp;
    for (int i = 0; i <= static_cast<int>(cap); ++i)
        for (int j = 0; i + j <= static_cast<int>(cap); ++j) {
            GModulePtr src = tensor_mod(cn.global->term(i), cm.global->term(j));
            Mat cupm = cup_matrix(d.group, n, m, dd, pairing, static_cast<u32>(i),
                                  static_cast<u32>(j));
            comp.emplace(std::make_pair(i, j),
                         ModuleMap{src, cd.global->term(i + j), std::move(cupm)});
        }
    return make_pairing(cn.global, cm.global, cd.global, std::move(comp));
}

}  // namespace

CompactCups compact_cups(const LocalDatum& d, const GModulePtr& n, const GModulePtr& m,
                         const ModuleMap& pairing, u32 cap) {
    for (const auto& p : d.places)
        if (p.tate_at)
            throw MalformedDatum(
                "compact cup products at complete-complex places need negative-degree local cups "
                "(cyclic-only in this engine)");
    const Ring& R = n->ring;
    const GModulePtr& dd = pairing.tgt;
    CompactCups out{compact_complex(d, n, cap), compact_complex(d, m, cap),
                    compact_complex(d, dd, cap), {}, {}, {}, {}, {}};
    out.cup_global = global_cup_pairing(d, out.cn, out.cm, out.cd, n, m, dd, pairing.m, cap);
    out.cup_local = local_cup_pairing(d, out.cn, out.cm, out.cd, n, m, dd, pairing.m, cap);
    const ComplexPairing& cupA = out.cup_global;
    const ComplexPairing& cupB = out.cup_local;
    out.cone_cups = cone_cup(out.cn.res_s, out.cm.res_s, out.cd.res_s, cupA, cupB);
    // cup_c : C(N)^a (x) C_c(M)^b -> C_c(D)^{a+b}
    //   a cup_c (b, b_S) = (a cup b, (-1)^a res_S(a) cup_S b_S)
    std::map<std::pair<int, int>, ModuleMap> cc;
    for (int a = 0; a <= static_cast<int>(cap); ++a)
        for (int b = out.cm.cx->lo; b <= out.cm.cx->hi; ++b) {
            GModulePtr src = tensor_mod(out.cn.global->term(a), out.cm.cx->term(b));
            GModulePtr tgt = out.cd.cx->term(a + b);
            ModuleMap acc = zero_map(src, tgt);
            auto pm = out.cm.cone.parts.find(b);
            auto pd = out.cd.cone.parts.find(a + b);
            if (pm != out.cm.cone.parts.end() && pd != out.cd.cone.parts.end()) {
                // global part
                if (out.cd.global->in_range(a + b) && out.cm.global->in_range(b)) {
                    Mat sel = tensor_matrix(Mat::identity(out.cn.global->term(a)->rank()),
                                            pm->second.first.prj.m, out.cn.global->term(a)->orders,
                                            out.cm.cx->term(b)->orders,
                                            out.cn.global->term(a)->orders,
                                            out.cm.global->term(b)->orders, R);
                    Mat t = mat_mul(pd->second.first.inc.m,
                                    mat_mul(cupA.component(a, b).m, sel, R), R);
                    acc = map_add(acc, ModuleMap{src, tgt, t});
                }
                // local part
                if (out.cd.local_sum->in_range(a + b - 1) && out.cm.local_sum->in_range(b - 1)) {
                    Mat sel = tensor_matrix(Mat::identity(out.cn.global->term(a)->rank()),
                                            pm->second.second.prj.m, out.cn.global->term(a)->orders,
                                            out.cm.cx->term(b)->orders,
                                            out.cn.global->term(a)->orders,
                                            out.cm.local_sum->term(b - 1)->orders, R);
                    Mat resa = tensor_matrix(out.cn.res_s.component(a).m,
                                             Mat::identity(out.cm.local_sum->term(b - 1)->rank()),
                                             out.cn.global->term(a)->orders,
                                             out.cm.local_sum->term(b - 1)->orders,
                                             out.cn.local_sum->term(a)->orders,
                                             out.cm.local_sum->term(b - 1)->orders, R);
                    Mat t = mat_mul(pd->second.second.inc.m,
                                    mat_mul(cupB.component(a, b - 1).m, mat_mul(resa, sel, R), R), R);
                    if (a % 2 != 0) t = mat_scale(R.mod - 1, t, R);
                    acc = map_add(acc, ModuleMap{src, tgt, t});
                }
            }
            cc.emplace(std::make_pair(a, b), std::move(acc));
        }
    out.cup_c = make_pairing(out.cn.global, out.cm.cx, out.cd.cx, std::move(cc));
    // c_cup : C_c(N)^a (x) C(M)^b -> C_c(D)^{a+b}
    //   (a, a_S) c_cup b = (a cup b, a_S cup_S res_S(b))
    std::map<std::pair<int, int>, ModuleMap> cc2;
    for (int a = out.cn.cx->lo; a <= out.cn.cx->hi; ++a)
        for (int b = 0; b <= static_cast<int>(cap); ++b) {
            GModulePtr src = tensor_mod(out.cn.cx->term(a), out.cm.global->term(b));
            GModulePtr tgt = out.cd.cx->term(a + b);
            ModuleMap acc = zero_map(src, tgt);
            auto pn = out.cn.cone.parts.find(a);
            auto pd = out.cd.cone.parts.find(a + b);
            if (pn != out.cn.cone.parts.end() && pd != out.cd.cone.parts.end()) {
                if (out.cd.global->in_range(a + b) && out.cn.global->in_range(a)) {
                    Mat sel = tensor_matrix(pn->second.first.prj.m,
                                            Mat::identity(out.cm.global->term(b)->rank()),
                                            out.cn.cx->term(a)->orders,
                                            out.cm.global->term(b)->orders,
                                            out.cn.global->term(a)->orders,
                                            out.cm.global->term(b)->orders, R);
                    Mat t = mat_mul(pd->second.first.inc.m,
                                    mat_mul(cupA.component(a, b).m, sel, R), R);
                    acc = map_add(acc, ModuleMap{src, tgt, t});
                }
                if (out.cd.local_sum->in_range(a + b - 1) && out.cn.local_sum->in_range(a - 1)) {
                    Mat sel = tensor_matrix(pn->second.second.prj.m,
                                            Mat::identity(out.cm.global->term(b)->rank()),
                                            out.cn.cx->term(a)->orders,
                                            out.cm.global->term(b)->orders,
                                            out.cn.local_sum->term(a - 1)->orders,
                                            out.cm.global->term(b)->orders, R);
                    Mat resb = tensor_matrix(Mat::identity(out.cn.local_sum->term(a - 1)->rank()),
                                             out.cm.res_s.component(b).m,
                                             out.cn.local_sum->term(a - 1)->orders,
                                             out.cm.global->term(b)->orders,
                                             out.cn.local_sum->term(a - 1)->orders,
                                             out.cm.local_sum->term(b)->orders, R);
                    Mat t = mat_mul(pd->second.second.inc.m,
                                    mat_mul(cupB.component(a - 1, b).m, mat_mul(resb, sel, R), R), R);
                    acc = map_add(acc, ModuleMap{src, tgt, t});
                }
            }
            cc2.emplace(std::make_pair(a, b), std::move(acc));
        }
    out.c_cup = make_pairing(out.cn.cx, out.cm.global, out.cd.cx, std::move(cc2));
    return out;
}

TraceData canonical_trace(const CompactComplex& cd, int degree) {
    const Ring& R = cd.cx->ring;
    Truncation t = truncate(cd.cx, Trunc::tau_ge, degree);
    CohomDegree hk = cohomology_at(*t.cx, degree);
    GModulePtr T = trivial_module(R, Orders{hk.group.inv}, trivial_group());
    GModulePtr coker = t.cx->term(degree);
    // solve for Q : coker -> T with Q(rep_t) = e_t, respecting order congruences
    u32 rt = T->rank(), rc = coker->rank();
    u32 nunk = rt * rc;
    std::vector<u32> scale(nunk);
    for (u32 z = 0; z < rt; ++z)
        for (u32 c = 0; c < rc; ++c) {
            u32 tz = T->orders.exp[z], cc = coker->orders.exp[c];
            scale[z * rc + c] = R.pow_p(tz > cc ? tz - cc : 0);
        }
    u32 neq = rt * static_cast<u32>(hk.group.inv.size());
    Mat M(nunk, neq);
    std::vector<u32> rhs(neq, 0);
    for (u32 s = 0; s < hk.group.inv.size(); ++s) {
        auto rep = hk.rep(s);
        for (u32 z = 0; z < rt; ++z) {
            u32 eq = s * rt + z;
            u32 eqscale = R.pow_p(R.e - T->orders.exp[z]);
            for (u32 c = 0; c < rc; ++c)
                M.at(z * rc + c, eq) = R.mul(eqscale, R.mul(scale[z * rc + c], rep[c]));
            rhs[eq] = (z == s) ? R.mul(eqscale, 1) : 0;
        }
    }
    auto sol = solve_rows(M, rhs, R);
    if (!sol) throw TraceNotQuasiIso("no trace map extends the class isomorphism at degree " +
                                     std::to_string(degree));
    Mat Q(rt, rc);
    for (u32 z = 0; z < rt; ++z)
        for (u32 c = 0; c < rc; ++c) Q.at(z, c) = R.mul(scale[z * rc + c], (*sol)[z * rc + c]);
    ComplexPtr shifted = one_term_complex(T, degree);
    ChainMap q = make_chain_map(t.cx, shifted,
                                {{degree, make_map(coker, T, std::move(Q), false)}});
    if (!is_quasi_iso(q))
        throw TraceNotQuasiIso("trace candidate is not a quasi-isomorphism (truncation not "
                               "concentrated in degree " + std::to_string(degree) + ")");
    ChainMap theta = compose(q, t.comparison);
    return TraceData{degree, hk.group, std::move(theta), std::move(shifted)};
}

namespace {

ComplexPairing pairing_postcompose(const ComplexPairing& p, const ChainMap& f) {
    std::map<std::pair<int, int>, ModuleMap> comp;
    for (const auto& [key, mu] : p.comp)
        comp.emplace(key, compose(f.component(key.first + key.second), mu));
    return make_pairing(p.x, p.y, f.tgt, std::move(comp));
}

}  // namespace

DualityTriangleReport duality_triangle(const LocalDatum& d, const GModulePtr& m,
                                       const TraceData& trace, const CompactCups& cups) {
    (void)d;
    (void)m;
    DualityTriangleReport rep;
    // left triangle: C_c(M) -> C(M) -> P(M) -> C_c(M)[1]
    rep.left = triangle_of_map_rotated(cups.cm.res_s);
    // row_x: adjoint of theta o cup_c, into Hom(C(N), T[-k])
    ComplexPairing nu_x = pairing_postcompose(cups.cup_c, trace.theta);
    TotalComplex hom_cn = hom_complex(cups.cn.global, trace.shifted);
    rep.row_x = pairing_adjoint_second(nu_x, hom_cn);
    // row_y: adjoint of theta o c_cup, into Hom(C_c(N), T[-k])
    ComplexPairing nu_y = pairing_postcompose(cups.c_cup, trace.theta);
    TotalComplex hom_ccn = hom_complex(cups.cn.cx, trace.shifted);
    rep.row_y = pairing_adjoint_second(nu_y, hom_ccn);
    // row_z: adjoint of theta o (local slot) o cup_S on P(N)[-1] (x) P(M)
    ComplexPtr pn_shift = shift(cups.cn.local_sum, -1);
    std::map<std::pair<int, int>, ModuleMap> nz;
    for (int a = pn_shift->lo; a <= pn_shift->hi; ++a)
        for (int b = cups.cm.local_sum->lo; b <= cups.cm.local_sum->hi; ++b) {
            GModulePtr src = tensor_mod(pn_shift->term(a), cups.cm.local_sum->term(b));
            GModulePtr tgt = trace.shifted->term(a + b);
            ModuleMap acc = zero_map(src, tgt);
            auto pd = cups.cd.cone.parts.find(a + b);
            if (pd != cups.cd.cone.parts.end() && cups.cn.local_sum->in_range(a - 1) &&
                cups.cd.local_sum->in_range(a + b - 1) && trace.shifted->in_range(a + b)) {
                const Ring& R = m->ring;
                Mat t = mat_mul(trace.theta.component(a + b).m,
                                mat_mul(pd->second.second.inc.m,
                                        cups.cup_local.component(a - 1, b).m, R),
                                R);
                acc = map_add(acc, ModuleMap{src, tgt, t});
            }
            nz.emplace(std::make_pair(a, b), std::move(acc));
        }
    ComplexPairing nu_z = make_pairing(pn_shift, cups.cm.local_sum, trace.shifted, std::move(nz));
    TotalComplex hom_pn1 = hom_complex(pn_shift, trace.shifted);
    rep.row_z = pairing_adjoint_second(nu_z, hom_pn1);
    // right triangle: Hom(C(N),T) -> Hom(C_c(N),T) -> Hom(P(N)[-1],T) -> Hom(C(N)[-1],T)
    ChainMap uP = hom_precompose_map(cups.cn.cone.to_a, trace.shifted, hom_cn, hom_ccn);
    ChainMap vP = hom_precompose_map(cups.cn.cone.from_b, trace.shifted, hom_ccn, hom_pn1);
    ComplexPtr cn_shift = shift(cups.cn.global, -1);
    ChainMap res_shift = shift_chain_map(cups.cn.res_s, -1, cn_shift, pn_shift);
    TotalComplex hom_cn1 = hom_complex(cn_shift, trace.shifted);
    ChainMap wP = hom_precompose_map(res_shift, trace.shifted, hom_pn1, hom_cn1);
    rep.right = ExactTriangle{hom_cn.cx, hom_ccn.cx, hom_pn1.cx, hom_cn1.cx, uP, vP, wP};
    TriangleMorphism tm = make_triangle_morphism(rep.left, rep.right, rep.row_x, rep.row_y,
                                                 rep.row_z);
    rep.sq_u = tm.hu;
    rep.sq_v = tm.hv;
    rep.sq_w = tm.hw;
    rep.two_of_three = two_out_of_three(tm);
    rep.all_squares_commute = true;
    return rep;
}

DualityTriangleReport duality_triangle(const LocalDatum& d, const GModulePtr& m, int trace_degree,
                                       u32 cap) {
    DualData dd = pontryagin_dual(m);
    ModuleMap pairing = dd.evaluation;  // M^vee (x) M -> R
    CompactCups cups = compact_cups(d, dd.dual, m, pairing, cap);
    TraceData trace = canonical_trace(cups.cd, trace_degree);
    return duality_triangle(d, m, trace, cups);
}

InducedDatum induce_local_datum(const LocalDatum& d, const QuotientDatum& q) {
    InducedDatum out;
    out.datum.group = q.u.sub;
    for (u32 vi = 0; vi < d.places.size(); ++vi) {
        const Place& p = d.places[vi];
        const GroupPtr& G = d.group;
        // orbits of phi(H_v) on G/U by left multiplication
        u32 ncos = q.quot->n;
        std::vector<bool> seen(ncos, false);
        // subgroup phi^{-1}(U) of the local group (independent of the orbit
        // since U is normal)
        std::vector<u32> kelems;
        for (u32 h = 0; h < p.local->n; ++h) {
            if (q.u.parent_to_sub[p.into(h)] != UINT32_MAX) kelems.push_back(h);
        }
        Subgroup K = subgroup_of(p.local, kelems);
        for (u32 c = 0; c < ncos; ++c) {
            if (seen[c]) continue;
            // orbit of coset c
            u32 sigma = q.coset_rep[c];
            for (u32 h = 0; h < p.local->n; ++h) seen[q.proj(G->mul(p.into(h), sigma))] = true;
            // conjugated embedding into U
            std::vector<u32> img(K.sub->n);
            for (u32 x = 0; x < K.sub->n; ++x) {
                u32 h = K.elements[x];
                u32 gi = G->mul(G->mul(G->inverse(sigma), p.into(h)), sigma);
                u32 ui = q.u.parent_to_sub[gi];
                check(ui != UINT32_MAX, "induced place: conjugate escaped the subgroup");
                img[x] = ui;
            }
            GroupHom psi = make_hom(K.sub, q.u.sub, std::move(img));
            Place np{K.sub, std::move(psi), p.tate_at,
                     p.name + "|" + std::to_string(sigma)};
            out.places.push_back(InducedPlace{vi, sigma, np, K});
            out.datum.places.push_back(out.places.back().place);
        }
    }
    return out;
}

CompactShapiroReport shapiro_compact(const LocalDatum& d, const QuotientDatum& q,
                                     const GModulePtr& m, u32 cap) {
    const Ring& R = m->ring;
    for (const auto& p : d.places)
        if (p.tate_at) throw MalformedDatum("shapiro_compact with complete-complex places is not supported");
    CompactShapiroReport rep;
    InducedDatum ind = induce_local_datum(d, q);
    GModulePtr mu = induce_tensor(q, m);
    CompactComplex top = compact_complex(d, mu, cap);      // C_c(G, S; M_U)
    CompactComplex bot = compact_complex(ind.datum, m, cap);  // C_c(U, S_U; M)
    u32 ncos = q.quot->n, r = m->rank();
    // global component: the Shapiro evaluation (identity coset extraction)
    ShapiroData global_sh = shapiro_map(q, m, cap);
    // local components: per induced place, extract the sigma-coset block and
    // translate by sigma^{-1}
    auto local_block = [&](const InducedPlace& ip, u32 j) {
        const Place& src_place = d.places[ip.place_index];
        const GroupPtr& H = src_place.local;
        const GroupPtr& K = ip.place.local;
        u32 cidx = q.proj(ip.sigma);
        const Mat& tr = m->act[d.group->inverse(ip.sigma)];
        u64 kt = tuple_count(K->n, j);
        Mat blk(static_cast<u32>(kt * r), static_cast<u32>(tuple_count(H->n, j) * ncos * r));
        for (u64 t = 0; t < kt; ++t) {
            auto tup = tuple_unrank(t, j, K->n);
            std::vector<u32> htup(j);
            for (u32 x = 0; x < j; ++x) htup[x] = ip.local_sub.elements[tup[x]];
            u64 hi = tuple_index(htup, H->n);
            for (u32 a = 0; a < r; ++a)
                for (u32 b = 0; b < r; ++b) {
                    u32 col = static_cast<u32>(hi * ncos * r + cidx * r + b);
                    blk.at(static_cast<u32>(t * r + a), col) =
                        R.add(blk.at(static_cast<u32>(t * r + a), col), tr.at(a, b));
                }
        }
        return blk;
    };
    std::map<int, ModuleMap> comps;
    for (int deg = top.cx->lo; deg <= top.cx->hi; ++deg) {
        ModuleMap acc = zero_map(top.cx->term(deg), bot.cx->term(deg));
        auto pt = top.cone.parts.find(deg);
        auto pb = bot.cone.parts.find(deg);
        if (pt == top.cone.parts.end() || pb == bot.cone.parts.end()) {
            comps.emplace(deg, std::move(acc));
            continue;
        }
        // global part
        if (deg >= 0 && deg <= static_cast<int>(cap)) {
            Mat t = mat_mul(pb->second.first.inc.m,
                            mat_mul(global_sh.sh.component(deg).m, pt->second.first.prj.m, R), R);
            acc = map_add(acc, ModuleMap{top.cx->term(deg), bot.cx->term(deg), t});
        }
        // local parts
        int j = deg - 1;
        if (j >= 0 && j <= static_cast<int>(cap)) {
            for (u32 np = 0; np < ind.places.size(); ++np) {
                const InducedPlace& ip = ind.places[np];
                Mat blk = local_block(ip, static_cast<u32>(j));
                Mat t = mat_mul(
                    pb->second.second.inc.m,
                    mat_mul(bot.local_decomp[size_t(j - bot.local_sum->lo)].inc[np].m,
                            mat_mul(blk,
                                    mat_mul(top.local_decomp[size_t(j - top.local_sum->lo)]
                                                .prj[ip.place_index]
                                                .m,
                                            pt->second.second.prj.m, R),
                                    R),
                            R),
                    R);
                acc = map_add(acc, ModuleMap{top.cx->term(deg), bot.cx->term(deg), t});
            }
        }
        comps.emplace(deg, std::move(acc));
    }
    rep.sh_c = make_chain_map(top.cx, bot.cx, std::move(comps));
    rep.quasi = quasi_iso_report_window(rep.sh_c, 0, static_cast<int>(cap) - 1);
    // local decomposition: C(H_v, M_U) -> (+)_i C(K, M) is a quasi-iso per place
    rep.local_decomposition_ok = true;
    for (u32 vi = 0; vi < d.places.size(); ++vi) {
        const Place& p = d.places[vi];
        GModulePtr mu_v = restrict_module(mu, p.into);
        ComplexPtr src = cochain_complex(p.local, mu_v, cap);
        std::vector<ComplexPtr> tgts;
        std::vector<u32> idxs;
        for (u32 np = 0; np < ind.places.size(); ++np)
            if (ind.places[np].place_index == vi) {
                GModulePtr mk = restrict_module(m, ind.places[np].place.into);
                tgts.push_back(cochain_complex(ind.places[np].place.local, mk, cap));
                idxs.push_back(np);
            }
        // direct sum target
        std::vector<GModulePtr> terms;
        std::vector<SumDecomp> dec;
        for (int i = 0; i <= static_cast<int>(cap); ++i) {
            std::vector<GModulePtr> parts;
            for (auto& t : tgts) parts.push_back(t->term(i));
            dec.push_back(direct_sum(parts, R, src->group));
            terms.push_back(dec.back().sum);
        }
        std::vector<ModuleMap> diffs;
        for (int i = 0; i < static_cast<int>(cap); ++i) {
            ModuleMap acc = zero_map(terms[size_t(i)], terms[size_t(i + 1)]);
            for (size_t t = 0; t < tgts.size(); ++t)
                acc = map_add(acc, compose(dec[size_t(i + 1)].inc[t],
                                           compose(tgts[t]->diff(i), dec[size_t(i)].prj[t])));
            diffs.push_back(std::move(acc));
        }
        ComplexPtr sum = make_complex(R, src->group, 0, std::move(terms), std::move(diffs));
        std::map<int, ModuleMap> dcomps;
        for (int i = 0; i <= static_cast<int>(cap); ++i) {
            ModuleMap acc = zero_map(src->term(i), sum->term(i));
            for (size_t t = 0; t < tgts.size(); ++t) {
                Mat blk = local_block(ind.places[idxs[t]], static_cast<u32>(i));
                ModuleMap piece{src->term(i), tgts[t]->term(i), blk};
                acc = map_add(acc, compose(dec[size_t(i)].inc[t], piece));
            }
            dcomps.emplace(i, std::move(acc));
        }
        ChainMap dmap = make_chain_map(src, sum, std::move(dcomps));
        if (!quasi_iso_report_window(dmap, 0, static_cast<int>(cap) - 1).is_quasi_iso)
            rep.local_decomposition_ok = false;
    }
    // res_c and cor_c between C_c(G, S; M) and C_c(U, S_U; M)
    CompactComplex topm = compact_complex(d, m, cap);
    {
        std::map<int, ModuleMap> rc;
        ChainMap gres = restriction_map(q.u.incl, m, cap);
        for (int deg = topm.cx->lo; deg <= topm.cx->hi; ++deg) {
            ModuleMap acc = zero_map(topm.cx->term(deg), bot.cx->term(deg));
            auto pt = topm.cone.parts.find(deg);
            auto pb = bot.cone.parts.find(deg);
            if (pt == topm.cone.parts.end() || pb == bot.cone.parts.end()) {
                rc.emplace(deg, std::move(acc));
                continue;
            }
            if (deg >= 0 && deg <= static_cast<int>(cap)) {
                Mat t = mat_mul(pb->second.first.inc.m,
                                mat_mul(gres.component(deg).m, pt->second.first.prj.m, R), R);
                acc = map_add(acc, ModuleMap{topm.cx->term(deg), bot.cx->term(deg), t});
            }
            int j = deg - 1;
            if (j >= 0 && j <= static_cast<int>(cap)) {
                for (u32 np = 0; np < ind.places.size(); ++np) {
                    const InducedPlace& ip = ind.places[np];
                    const Place& p = d.places[ip.place_index];
                    // res_{v,i}(c)(h) = sigma^{-1} . c(incl(h))
                    u64 kt = tuple_count(ip.place.local->n, static_cast<u32>(j));
                    Mat blk(static_cast<u32>(kt * r),
                            static_cast<u32>(tuple_count(p.local->n, static_cast<u32>(j)) * r));
                    const Mat& tr = m->act[d.group->inverse(ip.sigma)];
                    for (u64 t = 0; t < kt; ++t) {
                        auto tup = tuple_unrank(t, static_cast<u32>(j), ip.place.local->n);
                        std::vector<u32> htup(static_cast<u32>(j));
                        for (u32 x = 0; x < static_cast<u32>(j); ++x)
                            htup[x] = ip.local_sub.elements[tup[x]];
                        u64 hi = tuple_index(htup, p.local->n);
                        for (u32 a = 0; a < r; ++a)
                            for (u32 b = 0; b < r; ++b)
                                blk.at(static_cast<u32>(t * r + a),
                                       static_cast<u32>(hi * r + b)) = tr.at(a, b);
                    }
                    Mat t2 = mat_mul(
                        pb->second.second.inc.m,
                        mat_mul(bot.local_decomp[size_t(j - bot.local_sum->lo)].inc[np].m,
                                mat_mul(blk,
                                        mat_mul(topm.local_decomp[size_t(j - topm.local_sum->lo)]
                                                    .prj[ip.place_index]
                                                    .m,
                                                pt->second.second.prj.m, R),
                                        R),
                                R),
                        R);
                    acc = map_add(acc, ModuleMap{topm.cx->term(deg), bot.cx->term(deg), t2});
                }
            }
            rc.emplace(deg, std::move(acc));
        }
        rep.res_c = make_chain_map(topm.cx, bot.cx, std::move(rc));
    }
    {
        std::map<int, ModuleMap> cc;
        ChainMap gcor = corestriction_map(q.u, m, cap);
        for (int deg = bot.cx->lo; deg <= bot.cx->hi; ++deg) {
            ModuleMap acc = zero_map(bot.cx->term(deg), topm.cx->term(deg));
            auto pt = topm.cone.parts.find(deg);
            auto pb = bot.cone.parts.find(deg);
            if (pt == topm.cone.parts.end() || pb == bot.cone.parts.end()) {
                cc.emplace(deg, std::move(acc));
                continue;
            }
            if (deg >= 0 && deg <= static_cast<int>(cap)) {
                Mat t = mat_mul(pt->second.first.inc.m,
                                mat_mul(gcor.component(deg).m, pb->second.first.prj.m, R), R);
                acc = map_add(acc, ModuleMap{bot.cx->term(deg), topm.cx->term(deg), t});
            }
            int j = deg - 1;
            if (j >= 0 && j <= static_cast<int>(cap)) {
                for (u32 np = 0; np < ind.places.size(); ++np) {
                    const InducedPlace& ip = ind.places[np];
                    const Place& p = d.places[ip.place_index];
                    // cor_{v,i} = cor_{K <= H_v} o (sigma-translate of coefficients)
                    GModulePtr m_h = restrict_module(m, p.into);
                    ChainMap kcor = corestriction_map(ip.local_sub, m_h, cap);
                    // coefficient translation x -> sigma . x on C^j(K, .)
                    Mat tr = coefficient_block(ip.place.local, m->act[ip.sigma], r, r,
                                               static_cast<u32>(j));
                    Mat t2 = mat_mul(
                        pt->second.second.inc.m,
                        mat_mul(topm.local_decomp[size_t(j - topm.local_sum->lo)]
                                    .inc[ip.place_index]
                                    .m,
                                mat_mul(kcor.component(j).m,
                                        mat_mul(tr,
                                                mat_mul(bot.local_decomp[size_t(
                                                                             j - bot.local_sum->lo)]
                                                            .prj[np]
                                                            .m,
                                                        pb->second.second.prj.m, R),
                                                R),
                                        R),
                                R),
                        R);
                    acc = map_add(acc, ModuleMap{bot.cx->term(deg), topm.cx->term(deg), t2});
                }
            }
            cc.emplace(deg, std::move(acc));
        }
        rep.cor_c = make_chain_map(bot.cx, topm.cx, std::move(cc));
    }
    // cor_c o res_c = [G : U] on H_c
    {
        u32 index = d.group->n / q.u.sub->n;
        rep.cor_res_is_index = true;
        ChainMap comp = compose(rep.cor_c, rep.res_c);
        for (int i = 0; i <= static_cast<int>(cap) - 1; ++i) {
            CohomDegree h = cohomology_at(*topm.cx, i);
            for (u32 t = 0; t < h.group.inv.size(); ++t) {
                auto lhs = h.class_of(comp.component(i)(h.rep(t)));
                auto rhs = h.class_of(topm.cx->term(i)->orders.canon(
                    vec_scale(index, h.rep(t), R), R));
                if (lhs != rhs) rep.cor_res_is_index = false;
            }
        }
    }
    // displayed diagrams, recorded up to homotopy:
    // (A)  sh_c o (Tr_*)_* ~ res_c       (B)  cor_c o sh_c ~ (pr_*)_*
    // (C)  the sh_c ladder square with the global row: to_a o sh_c ~ sh o to_a
    {
        QuotientDatum qall = make_quotient(q.group, [&] {
            std::vector<u32> all(q.group->n);
            for (u32 x = 0; x < q.group->n; ++x) all[x] = x;
            return all;
        }());
        TransitionMaps tm = transition_maps(q, qall, m);
        // coefficient chain maps on compact complexes
        auto coeff_compact = [&](const ModuleMap& f, const CompactComplex& a,
                                 const CompactComplex& b) {
            std::map<int, ModuleMap> comps2;
            for (int deg = a.cx->lo; deg <= a.cx->hi; ++deg) {
                ModuleMap acc = zero_map(a.cx->term(deg), b.cx->term(deg));
                auto pa = a.cone.parts.find(deg);
                auto pb2 = b.cone.parts.find(deg);
                if (pa == a.cone.parts.end() || pb2 == b.cone.parts.end()) {
                    comps2.emplace(deg, std::move(acc));
                    continue;
                }
                if (deg >= 0 && deg <= static_cast<int>(cap)) {
                    Mat blk = coefficient_block(d.group, f.m, f.src->rank(), f.tgt->rank(),
                                                static_cast<u32>(deg));
                    Mat t = mat_mul(pb2->second.first.inc.m,
                                    mat_mul(blk, pa->second.first.prj.m, R), R);
                    acc = map_add(acc, ModuleMap{a.cx->term(deg), b.cx->term(deg), t});
                }
                int j = deg - 1;
                if (j >= 0 && j <= static_cast<int>(cap)) {
                    for (size_t v = 0; v < d.places.size(); ++v) {
                        Mat blk = coefficient_block(d.places[v].local, f.m, f.src->rank(),
                                                    f.tgt->rank(), static_cast<u32>(j));
                        Mat t = mat_mul(
                            pb2->second.second.inc.m,
                            mat_mul(b.local_decomp[size_t(j - b.local_sum->lo)].inc[v].m,
                                    mat_mul(blk,
                                            mat_mul(a.local_decomp[size_t(j - a.local_sum->lo)]
                                                        .prj[v]
                                                        .m,
                                                    pa->second.second.prj.m, R),
                                            R),
                                    R),
                            R);
                        acc = map_add(acc, ModuleMap{a.cx->term(deg), b.cx->term(deg), t});
                    }
                }
                comps2.emplace(deg, std::move(acc));
            }
            return make_chain_map(a.cx, b.cx, std::move(comps2));
        };
        // Tr_* : M (= M_{G}) -> M_U and pr_* : M_U -> M (both over G)
        ModuleMap trs = make_map(m, induce_tensor(q, m), tm.tr_star_ten.m);
        ModuleMap prs = make_map(induce_tensor(q, m), m, tm.pr_star_ten.m);
        ChainMap trs_c = coeff_compact(trs, topm, top);
        ChainMap prs_c = coeff_compact(prs, top, topm);
        auto hA = find_homotopy(compose(rep.sh_c, trs_c), rep.res_c);
        auto hB = find_homotopy(compose(rep.cor_c, rep.sh_c), prs_c);
        auto hC = find_homotopy(compose(bot.cone.to_a, rep.sh_c),
                                compose(global_sh.sh, top.cone.to_a));
        if (hA) rep.diagrams.push_back(*hA);
        if (hB) rep.diagrams.push_back(*hB);
        if (hC) rep.diagrams.push_back(*hC);
        check(hA && hB && hC, "shapiro_compact: a displayed diagram does not commute up to homotopy");
    }
    return rep;
}

}  // namespace zcoh
