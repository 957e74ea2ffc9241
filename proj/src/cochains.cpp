#include "zcoh/cochains.hpp"

#include <algorithm>

namespace zcoh {

namespace {

GroupPtr trivial_group() {
    static GroupPtr e = cyclic_group(1);
    return e;
}

}  // namespace

GModulePtr cochain_module(const GroupPtr& g, const GModulePtr& m, u32 j) {
    const Ring& R = m->ring;
    u64 tuples = tuple_count(g->n, j);
    Orders o;
    o.exp.reserve(tuples * m->rank());
    for (u64 t = 0; t < tuples; ++t)
        o.exp.insert(o.exp.end(), m->orders.exp.begin(), m->orders.exp.end());
    return trivial_module(R, std::move(o), trivial_group());
}

Mat cochain_diff_matrix(const GroupPtr& g, const GModulePtr& m, u32 j) {
    const Ring& R = m->ring;
    u32 r = m->rank();
    u64 src_tuples = tuple_count(g->n, j);
    u64 tgt_tuples = tuple_count(g->n, j + 1);
    Mat d(static_cast<u32>(tgt_tuples * r), static_cast<u32>(src_tuples * r));
    auto add_block = [&](u64 row_tuple, u64 col_tuple, const Mat& blk, bool negate) {
        for (u32 a = 0; a < r; ++a)
            for (u32 b = 0; b < r; ++b) {
                u32 v = blk.at(a, b);
                if (negate) v = R.neg(v);
                u32& slot = d.at(static_cast<u32>(row_tuple * r + a), static_cast<u32>(col_tuple * r + b));
                slot = R.add(slot, v);
            }
    };
    Mat id = Mat::identity(r);
    for (u64 ti = 0; ti < tgt_tuples; ++ti) {
        auto tup = tuple_unrank(ti, j + 1, g->n);
        // g_1 . c(g_2,...,g_{j+1})
        {
            std::vector<u32> rest(tup.begin() + 1, tup.end());
            add_block(ti, tuple_index(rest, g->n), m->act[tup[0]], false);
        }
        // (-1)^l c(..., g_l g_{l+1}, ...)
        for (u32 l = 1; l <= j; ++l) {
            std::vector<u32> merged;
            merged.reserve(j);
            for (u32 k = 0; k < j + 1; ++k) {
                if (k == l - 1) {
                    merged.push_back(g->mul(tup[k], tup[k + 1]));
                    ++k;
                } else {
                    merged.push_back(tup[k]);
                }
            }
            add_block(ti, tuple_index(merged, g->n), id, l % 2 != 0);
        }
        // (-1)^{j+1} c(g_1,...,g_j)
        {
            std::vector<u32> head(tup.begin(), tup.end() - 1);
            add_block(ti, tuple_index(head, g->n), id, (j + 1) % 2 != 0);
        }
    }
    return d;
}

ComplexPtr cochain_complex(const GroupPtr& g, const GModulePtr& m, u32 cap) {
    const Ring& R = m->ring;
    std::vector<GModulePtr> terms;
    for (u32 j = 0; j <= cap; ++j) terms.push_back(cochain_module(g, m, j));
    std::vector<ModuleMap> diffs;
    for (u32 j = 0; j < cap; ++j)
        diffs.push_back(make_map(terms[j], terms[j + 1], cochain_diff_matrix(g, m, j),
                                 /*check_equivariance=*/false));
    return make_complex(R, trivial_group(), 0, std::move(terms), std::move(diffs));
}

TotalComplex cochain_total(const GroupPtr& g, const ComplexPtr& m, u32 cap) {
    const Ring& R = m->ring;
    TotalComplex t;
    if (m->lo > m->hi) {
        t.cx = zero_complex(R, trivial_group());
        return t;
    }
    int lo = m->lo, hi = m->hi + static_cast<int>(cap);
    std::vector<GModulePtr> terms;
    for (int n = lo; n <= hi; ++n) {
        std::vector<std::pair<int, GModulePtr>> parts;
        for (int i = std::max(m->lo, n - static_cast<int>(cap)); i <= std::min(m->hi, n); ++i)
            parts.emplace_back(i, cochain_module(g, m->term(i), static_cast<u32>(n - i)));
        std::vector<GModulePtr> mods;
        for (auto& [i, mod] : parts) mods.push_back(mod);
        SumDecomp s = direct_sum(mods, R, trivial_group());
        terms.push_back(s.sum);
        std::vector<TotalPiece> tp;
        for (size_t k = 0; k < parts.size(); ++k)
            tp.push_back(TotalPiece{parts[k].first, s.inc[k], s.prj[k]});
        t.pieces[n] = std::move(tp);
    }
    std::vector<ModuleMap> diffs;
    for (int n = lo; n < hi; ++n) {
        ModuleMap acc = zero_map(terms[size_t(n - lo)], terms[size_t(n - lo + 1)]);
        for (const auto& p : t.pieces[n]) {
            int i = p.a;
            u32 j = static_cast<u32>(n - i);
            // (d_M)_* to piece (n+1, i+1)
            for (const auto& q : t.pieces[n + 1]) {
                if (q.a == i + 1 && m->in_range(i + 1)) {
                    const Mat& dm = m->diff(i).m;
                    u32 rs = m->term(i)->rank(), rt = m->term(i + 1)->rank();
                    u64 tuples = tuple_count(g->n, j);
                    Mat blk(static_cast<u32>(tuples * rt), static_cast<u32>(tuples * rs));
                    for (u64 tt = 0; tt < tuples; ++tt)
                        for (u32 a = 0; a < rt; ++a)
                            for (u32 b = 0; b < rs; ++b)
                                blk.at(static_cast<u32>(tt * rt + a), static_cast<u32>(tt * rs + b)) =
                                    dm.at(a, b);
                    ModuleMap piece_map{p.prj.tgt, q.inc.src, blk};
                    acc = map_add(acc, compose(q.inc, compose(piece_map, p.prj)));
                }
                // (-1)^i delta to piece (n+1, i)
                if (q.a == i && j + 1 <= cap) {
                    Mat blk = cochain_diff_matrix(g, m->term(i), j);
                    ModuleMap piece_map{p.prj.tgt, q.inc.src, blk};
                    ModuleMap c = compose(q.inc, compose(piece_map, p.prj));
                    acc = map_add(acc, i % 2 == 0 ? c : map_scale(R.mod - 1, c));
                }
            }
        }
        diffs.push_back(std::move(acc));
    }
    t.cx = make_complex(R, trivial_group(), lo, std::move(terms), std::move(diffs));
    for (auto& [d, v] : t.pieces)
        for (auto& p : v) {
            p.inc = ModuleMap{p.inc.src, t.cx->term(d), p.inc.m};
            p.prj = ModuleMap{t.cx->term(d), p.prj.tgt, p.prj.m};
        }
    return t;
}

GroupCohomology group_cohomology(const GroupPtr& g, const GModulePtr& m, u32 i, u32 cap) {
    if (i > cap) throw CapExceeded("cohomology degree " + std::to_string(i) + " exceeds cap " +
                                   std::to_string(cap));
    ComplexPtr cx = cochain_complex(g, m, i + 1);
    CohomDegree c = cohomology_at(*cx, static_cast<int>(i));
    return GroupCohomology{c.group, c, cx->term(static_cast<int>(i))};
}

FinAb cochain_cohomology(const GroupPtr& g, const GModulePtr& m, u32 i, u32 cap) {
    return group_cohomology(g, m, i, cap).group;
}

FinAb cochain_cohomology(const GroupPtr& g, const ComplexPtr& m, int i, u32 cap) {
    TotalComplex t = cochain_total(g, m, cap + 1);
    return cohomology_at(*t.cx, i).group;
}

ChainMap cochain_coefficient_map(const GroupPtr& g, const ModuleMap& f, u32 cap) {
    ComplexPtr src = cochain_complex(g, f.src, cap);
    ComplexPtr tgt = cochain_complex(g, f.tgt, cap);
    std::map<int, ModuleMap> comps;
    for (u32 j = 0; j <= cap; ++j) {
        u64 tuples = tuple_count(g->n, j);
        u32 rs = f.src->rank(), rt = f.tgt->rank();
        Mat blk(static_cast<u32>(tuples * rt), static_cast<u32>(tuples * rs));
        for (u64 t = 0; t < tuples; ++t)
            for (u32 a = 0; a < rt; ++a)
                for (u32 b = 0; b < rs; ++b)
                    blk.at(static_cast<u32>(t * rt + a), static_cast<u32>(t * rs + b)) = f.m.at(a, b);
        comps.emplace(static_cast<int>(j),
                      make_map(src->term(j), tgt->term(j), std::move(blk), false));
    }
    return make_chain_map(src, tgt, std::move(comps));
}

ChainMap restriction_map(const GroupHom& phi, const GModulePtr& m, u32 cap) {
    return restriction_map(phi, m, restrict_module(m, phi), cap);
}

ChainMap restriction_map(const GroupHom& phi, const GModulePtr& m, const GModulePtr& m_sub,
                         u32 cap) {
    const GroupPtr& u = phi.src;
    const GroupPtr& g = phi.dst;
    ComplexPtr src = cochain_complex(g, m, cap);
    ComplexPtr tgt = cochain_complex(u, m_sub, cap);
    u32 r = m->rank();
    std::map<int, ModuleMap> comps;
    for (u32 j = 0; j <= cap; ++j) {
        u64 utuples = tuple_count(u->n, j);
        Mat blk(static_cast<u32>(utuples * r), static_cast<u32>(tuple_count(g->n, j) * r));
        for (u64 t = 0; t < utuples; ++t) {
            auto tup = tuple_unrank(t, j, u->n);
            for (auto& x : tup) x = phi(x);
            u64 gi = tuple_index(tup, g->n);
            for (u32 a = 0; a < r; ++a) blk.at(static_cast<u32>(t * r + a), static_cast<u32>(gi * r + a)) = 1;
        }
        comps.emplace(static_cast<int>(j),
                      make_map(src->term(j), tgt->term(j), std::move(blk), false));
    }
    return make_chain_map(src, tgt, std::move(comps));
}

ChainMap inflation_map(const QuotientDatum& q, const GModulePtr& m_quot, u32 cap) {
    return restriction_map(q.proj, m_quot, cap);
}

ChainMap corestriction_map(const Subgroup& u, const GModulePtr& m, u32 cap) {
    const GroupPtr& g = u.incl.dst;
    const Ring& R = m->ring;
    GModulePtr m_sub = restrict_module(m, u.incl);
    ComplexPtr src = cochain_complex(u.sub, m_sub, cap);
    ComplexPtr tgt = cochain_complex(g, m, cap);
    std::vector<u32> reps = left_coset_reps(*g, u.elements);
    // u-part of x under G = union of U r^{-1}: u(x) = x * leftrep(x^{-1} U)
    std::vector<u32> leftrep_of(g->n);
    {
        std::vector<u32> rep_of_coset(g->n, UINT32_MAX);
        for (u32 rep : reps)
            for (u32 e : u.elements) rep_of_coset[g->mul(rep, e)] = rep;
        for (u32 x = 0; x < g->n; ++x) leftrep_of[x] = rep_of_coset[x];
    }
    auto upart = [&](u32 x) { return g->mul(x, leftrep_of[g->inverse(x)]); };
    u32 r = m->rank();
    std::map<int, ModuleMap> comps;
    for (u32 j = 0; j <= cap; ++j) {
        u64 gtuples = tuple_count(g->n, j);
        Mat blk(static_cast<u32>(gtuples * r), static_cast<u32>(tuple_count(u.sub->n, j) * r));
        for (u64 t = 0; t < gtuples; ++t) {
            auto tup = tuple_unrank(t, j, g->n);
            // prefix products p_i = g_1 ... g_i
            std::vector<u32> pref(j + 1, 0);
            for (u32 i = 0; i < j; ++i) pref[i + 1] = g->mul(pref[i], tup[i]);
            for (u32 rep : reps) {
                u32 rinv = g->inverse(rep);
                std::vector<u32> w(j + 1);
                for (u32 i = 0; i <= j; ++i) w[i] = upart(g->mul(rinv, pref[i]));
                // w_0 = e since rep is the chosen representative of its coset
                std::vector<u32> usub(j);
                for (u32 i = 0; i < j; ++i)
                    usub[i] = u.parent_to_sub[g->mul(g->inverse(w[i]), w[i + 1])];
                u64 ui = tuple_index(usub, u.sub->n);
                const Mat& a = m->act[g->mul(rep, w[0])];
                for (u32 aa = 0; aa < r; ++aa)
                    for (u32 bb = 0; bb < r; ++bb) {
                        u32& slot = blk.at(static_cast<u32>(t * r + aa), static_cast<u32>(ui * r + bb));
                        slot = R.add(slot, a.at(aa, bb));
                    }
            }
        }
        comps.emplace(static_cast<int>(j),
                      make_map(src->term(j), tgt->term(j), std::move(blk), false));
    }
    return make_chain_map(src, tgt, std::move(comps));
}

LESReport cochain_les(const GroupPtr& g, const ModuleMap& inc, const ModuleMap& prj, u32 cap) {
    ChainMap ci = cochain_coefficient_map(g, inc, cap);
    ChainMap cp = cochain_coefficient_map(g, prj, cap);
    // reuse the same middle complex object
    ChainMap cp2 = make_chain_map(ci.tgt, cp.tgt, cp.comps);
    ComplexSES ses = make_ses(ci, cp2);
    return les_report(ses);
}

std::string render_cochain(const GroupPtr& g, const GModulePtr& m, u32 degree,
                           const std::vector<u32>& table) {
    std::string out;
    u64 tuples = tuple_count(g->n, degree);
    u32 r = m->rank();
    for (u64 t = 0; t < tuples; ++t) {
        auto tup = tuple_unrank(t, degree, g->n);
        out += "c(";
        for (u32 i = 0; i < degree; ++i) {
            if (i) out += ",";
            out += std::to_string(tup[i]);
        }
        out += ") = [";
        for (u32 a = 0; a < r; ++a) {
            if (a) out += ",";
            out += std::to_string(table[t * r + a]);
        }
        out += "]\n";
    }
    return out;
}

}  // namespace zcoh
