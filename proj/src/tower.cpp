#include "zcoh/tower.hpp"

#include <algorithm>

namespace zcoh {

TowerSpec cyclic_p_tower(u32 p, u32 K, u32 cap) {
    u32 n = 1;
    for (u32 k = 0; k < K; ++k) n *= p;
    GroupPtr g = cyclic_group(n, cap);
    TowerSpec t;
    t.group = g;
    for (u32 k = 1; k <= K; ++k) {
        u32 pk = 1;
        for (u32 i = 0; i < k; ++i) pk *= p;
        std::vector<u32> u_elems;
        for (u32 x = 0; x < n; x += pk) u_elems.push_back(x);
        t.levels.push_back(make_quotient(g, std::move(u_elems)));
    }
    return t;
}

TowerSpec make_tower(GroupPtr g, std::vector<std::vector<u32>> subgroup_elements, u32 window) {
    TowerSpec t;
    t.group = g;
    t.window = window;
    for (auto& e : subgroup_elements) t.levels.push_back(make_quotient(g, std::move(e)));
    // validate nesting U_{k+1} <= U_k
    for (size_t k = 0; k + 1 < t.levels.size(); ++k) {
        for (u32 x : t.levels[k + 1].u.elements) {
            bool found = std::find(t.levels[k].u.elements.begin(), t.levels[k].u.elements.end(),
                                   x) != t.levels[k].u.elements.end();
            if (!found) throw NotNested("tower levels are not nested at level " + std::to_string(k + 1));
        }
    }
    return t;
}

LevelValue f_gamma_level(const TowerSpec& t, const GModulePtr& m, u32 k) {
    if (k < 1 || k > t.levels.size()) throw LevelOutOfRange("level " + std::to_string(k));
    LevelValue v;
    v.value = induce_hom(t.levels[k - 1], m);
    if (k >= 2) {
        TransitionMaps tm = transition_maps(t.levels[k - 1], t.levels[k - 2], m);
        v.from_prev = tm.pr_star_hom;  // _V M -> _U M along the colimit
    }
    return v;
}

LevelValue ff_gamma_level(const TowerSpec& t, const GModulePtr& m, u32 k) {
    if (k < 1 || k > t.levels.size()) throw LevelOutOfRange("level " + std::to_string(k));
    LevelValue v;
    v.value = induce_tensor(t.levels[k - 1], m);
    if (k >= 2) {
        TransitionMaps tm = transition_maps(t.levels[k - 1], t.levels[k - 2], m);
        v.to_prev = tm.pr_star_ten;  // M_U -> M_V along the limit
    }
    return v;
}

namespace {

struct LevelCohomology {
    std::vector<FinAb> groups;
    std::vector<Mat> trans;  // trans[k] : H(level k+1) -> H(level k+2) or reversed
};

// order of the image of a class-coordinate matrix into the group with the
// given invariants
u64 image_order(const Mat& m, const FinAb& tgt, const Ring& R) {
    if (tgt.inv.empty() || m.cols == 0) return 1;
    Orders o{tgt.inv};
    Mat rows(m.cols, m.rows);
    for (u32 i = 0; i < m.cols; ++i)
        for (u32 j = 0; j < m.rows; ++j) rows.at(i, j) = m.at(j, i) % R.pow_p(tgt.inv[j]);
    return span_order(rows, o, R);
}

Mat compose_chain(const std::vector<Mat>& maps, u32 from, u32 to, const std::vector<FinAb>& groups,
                  const Ring& R) {
    // maps[k] : H_k -> H_{k+1} (0-based); compose from index `from` to `to`
    Mat acc = Mat::identity(static_cast<u32>(groups[from].inv.size()));
    for (u32 k = from; k < to; ++k) {
        acc = mat_mul(maps[k], acc, R);
        for (u32 i = 0; i < acc.rows; ++i)
            for (u32 j = 0; j < acc.cols; ++j) acc.at(i, j) %= R.pow_p(groups[k + 1].inv[i]);
    }
    return acc;
}

// invariants of the image subgroup of a class-coordinate matrix
FinAb image_invariants(const Mat& m, const FinAb& tgt, const Ring& R) {
    Orders o{tgt.inv};
    Mat rows(m.cols, m.rows);
    for (u32 i = 0; i < m.cols; ++i)
        for (u32 j = 0; j < m.rows; ++j) rows.at(i, j) = m.at(j, i) % R.pow_p(tgt.inv[j]);
    return subquotient_invariants(rows, o, Mat(0, m.rows), R);
}

}  // namespace

TowerReport tower_colim_cohomology(const TowerSpec& t, const GModulePtr& m, u32 i, u32 cap) {
    const Ring& R = m->ring;
    u32 K = static_cast<u32>(t.levels.size());
    u32 w = t.window;
    TowerReport rep;
    // per-level modules with the action factored through G/U_k (checked)
    std::vector<GModulePtr> mods;
    std::vector<GroupCohomology> hs;
    for (u32 k = 0; k < K; ++k) {
        const QuotientDatum& q = t.levels[k];
        for (u32 u : q.u.elements)
            if (!(m->act[u] == Mat::identity(m->rank())))
                throw ValidationError("tower: module action does not factor through level " +
                                      std::to_string(k + 1));
        std::vector<Mat> act;
        for (u32 x = 0; x < q.quot->n; ++x) act.push_back(m->act[q.coset_rep[x]]);
        mods.push_back(make_gmodule(R, m->orders, q.quot, std::move(act)));
        hs.push_back(group_cohomology(q.quot, mods.back(), i, cap));
        rep.levels.push_back(hs.back().group);
    }
    // inflation transitions H_k -> H_{k+1}
    std::vector<Mat> trans;
    for (u32 k = 0; k + 1 < K; ++k) {
        const QuotientDatum& fine = t.levels[k + 1];
        const QuotientDatum& coarse = t.levels[k];
        std::vector<u32> img(fine.quot->n);
        for (u32 x = 0; x < fine.quot->n; ++x) img[x] = coarse.proj(fine.coset_rep[x]);
        GroupHom surj = make_hom(fine.quot, coarse.quot, std::move(img));
        ChainMap inf = restriction_map(surj, mods[k], mods[k + 1], i + 1);
        u32 rs = static_cast<u32>(hs[k].group.inv.size());
        u32 rt = static_cast<u32>(hs[k + 1].group.inv.size());
        Mat ind(rt, rs);
        for (u32 s = 0; s < rs; ++s) {
            auto cls = hs[k + 1].data.class_of(inf.component(static_cast<int>(i))(hs[k].data.rep(s)));
            for (u32 z = 0; z < rt; ++z) ind.at(z, s) = cls[z];
        }
        trans.push_back(std::move(ind));
    }
    auto run = [&](u32 win) -> std::optional<std::pair<u32, FinAb>> {
        if (K < win + 1) return std::nullopt;
        // W_k = im(H_k -> H_{k+win}); stabilized at k0 if |W_k| is constant
        // and each transition W_k -> W_{k+1} is bijective from k0 on
        std::vector<u64> word(K - win);
        std::vector<FinAb> winv(K - win);
        for (u32 k = 0; k + win < K; ++k) {
            Mat c = compose_chain(trans, k, k + win, rep.levels, R);
            word[k] = image_order(c, rep.levels[k + win], R);
            winv[k] = image_invariants(c, rep.levels[k + win], R);
        }
        for (u32 k0 = 0; k0 + win < K; ++k0) {
            bool ok = true;
            for (u32 k = k0; k + win < K; ++k) {
                if (word[k] != word[k0] || !(winv[k] == winv[k0])) { ok = false; break; }
                // the transition must carry W_k onto W_{k+1} injectively
                if (k + 1 + win < K) {
                    Mat c = compose_chain(trans, k, k + 1 + win, rep.levels, R);
                    if (image_order(c, rep.levels[k + 1 + win], R) != word[k0]) { ok = false; break; }
                }
            }
            if (ok) return std::make_pair(k0 + 1, winv[k0]);
        }
        return std::nullopt;
    };
    auto res = run(w);
    if (!res) {
        rep.stabilized = false;
        rep.detail = "colimit not stabilized within " + std::to_string(K) + " levels (window " +
                     std::to_string(w) + ")";
        return rep;
    }
    rep.stabilized = true;
    rep.level = res->first;
    rep.value = res->second;
    auto res2 = run(w + 1);
    rep.window_independent = res2.has_value() && res2->second == rep.value;
    return rep;
}

TowerReport tower_lim_cohomology(const GroupPtr& g, const std::vector<GModulePtr>& modules,
                                 const std::vector<ModuleMap>& surjections, u32 i, u32 cap,
                                 u32 window) {
    check(modules.size() >= 1 && surjections.size() + 1 == modules.size(),
          "tower_lim: need one surjection per consecutive pair");
    const Ring& R = modules[0]->ring;
    u32 K = static_cast<u32>(modules.size());
    TowerReport rep;
    std::vector<GroupCohomology> hs;
    for (u32 k = 0; k < K; ++k) {
        // surjectivity of the transition maps
        if (k + 1 < K) {
            const ModuleMap& s = surjections[k];
            Mat im(s.src->rank(), s.tgt->rank());
            for (u32 c = 0; c < s.src->rank(); ++c) {
                std::vector<u32> e(s.src->rank(), 0);
                e[c] = 1;
                auto v = s(e);
                for (u32 z = 0; z < s.tgt->rank(); ++z) im.at(c, z) = v[z];
            }
            if (span_order(im, s.tgt->orders, R) != s.tgt->size())
                throw ValidationError("tower_lim: transition map is not surjective at level " +
                                      std::to_string(k + 1));
        }
        hs.push_back(group_cohomology(g, modules[k], i, cap));
        rep.levels.push_back(hs.back().group);
    }
    // induced maps H_{k+1} -> H_k
    std::vector<Mat> down(K >= 1 ? K - 1 : 0);
    for (u32 k = 0; k + 1 < K; ++k) {
        ChainMap cm = cochain_coefficient_map(g, surjections[k], i + 1);
        u32 rs = static_cast<u32>(hs[k + 1].group.inv.size());
        u32 rt = static_cast<u32>(hs[k].group.inv.size());
        Mat ind(rt, rs);
        for (u32 s = 0; s < rs; ++s) {
            auto cls = hs[k].data.class_of(cm.component(static_cast<int>(i))(hs[k + 1].data.rep(s)));
            for (u32 z = 0; z < rt; ++z) ind.at(z, s) = cls[z];
        }
        down[k] = std::move(ind);
    }
    auto compose_down = [&](u32 hi_level, u32 lo_level) {
        Mat acc = Mat::identity(static_cast<u32>(rep.levels[hi_level].inv.size()));
        for (u32 k = hi_level; k > lo_level; --k) {
            acc = mat_mul(down[k - 1], acc, R);
            for (u32 a = 0; a < acc.rows; ++a)
                for (u32 b = 0; b < acc.cols; ++b) acc.at(a, b) %= R.pow_p(rep.levels[k - 1].inv[a]);
        }
        return acc;
    };
    auto run = [&](u32 win) -> std::optional<std::pair<u32, FinAb>> {
        if (K < win + 1) return std::nullopt;
        // eventual images L_k = im(H_K -> H_k); Mittag-Leffler: image chain at
        // L_k must be constant from k+win on; value: L at the last level where
        // the restricted transitions are isos across the window
        for (u32 k = 0; k + win < K; ++k) {
            u64 at_win = image_order(compose_down(k + win, k), rep.levels[k], R);
            u64 at_end = image_order(compose_down(K - 1, k), rep.levels[k], R);
            if (at_win != at_end) return std::nullopt;
        }
        // candidate value: eventual image at the deepest fully-checked level
        u32 k0 = K - 1 - win;
        FinAb v = image_invariants(compose_down(K - 1, k0), rep.levels[k0], R);
        for (u32 k = k0; k + 1 <= K - 1 - win && k + 1 + win <= K - 1; ++k) {
            FinAb v2 = image_invariants(compose_down(K - 1, k + 1), rep.levels[k + 1], R);
            if (!(v2 == v)) return std::nullopt;
        }
        // transitions between eventual images must be isomorphisms over the window
        for (u32 k = k0; k + 1 < K - win; ++k) {
            u64 a = image_order(compose_down(K - 1, k + 1), rep.levels[k + 1], R);
            u64 b = image_order(compose_down(K - 1, k), rep.levels[k], R);
            if (a != b) return std::nullopt;
        }
        return std::make_pair(k0 + 1, v);
    };
    auto res = run(window);
    if (!res) {
        rep.stabilized = false;
        rep.detail = "inverse limit not stabilized (Mittag-Leffler window " +
                     std::to_string(window) + " of " + std::to_string(K) + " levels)";
        return rep;
    }
    rep.stabilized = true;
    rep.level = res->first;
    rep.value = res->second;
    auto res2 = run(window + 1);
    rep.window_independent = res2.has_value() && res2->second == rep.value;
    return rep;
}

}  // namespace zcoh
