#include "doctest.h"
#include "testutil.hpp"
#include "zcoh/gen.hpp"
#include "zcoh/tate.hpp"
#include "zcoh/tower.hpp"

using namespace zcoh;
using namespace zcoh::testutil;

TEST_CASE("induced modules: ranks and degenerate level U = G") {
    Ring R = make_ring(2, 1);
    auto z4 = cyclic_group(4);
    auto q2 = make_quotient(z4, {0, 2});  // G/U of order 2
    auto m = trivial_module(R, Orders{{1}}, z4);
    auto um = induce_hom(q2, m);
    auto mu = induce_tensor(q2, m);
    CHECK(um->size() == 4);  // (Z/2)^2
    CHECK(mu->size() == 4);
    CHECK(um->invariants() == FinAb{{1, 1}});
    // U = G: both are M itself
    auto qall = make_quotient(z4, {0, 1, 2, 3});
    CHECK(induce_hom(qall, m)->orders == m->orders);
    CHECK(induce_tensor(qall, m)->act == m->act);
    CHECK(kronecker_iso(qall, m).m == Mat::identity(1));
}

TEST_CASE("kronecker iso is a bijective R[G]-map; functoriality squares") {
    Rng rng(17);
    for (auto [gn, p] : std::vector<std::pair<u32, u32>>{{4, 2}, {8, 2}, {9, 3}}) {
        Ring R = make_ring(p, 2);
        auto g = cyclic_group(gn);
        // chain U (={e}) <= V <= G
        std::vector<u32> velems;
        for (u32 x = 0; x < gn; x += (gn / (p == 2 ? 2 : 3))) velems.push_back(x);
        auto qU = make_quotient(g, {0});
        auto qV = make_quotient(g, velems);
        for (int iter = 0; iter < 3; ++iter) {
            auto m = random_gmodule(R, g, rng, 2);
            // kronecker validated at construction (equivariance both sides)
            ModuleMap kU = kronecker_iso(qU, m);
            ModuleMap kV = kronecker_iso(qV, m);
            CHECK(is_bijective(kU));
            TransitionMaps tm = transition_maps(qU, qV, m);
            // kron_V o pr_* = Tr^* o kron_U  and  kron_U o Tr_* = pr^* o kron_V
            CHECK(compose(kV, tm.pr_star_ten).m == compose(tm.tr_star_hom, kU).m);
            CHECK(compose(kU, tm.tr_star_ten).m == compose(tm.pr_star_hom, kV).m);
            // pr o Tr = multiplication by [V:U] on the group algebra side:
            // Tr_* then pr_* on M_V is multiplication by [V:U]
            u32 index = qU.quot->n / qV.quot->n;
            ModuleMap comp = compose(tm.pr_star_ten, tm.tr_star_ten);
            Mat want = mat_scale(index, Mat::identity(comp.m.rows), R);
            for (u32 i = 0; i < want.rows; ++i)
                for (u32 j = 0; j < want.cols; ++j)
                    want.at(i, j) %= R.pow_p(comp.tgt->orders.exp[i]);
            CHECK(comp.m == want);
        }
    }
}

TEST_CASE("iota on the regular level and the hom identification") {
    Ring R = make_ring(2, 2);
    auto z4 = cyclic_group(4);
    auto q = make_quotient(z4, {0});
    auto lvl = lambda_level(q, R);
    // iota sends the generator's left multiplication to its inverse-right
    auto tw = iota_twist(lvl);
    CHECK(tw->lambda->left[1] == lvl->lambda->right[z4->inverse(1)]);
    CHECK(iota_twist(tw)->lambda->left == lvl->lambda->left);
    // (_U M)^iota = Hom(R[G/U]^iota, M) as recorded actions: the iota-twisted
    // left action at l equals precomposition with x -> l^{-1} x
    Rng rng(5);
    auto m = random_gmodule(R, z4, rng, 2);
    auto um = induce_hom(q, m);
    auto umi = iota_twist(um);
    u32 nq = q.quot->n, r = m->rank();
    for (u32 l = 0; l < nq; ++l) {
        Mat want(nq * r, nq * r);
        for (u32 b = 0; b < nq; ++b) {
            u32 src = q.quot->mul(q.quot->inverse(l), b);
            for (u32 i = 0; i < r; ++i) want.at(b * r + i, src * r + i) = 1;
        }
        CHECK(umi->lambda->left[l] == want);
    }
}

TEST_CASE("G-invariants of _U M match M^U") {
    Ring R = make_ring(2, 1);
    auto z4 = cyclic_group(4);
    auto q = make_quotient(z4, {0, 2});
    // M = Z/2 with the faithful Z/2-quotient action... over Z/2 the only
    // unit is 1, so use Z/3 coefficients with the sign action instead
    Ring R3 = make_ring(3, 1);
    auto m3 = make_gmodule(R3, Orders{{1}}, z4,
                           {Mat::identity(1), Mat({{-1}}, R3), Mat::identity(1), Mat({{-1}}, R3)});
    auto um = induce_hom(q, m3);
    auto invU = invariants_submodule(restrict_module(m3, q.u.incl));
    auto invG = invariants_submodule(um);
    CHECK(invG.mod->invariants() == invU.mod->invariants());
    (void)R;
}

TEST_CASE("dfm duality: iso, level compatible, natural") {
    Rng rng(23);
    for (auto [gn, p] : std::vector<std::pair<u32, u32>>{{4, 2}, {6, 3}, {9, 3}}) {
        Ring R = make_ring(p, 2);
        auto g = cyclic_group(gn);
        std::vector<u32> velems;
        u32 d = gn / ((gn % 2 == 0) ? 2 : 3);
        for (u32 x = 0; x < gn; x += d) velems.push_back(x);
        auto q = make_quotient(g, velems);
        for (int iter = 0; iter < 3; ++iter) {
            auto m = random_gmodule(R, g, rng, 2);
            DfmData dd = dfm_duality(q, m);
            CHECK(is_bijective(dd.iso));
            // lambda-level compatibility of the iso, both sides
            REQUIRE(dd.mu_dual->lambda.has_value());
            REQUIRE(dd.hom_dual->lambda.has_value());
            for (u32 l = 0; l < q.quot->n; ++l) {
                CHECK(mat_mul(dd.iso.m, dd.mu_dual->lambda->left[l], R) ==
                      mat_mul(dd.hom_dual->lambda->left[l], dd.iso.m, R));
                CHECK(mat_mul(dd.iso.m, dd.mu_dual->lambda->right[l], R) ==
                      mat_mul(dd.hom_dual->lambda->right[l], dd.iso.m, R));
            }
            // naturality in M: for f : M -> M', the square with (f_U)^vee and
            // (_U f^vee)^iota commutes
            auto m2 = random_gmodule(R, g, rng, 2);
            ModuleMap f = random_equivariant_map(m, m2, rng);
            DfmData d2 = dfm_duality(q, m2);
            // f_U : M_U -> M'_U (blockwise f)
            u32 nq = q.quot->n;
            Mat fu(nq * m2->rank(), nq * m->rank());
            for (u32 b = 0; b < nq; ++b)
                for (u32 x = 0; x < m2->rank(); ++x)
                    for (u32 y = 0; y < m->rank(); ++y)
                        fu.at(b * m2->rank() + x, b * m->rank() + y) = f.m.at(x, y);
            ModuleMap fU = make_map(dd.mu, d2.mu, fu);
            ModuleMap fU_dual = dual_map(fU, d2.mu_dual, dd.mu_dual);
            // (_U f^vee): blockwise dual of f
            ModuleMap fdual = dual_map(f, pontryagin_dual(m2).dual, pontryagin_dual(m).dual);
            Mat fd(nq * m->rank(), nq * m2->rank());
            for (u32 b = 0; b < nq; ++b)
                for (u32 x = 0; x < m->rank(); ++x)
                    for (u32 y = 0; y < m2->rank(); ++y)
                        fd.at(b * m->rank() + x, b * m2->rank() + y) = fdual.m.at(x, y);
            ModuleMap hom_f = make_map(d2.hom_dual, dd.hom_dual, fd);
            CHECK(compose(dd.iso, fU_dual).m == compose(hom_f, d2.iso).m);
        }
    }
}

TEST_CASE("shapiro: pinned iso checks") {
    // (Z/4, 2Z/4, Z/2 trivial): H^1(G, M_U) = H^1(U, M) = Z/2
    {
        Ring R = make_ring(2, 1);
        auto g = cyclic_group(4);
        auto q = make_quotient(g, {0, 2});
        auto m = trivial_module(R, Orders{{1}}, g);
        ShapiroData sd = shapiro_map(q, m, 3);
        CHECK(sd.report.is_quasi_iso);
        CHECK(sd.report.src_h.at(1) == FinAb{{1}});
        CHECK(sd.report.tgt_h.at(1) == FinAb{{1}});
    }
    // (S_3, A_3, Z/3 trivial): iso on H^j, j <= 2
    {
        Ring R = make_ring(3, 1);
        auto s3 = symmetric3();
        std::vector<u32> a3;
        for (u32 x = 0; x < 6; ++x)
            if (s3->order_of(x) != 2) a3.push_back(x);
        auto q = make_quotient(s3, a3);
        auto m = trivial_module(R, Orders{{1}}, s3);
        ShapiroData sd = shapiro_map(q, m, 3);
        for (int j = 0; j <= 2; ++j) CHECK(sd.report.bijective.at(j));
    }
    // U = G: identity on cochains
    {
        Ring R = make_ring(2, 2);
        auto g = cyclic_group(2);
        auto q = make_quotient(g, {0, 1});
        auto m = trivial_module(R, Orders{{2}}, g);
        ShapiroData sd = shapiro_map(q, m, 2);
        for (int j = 0; j <= 2; ++j)
            CHECK(sd.sh.component(j).m == Mat::identity(sd.sh.component(j).m.rows));
    }
}

TEST_CASE("shapiro for complexes of modules") {
    Ring R = make_ring(2, 1);
    auto g = cyclic_group(4);
    auto q = make_quotient(g, {0, 2});
    Rng rng(3);
    auto cx = random_complex(R, g, rng, 0, 2, 2);
    ShapiroComplexData sd = shapiro_map_complex(q, cx, 2);
    CHECK(sd.report.is_quasi_iso);
}

TEST_CASE("tower: colimit of H^1 and H^2 along the 2-tower") {
    Ring R = make_ring(2, 1);
    TowerSpec t = cyclic_p_tower(2, 4);
    t.window = 1;
    auto m = trivial_module(R, Orders{{1}}, t.group);
    TowerReport r1 = tower_colim_cohomology(t, m, 1, 3);
    CHECK(r1.stabilized);
    CHECK(r1.value == FinAb{{1}});
    CHECK(r1.level == 1);
    CHECK(r1.window_independent);
    TowerReport r2 = tower_colim_cohomology(t, m, 2, 3);
    CHECK(r2.stabilized);
    CHECK(r2.value == FinAb{});
    CHECK(r2.window_independent);
    // H^0 of any tower is M^{level-1 action}
    TowerReport r0 = tower_colim_cohomology(t, m, 0, 2);
    CHECK(r0.stabilized);
    CHECK(r0.value == FinAb{{1}});
}

TEST_CASE("tower: inverse limit lim H^2(Z/p, Z/p^k) = Z/p") {
    u32 p = 2;
    Ring R = make_ring(p, 4);
    auto g = cyclic_group(p);
    std::vector<GModulePtr> mods;
    std::vector<ModuleMap> surj;
    for (u32 k = 1; k <= 4; ++k) mods.push_back(trivial_module(R, Orders{{k}}, g));
    for (u32 k = 0; k + 1 < 4; ++k)
        surj.push_back(make_map(mods[k + 1], mods[k], Mat({{1}}, R)));
    // order levels coarse..fine: modules[0]=Z/p ... modules[3]=Z/p^4
    TowerReport rep = tower_lim_cohomology(g, mods, surj, 2, 3, 1);
    CHECK(rep.stabilized);
    CHECK(rep.value == FinAb{{1}});
    CHECK(rep.window_independent);
    // constant tower: value = H^i(G, M)
    std::vector<GModulePtr> cmods(3, mods[1]);
    std::vector<ModuleMap> cid(2, identity_map(mods[1]));
    TowerReport crep = tower_lim_cohomology(g, cmods, cid, 1, 3, 1);
    CHECK(crep.stabilized);
    CHECK(crep.value == cochain_cohomology(g, mods[1], 1));
}

TEST_CASE("tower: non-factoring module is rejected; level range errors") {
    Ring R = make_ring(2, 2);
    TowerSpec t = cyclic_p_tower(2, 3);
    // the regular module of Z/8 is faithful, so it cannot factor through Z/2
    auto m = regular_module(R, t.group);
    CHECK_THROWS_AS(tower_colim_cohomology(t, m, 1, 2), ValidationError);
    auto triv = trivial_module(R, Orders{{1}}, t.group);
    CHECK_THROWS_AS(f_gamma_level(t, triv, 9), LevelOutOfRange);
    // (ff_gamma_level)^vee = f_gamma_level of M^vee with the iota twist
    auto ff = ff_gamma_level(t, triv, 2);
    auto f = f_gamma_level(t, pontryagin_dual(triv).dual, 2);
    auto lhs = pontryagin_dual(ff.value).dual;
    auto rhs = iota_twist(f.value);
    CHECK(lhs->act == rhs->act);
    CHECK(lhs->lambda->left == rhs->lambda->left);
    CHECK(lhs->lambda->right == rhs->lambda->right);
}
