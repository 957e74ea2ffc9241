#include "doctest.h"
#include "testutil.hpp"
#include "zcoh/module.hpp"

using namespace zcoh;
using namespace zcoh::testutil;

TEST_CASE("group law validation rejects mutated tables") {
    auto g = symmetric3();
    CHECK(g->n == 6);
    CHECK(!g->is_abelian());
    // mutate random entries; every mutation that changes the table must be
    // rejected as non-associative / non-group
    Rng rng(12);
    int rejected = 0;
    for (int iter = 0; iter < 50; ++iter) {
        auto t = g->table;
        u32 pos = rng.below(36), val = rng.below(6);
        if (t[pos] == val) continue;
        t[pos] = val;
        CHECK_THROWS_AS(make_group(std::move(t), "bad"), ValidationError);
        ++rejected;
    }
    CHECK(rejected > 30);
}

TEST_CASE("builtin groups validate and have expected structure") {
    CHECK(cyclic_group(8)->is_abelian());
    CHECK(dihedral4()->n == 8);
    CHECK(!dihedral4()->is_abelian());
    CHECK(quaternion8()->n == 8);
    CHECK(!quaternion8()->is_abelian());
    CHECK(builtin_group("klein4")->is_abelian());
    auto q8 = quaternion8();
    int order4 = 0;
    for (u32 x = 0; x < 8; ++x)
        if (q8->order_of(x) == 4) ++order4;
    CHECK(order4 == 6);  // +-i, +-j, +-k
}

TEST_CASE("subgroups, normality, quotients") {
    auto s3 = symmetric3();
    // A3 = {id, (012)->cycles}: indices of the two 3-cycles plus identity
    std::vector<u32> a3;
    for (u32 x = 0; x < 6; ++x)
        if (s3->order_of(x) != 2) a3.push_back(x);
    CHECK(a3.size() == 3);
    CHECK(is_normal(*s3, a3));
    auto q = make_quotient(s3, a3);
    CHECK(q.quot->n == 2);
    CHECK(q.coset_rep[0] == 0);
    // a transposition generates a non-normal subgroup
    u32 transp = 0;
    for (u32 x = 1; x < 6; ++x)
        if (s3->order_of(x) == 2) { transp = x; break; }
    CHECK(!is_normal(*s3, {0, transp}));
    CHECK_THROWS_AS(make_quotient(s3, {0, transp}), NotNormal);
    // Z/4 over 2Z/4
    auto z4 = cyclic_group(4);
    auto qq = make_quotient(z4, {0, 2});
    CHECK(qq.quot->n == 2);
    CHECK(qq.coset_rep == std::vector<u32>{0, 1});
}

TEST_CASE("pontryagin dual: sign action and double dual") {
    Ring R = make_ring(3, 1);
    auto z2 = cyclic_group(2);
    // Z/3 with Z/2 acting by -1
    auto m = make_gmodule(R, Orders{{1}}, z2, {Mat::identity(1), Mat({{-1}}, R)});
    auto d = pontryagin_dual(m);
    CHECK(d.dual->act[1] == Mat({{-1}}, R));  // dual also acts by -1
    CHECK(d.dual->invariants() == m->invariants());

    // double dual is the identity matrix on Z/2 + Z/4 with a nontrivial action
    Ring R2 = make_ring(2, 2);
    auto m2 = make_gmodule(R2, Orders{{1, 2}}, z2,
                           {Mat::identity(2), Mat({{1, 0}, {2, 3}}, R2)});
    auto dd = pontryagin_dual(pontryagin_dual(m2).dual);
    ModuleMap can = double_dual_map(m2, dd.dual);
    CHECK(is_bijective(can));
}

TEST_CASE("dual of maps reverses arrows and is involutive") {
    Ring R = make_ring(2, 2);
    auto z2 = cyclic_group(2);
    Rng rng(7);
    auto m = make_gmodule(R, Orders{{1, 2}}, z2, {Mat::identity(2), Mat({{1, 2}, {0, 3}}, R)});
    auto n = make_gmodule(R, Orders{{2}}, z2, {Mat::identity(1), Mat({{3}}, R)});
    auto md = pontryagin_dual(m), nd = pontryagin_dual(n);
    Mat basis = equivariant_hom_basis(m, n);
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<u32> c(basis.cols, 0);
        for (u32 r = 0; r < basis.rows; ++r)
            c = vec_add(c, vec_scale(rng.below(R.mod), basis.row(r), R), R);
        ModuleMap f = make_map(m, n, hom_coords_to_matrix(m, n, c));
        ModuleMap fd = dual_map(f, nd.dual, md.dual);
        ModuleMap fdd = dual_map(fd, pontryagin_dual(md.dual).dual, pontryagin_dual(nd.dual).dual);
        // under the identity double-dual identification, f^{vee vee} = f
        CHECK(fdd.m == f.m);
    }
}

TEST_CASE("evaluation pairing is perfect: M -> (M^vee)^vee bijective") {
    Ring R = make_ring(2, 3);
    auto g = dihedral4();
    auto reg = regular_module(R, g);
    auto d = pontryagin_dual(reg);
    // pairing matrix as map M -> Hom(M^vee, R): in coordinates this is
    // exactly the double-dual identity; check evaluation is G-equivariant
    // (already enforced by make_map) and nondegenerate via kernel
    u32 r = reg->rank();
    // kernel of x -> (phi -> ev(phi (x) x)) is kernel of identity: trivial；
    // instead check directly: ev(e_i^vee (x) e_j) = delta_ij p^{e-a_i}
    for (u32 i = 0; i < r; ++i) {
        std::vector<u32> phi(r, 0), x(r, 0);
        phi[i] = 1;
        x[i] = 1;
        auto t = tensor_elem(d.dual, reg, phi, x);
        auto v = d.evaluation(t);
        CHECK(v[0] == R.pow_p(R.e - reg->orders.exp[i]));
    }
}

TEST_CASE("character twists") {
    Ring R = make_ring(3, 2);
    auto z2 = cyclic_group(2);
    auto m = trivial_module(R, Orders{{1}}, z2);
    auto chi = make_character(z2, {1, R.mod - 1}, R);
    auto tw = twist_by_character(m, chi);
    // canonical entries are reduced mod the summand order Z/3
    CHECK(tw->act[1] == Mat({{2}}, R));
    auto back = twist_by_character(tw, inverse_character(chi, R));
    CHECK(back->act[1] == m->act[1]);
    // trivial character: identical module
    auto same = twist_by_character(m, trivial_character(z2));
    CHECK(same->act == m->act);
    // non-unit or non-multiplicative values rejected
    CHECK_THROWS_AS(make_character(z2, {1, 3}, R), ValidationError);
    CHECK_THROWS_AS(make_character(z2, {1, 2}, R), ValidationError);
}

TEST_CASE("tensor and hom of modules") {
    Ring R = make_ring(2, 2);
    auto e = cyclic_group(1);
    auto z4 = make_gmodule(R, Orders{{2}}, e, {Mat::identity(1)});
    auto z2 = make_gmodule(R, Orders{{1}}, e, {Mat::identity(1)});
    CHECK(tensor_mod(z4, z2)->invariants() == FinAb{{1}});  // Z/4 (x) Z/2 = Z/2
    CHECK(hom_mod(z2, z4)->invariants() == FinAb{{1}});     // Hom(Z/2, Z/4) = Z/2
    // unit object: M (x) R = M
    auto unit = make_gmodule(R, Orders{{2}}, e, {Mat::identity(1)});
    auto m = make_gmodule(R, Orders{{1, 2}}, e, {Mat::identity(2)});
    CHECK(tensor_mod(m, unit)->invariants() == m->invariants());
    // hom enumeration oracle: |Hom(Z/2, Z/4)| = 2
    auto h = hom_mod(z2, z4);
    CHECK(h->size() == 2);
    for (const auto& c : enumerate_module(h->orders, R)) {
        Mat f = hom_coords_to_matrix(z2, z4, c);
        check_order_congruences(f, z2->orders, z4->orders, R);
        CHECK(hom_matrix_to_coords(z2, z4, f) == c);
    }
}

TEST_CASE("hom_mod conjugation action vs direct transport") {
    Ring R = make_ring(2, 2);
    auto g = cyclic_group(4);
    Rng rng(3);
    auto a = regular_module(R, make_quotient(g, {0, 2}).quot);
    // view over g through the projection
    auto q = make_quotient(g, {0, 2});
    auto m = restrict_module(a, q.proj);
    auto n = make_gmodule(R, Orders{{2}}, g, {Mat::identity(1), Mat({{3}}, R), Mat::identity(1), Mat({{3}}, R)});
    auto h = hom_mod(m, n);
    for (int iter = 0; iter < 12; ++iter) {
        std::vector<u32> c(h->rank());
        for (auto& x : c) x = rng.below(R.mod);
        c = h->orders.canon(c, R);
        for (u32 gg = 0; gg < g->n; ++gg) {
            auto lhs = hom_coords_to_matrix(m, n, h->orders.canon(mat_apply(h->act[gg], c, R), R));
            Mat f = hom_coords_to_matrix(m, n, c);
            // (g . f) = act_n(g) o f o act_m(g^{-1})
            auto rhs = mat_mul(n->act[gg], mat_mul(f, m->act[g->inverse(gg)], R), R);
            for (u32 i = 0; i < lhs.rows; ++i)
                for (u32 j = 0; j < lhs.cols; ++j)
                    CHECK(lhs.at(i, j) % R.pow_p(n->orders.exp[i]) ==
                          rhs.at(i, j) % R.pow_p(n->orders.exp[i]));
        }
    }
}

TEST_CASE("invariants submodule: fixed points") {
    Ring R = make_ring(3, 1);
    auto z2 = cyclic_group(2);
    // Z/2 acting by -1 on Z/3: no fixed points
    auto m = make_gmodule(R, Orders{{1}}, z2, {Mat::identity(1), Mat({{-1}}, R)});
    CHECK(invariants_submodule(m).mod->invariants() == FinAb{});
    // regular module of Z/2 over Z/4: invariants = norm line = Z/4
    Ring R2 = make_ring(2, 2);
    auto reg = regular_module(R2, z2);
    auto inv = invariants_submodule(reg);
    CHECK(inv.mod->invariants() == FinAb{{2}});
}

TEST_CASE("iota twist is an involution on the regular level") {
    Ring R = make_ring(2, 2);
    auto z4 = cyclic_group(4);
    auto q = make_quotient(z4, {0});
    // R[Z/4] with left/right multiplication as the level actions
    auto reg = regular_module(R, z4);
    LambdaAction lam{q.quot, {}, {}};
    for (u32 x = 0; x < 4; ++x) {
        Mat l(4, 4), r(4, 4);
        for (u32 y = 0; y < 4; ++y) {
            l.at(z4->mul(x, y), y) = 1;
            r.at(z4->mul(y, x), y) = 1;
        }
        lam.left.push_back(l);
        lam.right.push_back(r);
    }
    auto m = make_gmodule(R, reg->orders, z4, reg->act, lam);
    auto tw = iota_twist(m);
    // the twisted left action of the generator is the inverse of the right action matrix
    CHECK(tw->lambda->left[1] == m->lambda->right[3]);
    auto back = iota_twist(tw);
    CHECK(back->lambda->left == m->lambda->left);
    CHECK(back->lambda->right == m->lambda->right);
    // modules without level data are rejected
    CHECK_THROWS_AS(iota_twist(reg), NoLambdaAction);
}
