#include "doctest.h"
#include "testutil.hpp"
#include "zcoh/gen.hpp"

using namespace zcoh;
using namespace zcoh::testutil;

namespace {

Ring R4() { return make_ring(2, 2); }

// 0 -> Z/p^e --2--> Z/p^e -> 0 in degrees 0,1 over the trivial group
ComplexPtr mult2_complex(const Ring& R, const GroupPtr& e) {
    auto m = trivial_module(R, Orders{{R.e}}, e);
    return two_term_complex(make_map(m, m, Mat({{2}}, R)), 0);
}

}  // namespace

TEST_CASE("shift: degrees move, signs cancel in pairs") {
    Ring R = R4();
    auto e = cyclic_group(1);
    auto m = trivial_module(R, Orders{{2}}, e);
    auto x = one_term_complex(m, 0);
    auto s1 = shift(x, 1);
    CHECK(s1->lo == -1);
    CHECK(s1->hi == -1);
    CHECK(shift(x, 0)->lo == x->lo);

    auto c = mult2_complex(R, e);
    auto once = shift(shift(c, 1), 1);
    auto twice = shift(c, 2);
    CHECK(once->lo == twice->lo);
    CHECK(once->diff(-2).m == twice->diff(-2).m);  // signs cancel: d[2] = d
    CHECK(shift(c, 1)->diff(-1).m == Mat({{2}}, R));  // -2 = 2 mod 4
    // for an honest sign check use Z/8
    Ring R8 = make_ring(2, 3);
    auto c8 = mult2_complex(R8, e);
    CHECK(shift(c8, 1)->diff(-1).m == Mat({{6}}, R8));  // d[1] = -d
}

TEST_CASE("d o d = 0 for every construct on random data") {
    // construction of Complex validates d o d = 0; exercise the constructors
    for (u32 p : {2u, 3u}) {
        Ring R = make_ring(p, 2);
        Rng rng(100 + p);
        auto groups = std::vector<GroupPtr>{cyclic_group(1), cyclic_group(2), symmetric3()};
        for (int iter = 0; iter < 10; ++iter) {
            auto g = groups[rng.below(3)];
            auto x = random_complex(R, g, rng, -1, 3, 2);
            auto y = random_complex(R, g, rng, 0, 2, 2);
            CHECK_NOTHROW(shift(x, 1 + (int)rng.below(2)));
            CHECK_NOTHROW(truncate(x, Trunc::tau_le, x->lo + (int)rng.below(2)));
            CHECK_NOTHROW(truncate(x, Trunc::tau_ge, x->lo + (int)rng.below(2)));
            auto f = random_chain_map(x, y, rng);
            CHECK_NOTHROW(cone(f));
            CHECK_NOTHROW(hom_complex(x, y));
            CHECK_NOTHROW(tensor_complex(x, y));
        }
    }
}

TEST_CASE("truncations: pinned behaviors") {
    Ring R = R4();
    auto e = cyclic_group(1);
    auto c = mult2_complex(R, e);

    // sigma_ge below lo: whole complex
    auto sg = truncate(c, Trunc::sigma_ge, -5);
    CHECK(sg.cx->lo == c->lo);
    CHECK(sg.cx->hi == c->hi);

    // zero differentials: tau_le at i has term ker(d^i) = X^i
    auto z1 = trivial_module(R, Orders{{2}}, e);
    auto z2m = trivial_module(R, Orders{{1}}, e);
    auto zc = make_complex(R, e, 0, {z1, z2m}, {zero_map(z1, z2m)});
    auto tl = truncate(zc, Trunc::tau_le, 0);
    CHECK(tl.cx->term(0)->size() == z1->size());

    // tau_le at top degree is a quasi-isomorphic embedding when H above
    // vanishes (here: cohomology sits in degrees 0 and 1, truncate at 1)
    auto t1 = truncate(c, Trunc::tau_le, 1);
    CHECK(is_quasi_iso(t1.comparison));
    // tau_ge at degree <= lo is everything
    auto tg = truncate(c, Trunc::tau_ge, 0);
    CHECK(tg.cx->term(0)->size() == 4);

    // inclusion tau_le i -> X induces iso on H^j for j <= i
    auto t0 = truncate(c, Trunc::tau_le, 0);
    auto rep = quasi_iso_report(t0.comparison);
    CHECK(rep.bijective.at(0));
    CHECK(rep.src_h.at(0) == FinAb{{1}});  // H^0 = Z/2
}

TEST_CASE("cohomology: pinned example 0 -> Z/4 --2--> Z/4 -> 0") {
    Ring R = R4();
    auto e = cyclic_group(1);
    auto c = mult2_complex(R, e);
    auto h = cohomology(*c);
    // kernel of *2 on Z/4 is {0,2} = Z/2; cokernel is Z/4 / {0,2} = Z/2
    CHECK(h.at(0) == FinAb{{1}});
    CHECK(h.at(1) == FinAb{{1}});
    // acyclic two-term id complex
    auto z4 = trivial_module(R, Orders{{2}}, e);
    auto idc = two_term_complex(identity_map(z4), 0);
    auto h2 = cohomology(*idc);
    CHECK(h2.at(0) == FinAb{});
    CHECK(h2.at(1) == FinAb{});
}

TEST_CASE("cone: acyclic for identity, splits for zero map, snake boundary = f") {
    Ring R = R4();
    auto e = cyclic_group(1);
    Rng rng(42);
    auto x = random_complex(R, e, rng, 0, 2, 2);
    // f = identity: acyclic cone
    auto cid = cone(identity_chain_map(x));
    for (auto& [i, h] : cohomology(*cid.cone)) CHECK(h == FinAb{});
    // f = 0: cohomology of cone = H(Y) + H(X[1]) degreewise
    auto y = random_complex(R, e, rng, 0, 2, 2);
    auto c0 = cone(zero_chain_map(x, y));
    auto hx1 = cohomology(*shift(x, 1));
    auto hy = cohomology(*y);
    for (auto& [i, h] : cohomology(*c0.cone)) {
        u64 want = 1;
        if (hy.count(i)) want *= hy.at(i).size(R);
        if (hx1.count(i)) want *= hx1.at(i).size(R);
        CHECK(h.size(R) == want);
    }
    // the boundary map of the cone SES equals the map induced by f^{i+1}
    for (int iter = 0; iter < 6; ++iter) {
        auto a = random_complex(R, e, rng, 0, 2, 2);
        auto b = random_complex(R, e, rng, 0, 2, 2);
        auto f = random_chain_map(a, b, rng);
        auto cd = cone(f);
        auto ses = make_ses(cd.incl, cd.proj);
        auto les = les_report(ses);
        CHECK(les.exact);
        // connecting H^i(X[1]) = H^{i+1}(X) -> H^{i+1}(Y) vs induced by f
        for (const auto& entry : les.entries) {
            int i = entry.degree;
            CohomDegree hs = cohomology_at(*cd.x_shift, i);
            CohomDegree ht = cohomology_at(*b, i + 1);
            // induced by f^{i+1} under X[1]^i = X^{i+1}
            u32 rs = (u32)hs.group.inv.size(), rt = (u32)ht.group.inv.size();
            Mat byf(rt, rs);
            for (u32 t = 0; t < rs; ++t) {
                auto cls = ht.class_of(f.component(i + 1)(hs.rep(t)));
                for (u32 s = 0; s < rt; ++s) byf.at(s, t) = cls[s];
            }
            CHECK(entry.connecting == byf);
        }
    }
}

TEST_CASE("tensor differential sign: d(m (x) l) = dm (x) l - m (x) dl in degree 1") {
    Ring R = make_ring(2, 3);
    auto e = cyclic_group(1);
    auto a = trivial_module(R, Orders{{3}}, e);
    // M concentrated in degrees 1,2 with d = *2; L in degrees 0,1 with d = *3... use generic maps
    auto dm = make_map(a, a, Mat({{2}}, R));
    auto dl = make_map(a, a, Mat({{3}}, R));
    auto M = two_term_complex(dm, 1);
    auto L = two_term_complex(dl, 0);
    TotalComplex T = tensor_complex(M, L);
    // degree 1 = M^1 (x) L^0; apply d and read both components
    const TotalPiece* p10 = T.piece(1, 1);
    REQUIRE(p10 != nullptr);
    std::vector<u32> elem = p10->inc({1});
    auto img = T.cx->diff(1)(elem);
    const TotalPiece* p20 = T.piece(2, 2);  // M^2 (x) L^0: dm (x) l
    const TotalPiece* p11 = T.piece(2, 1);  // M^1 (x) L^1: (-1)^1 m (x) dl
    REQUIRE(p20 != nullptr);
    REQUIRE(p11 != nullptr);
    CHECK(p20->prj(img) == std::vector<u32>{2});
    CHECK(p11->prj(img) == std::vector<u32>{R.mod - 3});
}

TEST_CASE("hom complex of concentrated modules is the hom module") {
    Ring R = R4();
    auto e = cyclic_group(1);
    auto m = one_term_complex(trivial_module(R, Orders{{1}}, e), 0);
    auto n = one_term_complex(trivial_module(R, Orders{{2}}, e), 0);
    TotalComplex h = hom_complex(m, n);
    CHECK(h.cx->lo == 0);
    CHECK(h.cx->hi == 0);
    CHECK(h.cx->term(0)->invariants() == FinAb{{1}});  // Hom(Z/2, Z/4) = Z/2
}

TEST_CASE("translation isomorphisms: identity at n = 0, sign for the right twist") {
    Ring R = make_ring(3, 2);
    auto e = cyclic_group(1);
    Rng rng(7);
    for (int iter = 0; iter < 8; ++iter) {
        auto m = random_complex(R, e, rng, -1, 2, 2);
        auto l = random_complex(R, e, rng, 0, 2, 2);
        for (int n = -2; n <= 2; ++n) {
            // construction validates chain-map property and bijectivity
            CHECK_NOTHROW(translation_iso_hom(m, l, n));
            CHECK_NOTHROW(translation_iso_tensor_left(m, l, n));
            CHECK_NOTHROW(translation_iso_tensor_right(m, l, n));
        }
        auto t0 = translation_iso_tensor_right(m, l, 0);
        for (auto& [i, c] : t0.comps)
            CHECK(c.m == Mat::identity(c.m.rows));
    }
    // third iso with n = 1 carries sign (-1)^{deg m} on the piece of degree 1
    auto mm = trivial_module(R, Orders{{2}}, e);
    auto M = one_term_complex(mm, 1);
    auto L = one_term_complex(mm, 0);
    auto t = translation_iso_tensor_right(M, L, 1);
    // source: M (x) L[1] concentrated in degree 0; sign (-1)^{1*1} = -1
    CHECK(t.component(0).m == Mat({{-1}}, R));
}

TEST_CASE("adjunction: curried maps, sign, round trip") {
    Ring R = R4();
    auto e = cyclic_group(1);
    Rng rng(11);
    for (int iter = 0; iter < 6; ++iter) {
        auto m = random_complex(R, e, rng, 0, 2, 2);
        auto l = random_complex(R, e, rng, 0, 2, 2);
        auto n = random_complex(R, e, rng, 0, 2, 2);
        AdjunctionData ad = adjunction_setup(m, l, n);
        for (int deg = ad.hom_ml_n.cx->lo; deg <= ad.hom_ml_n.cx->hi; ++deg) {
            auto f = random_vector(ad.hom_ml_n.cx->term(deg)->orders, R, rng);
            auto a1 = adjoint_first(ad, deg, f);
            auto a2 = adjoint_second(ad, deg, f);
            // adjunctions are chain maps of Hom complexes: d(adj f) = adj(df)
            auto df = total_diff(ad.hom_ml_n, deg, f);
            CHECK(total_diff(ad.hom_m_hln, deg, a1) == adjoint_first(ad, deg + 1, df));
            CHECK(total_diff(ad.hom_l_hmn, deg, a2) == adjoint_second(ad, deg + 1, df));
        }
    }
    // m = l = 1 (degrees): the second adjoint flips sign
    auto z4 = trivial_module(R, Orders{{2}}, e);
    auto M = one_term_complex(z4, 1);
    auto L = one_term_complex(z4, 1);
    auto N = one_term_complex(z4, 2);
    AdjunctionData ad = adjunction_setup(M, L, N);
    std::vector<u32> f{1};  // the pairing x (x) y -> xy
    auto a1 = adjoint_first(ad, 0, f);
    auto a2 = adjoint_second(ad, 0, f);
    CHECK(a1 == std::vector<u32>{1});
    CHECK(a2 == std::vector<u32>{R.mod - 1});
}

TEST_CASE("cone_cup: homotopy identity and degenerate cases") {
    Ring R = R4();
    auto e = cyclic_group(1);
    Rng rng(13);
    // all zero: everything zero but constructible
    auto z = zero_complex(R, e);
    auto zp = make_pairing(z, z, z, {});
    CHECK_NOTHROW(cone_cup(zero_chain_map(z, z), zero_chain_map(z, z), zero_chain_map(z, z), zp, zp));

    int built = 0;
    for (int iter = 0; iter < 20 && built < 8; ++iter) {
        auto a1 = random_complex(R, e, rng, 0, 2, 2);
        auto a2 = random_complex(R, e, rng, 0, 2, 2);
        auto a3 = random_complex(R, e, rng, 0, 2, 2);
        auto cupA = random_pairing(a1, a2, a3, rng);
        // identities with cupB = cupA: compatibility holds
        auto d = cone_cup(identity_chain_map(a1), identity_chain_map(a2), identity_chain_map(a3),
                          cupA, cupA);
        // make_homotopy already verified cup1 - cup0 = d s + s d; do a spot
        // check elementwise on a random element
        int n = d.e1e2.cx->lo + (int)rng.below(u32(d.e1e2.cx->hi - d.e1e2.cx->lo + 1));
        auto v = random_vector(d.e1e2.cx->term(n)->orders, R, rng);
        auto lhs = vec_sub(d.cup1.component(n)(v), d.cup0.component(n)(v), R);
        auto t1 = d.s.component(n + 1)(d.e1e2.cx->diff(n)(v));
        auto t2 = d.e3->diff(n - 1)(d.s.component(n)(v));
        CHECK(d.e3->term(n)->orders.canon(lhs, R) ==
              d.e3->term(n)->orders.canon(vec_add(t1, t2, R), R));
        ++built;
    }
    CHECK(built == 8);
}

TEST_CASE("cone_cup rejects incompatible pairings") {
    Ring R = R4();
    auto e = cyclic_group(1);
    auto m = trivial_module(R, Orders{{2}}, e);
    auto X = one_term_complex(m, 0);
    // cupA: multiplication; cupB: zero; f_j = id -> f3 o cupA != cupB o (f1 (x) f2)
    auto ten = tensor_mod(m, m);
    std::map<std::pair<int, int>, ModuleMap> ca, cb;
    ca.emplace(std::make_pair(0, 0), make_map(ten, m, Mat({{1}}, R)));
    cb.emplace(std::make_pair(0, 0), zero_map(ten, m));
    auto cupA = make_pairing(X, X, X, std::move(ca));
    auto cupB = make_pairing(X, X, X, std::move(cb));
    CHECK_THROWS_AS(cone_cup(identity_chain_map(X), identity_chain_map(X), identity_chain_map(X),
                             cupA, cupB),
                    IncompatiblePairings);
}

TEST_CASE("quasi-isomorphism machinery and two-out-of-three") {
    Ring R = R4();
    auto e = cyclic_group(2);
    Rng rng(17);
    for (int iter = 0; iter < 6; ++iter) {
        auto x = random_complex(R, e, rng, 0, 2, 2);
        auto q = random_quasi_iso(x, rng);
        CHECK(is_quasi_iso(q.incl));
        CHECK(is_quasi_iso(q.proj));
    }
    // identities: all three quasi-isos
    auto x = random_complex(R, e, rng, 0, 2, 2);
    auto y = random_complex(R, e, rng, 0, 2, 2);
    auto f = random_chain_map(x, y, rng);
    auto t = triangle_of_map(f);
    auto tm = make_triangle_morphism(t, t, identity_chain_map(t.x), identity_chain_map(t.y),
                                     identity_chain_map(t.z));
    auto rep = two_out_of_three(tm);
    CHECK(rep.qx);
    CHECK(rep.qy);
    CHECK(rep.qz);
    CHECK(rep.two_of_three_holds);
}

TEST_CASE("two-out-of-three: mismatched synthetic square is rejected") {
    Ring R = R4();
    auto e = cyclic_group(1);
    auto z4 = trivial_module(R, Orders{{2}}, e);
    auto x = one_term_complex(z4, 0);
    // triangle from the identity map
    auto t = triangle_of_map(identity_chain_map(x));
    // fy multiplication by 2 (not compatible with fx = id up to homotopy:
    // the u-square cannot commute since H^0 maps differ)
    auto fy = make_chain_map(x, x, {{0, make_map(z4, z4, Mat({{2}}, R))}});
    CHECK_THROWS_AS(make_triangle_morphism(t, t, identity_chain_map(x), fy, identity_chain_map(t.z)),
                    MalformedTriangle);
}

TEST_CASE("les_report: random short exact sequences are exact") {
    // 0 -> X -> X + K -> K -> 0 with K acyclic-or-not: use sum decomposition
    Ring R = make_ring(3, 2);
    auto e = cyclic_group(2);
    Rng rng(23);
    for (int iter = 0; iter < 6; ++iter) {
        auto x = random_complex(R, e, rng, 0, 3, 2);
        auto q = random_quasi_iso(x, rng);  // big = x + cone(id)
        // ses 0 -> x -> big -> big/x -> 0: use the cone construction instead:
        // cone SES of a random chain map is degreewise split exact
        auto y = random_complex(R, e, rng, 0, 2, 2);
        auto f = random_chain_map(x, y, rng);
        auto cd = cone(f);
        auto ses = make_ses(cd.incl, cd.proj);
        auto les = les_report(ses);
        CHECK(les.exact);
        if (!les.exact) MESSAGE(les.detail);
        (void)q;
    }
}
