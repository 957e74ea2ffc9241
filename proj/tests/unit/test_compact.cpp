#include "doctest.h"
#include "testutil.hpp"
#include "zcoh/compact.hpp"
#include "zcoh/gen.hpp"

using namespace zcoh;
using namespace zcoh::testutil;

namespace {

LocalDatum one_place_datum(const GroupPtr& g, const std::vector<u32>& subgroup_elems,
                           bool tate = false) {
    Subgroup s = subgroup_of(g, subgroup_elems);
    Place p{s.sub, s.incl, tate, "v0"};
    return make_local_datum(g, {p});
}

}  // namespace

TEST_CASE("compact complex: empty S gives C_c = C, identity place kills everything") {
    Ring R = make_ring(2, 1);
    auto g = cyclic_group(4);
    auto m = trivial_module(R, Orders{{1}}, g);
    // empty S
    LocalDatum empty{g, {}};
    CompactComplex cc = compact_complex(empty, m, 3);
    for (int i = 0; i <= 2; ++i)
        CHECK(cohomology_at(*cc.cx, i).group == cochain_cohomology(g, m, static_cast<u32>(i)));
    // H_v = G with the identity: C_c = Cone(id)[-1] acyclic
    LocalDatum full = one_place_datum(g, {0, 1, 2, 3});
    CompactComplex cf = compact_complex(full, m, 3);
    for (int i = cf.cx->lo; i <= 2; ++i) CHECK(cohomology_at(*cf.cx, i).group == FinAb{});
}

TEST_CASE("compact differential signs: d(a,0) = (da, -res a), d(0,b) = (0, -db)") {
    Ring R = make_ring(3, 2);
    auto g = cyclic_group(3);
    auto m = trivial_module(R, Orders{{2}}, g);
    LocalDatum d = one_place_datum(g, {0, 1, 2});
    CompactComplex cc = compact_complex(d, m, 2);
    Rng rng(4);
    for (int deg = 0; deg <= 1; ++deg) {
        auto pa = cc.cone.parts.at(deg);
        auto pb = cc.cone.parts.at(deg + 1);
        // pure global element (a, 0)
        auto a = random_vector(cc.global->term(deg)->orders, R, rng);
        auto da = cc.cx->diff(deg)(pa.first.inc(a));
        CHECK(pb.first.prj(da) == cc.global->diff(deg)(a));
        auto resa = cc.res_s.component(deg)(a);
        CHECK(pb.second.prj(da) ==
              cc.local_sum->term(deg)->orders.canon(vec_scale(R.mod - 1, resa, R), R));
        // pure local element (0, b)
        if (cc.local_sum->in_range(deg - 1)) {
            auto b = random_vector(cc.local_sum->term(deg - 1)->orders, R, rng);
            auto db = cc.cx->diff(deg)(pa.second.inc(b));
            CHECK(pb.first.prj(db) == std::vector<u32>(cc.global->term(deg + 1)->rank(), 0));
            CHECK(pb.second.prj(db) ==
                  cc.local_sum->term(deg)->orders.canon(
                      vec_scale(R.mod - 1, cc.local_sum->diff(deg - 1)(b), R), R));
        }
    }
}

TEST_CASE("compact LES is exact; order-2 vanishing with tate places") {
    Rng rng(9);
    // random small data
    for (auto [gn, p] : std::vector<std::pair<u32, u32>>{{4, 2}, {3, 3}, {6, 2}}) {
        Ring R = make_ring(p, 2);
        auto g = cyclic_group(gn);
        for (int iter = 0; iter < 3; ++iter) {
            auto m = random_gmodule(R, g, rng, 2);
            // place: a random cyclic subgroup
            u32 x = rng.below(gn);
            std::vector<u32> elems{0};
            u32 y = x;
            while (y != 0) { elems.push_back(y); y = g->mul(y, x); }
            LocalDatum d = one_place_datum(g, elems);
            CompactLES les = compact_les(d, m, 2);
            CHECK(les.les.exact);
        }
    }
    // order-2 place with p odd and the tate flag: local column vanishes
    {
        Ring R = make_ring(3, 2);
        auto g = cyclic_group(2);
        auto m = trivial_module(R, Orders{{2}}, g);
        LocalDatum d = one_place_datum(g, {0, 1}, /*tate=*/true);
        CompactComplex cc = compact_complex(d, m, 2);
        for (int i = cc.local_sum->lo; i <= cc.local_sum->hi - 1; ++i)
            CHECK(cohomology_at(*cc.local_sum, i).group == FinAb{});
        for (int i = 0; i <= 1; ++i)
            CHECK(cohomology_at(*cc.cx, i).group == cochain_cohomology(g, m, static_cast<u32>(i)));
    }
}

TEST_CASE("compact cups: leibniz via construction, degenerate empty S, homotopy identity") {
    Ring R = make_ring(2, 1);
    auto g = cyclic_group(4);
    auto m = trivial_module(R, Orders{{1}}, g);
    DualData dd = pontryagin_dual(m);
    // one place of index 2
    LocalDatum d = one_place_datum(g, {0, 2});
    CompactCups cups = compact_cups(d, dd.dual, m, dd.evaluation, 2);
    // the homotopy identity cup1 - cup0 = ds + sd was verified at
    // construction; spot-check elementwise on random elements
    Rng rng(12);
    const auto& e1e2 = cups.cone_cups.e1e2;
    for (int iter = 0; iter < 12; ++iter) {
        int n = e1e2.cx->lo + static_cast<int>(rng.below(u32(e1e2.cx->hi - e1e2.cx->lo + 1)));
        auto v = random_vector(e1e2.cx->term(n)->orders, R, rng);
        auto lhs = vec_sub(cups.cone_cups.cup1.component(n)(v), cups.cone_cups.cup0.component(n)(v), R);
        auto t1 = cups.cone_cups.s.component(n + 1)(e1e2.cx->diff(n)(v));
        auto t2 = cups.cone_cups.e3->diff(n - 1)(cups.cone_cups.s.component(n)(v));
        CHECK(cups.cone_cups.e3->term(n)->orders.canon(lhs, R) ==
              cups.cone_cups.e3->term(n)->orders.canon(vec_add(t1, t2, R), R));
    }
    // empty S: cup_c reduces to the plain total cup (global part only)
    LocalDatum empty{g, {}};
    CompactCups c0 = compact_cups(empty, dd.dual, m, dd.evaluation, 2);
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; a + b <= 2; ++b) {
            // C_c = global (+) nothing
            CHECK(c0.cup_c.component(a, b).m.rows == c0.cup_global.component(a, b).m.rows);
        }
}

TEST_CASE("canonical trace and the duality triangle for G = Z/2") {
    Ring R = make_ring(2, 1);
    auto g = cyclic_group(2);
    auto m = trivial_module(R, Orders{{1}}, g);
    LocalDatum d = one_place_datum(g, {0, 1});  // H_v = G
    // with H_v = G and phi = id the compact complex of D is acyclic, so a
    // trace at any degree has trivial target; use the duality datum at k = 1
    // for the module complex of D = Z/2: H^k_c(D) with one identity place is 0
    // -> use instead a datum with the trivial place so H_c = H
    LocalDatum dtriv{g, {}};
    DualData dd = pontryagin_dual(m);
    CompactCups cups = compact_cups(dtriv, dd.dual, m, dd.evaluation, 3);
    // C_c(D) = C(G, Z/2): H^k = Z/2 for all k; take the trace at k = 2
    TraceData trace = canonical_trace(cups.cd, 2);
    CHECK(trace.target == FinAb{{1}});
    CHECK(is_quasi_iso(compose(trace.theta, truncate(cups.cd.cx, Trunc::tau_ge, 2).comparison)) ==
          false);  // theta itself is not a quasi-iso; only after truncation
    DualityTriangleReport rep = duality_triangle(dtriv, m, trace, cups);
    CHECK(rep.all_squares_commute);
    // with empty S the local row is trivially a quasi-iso (both sides zero);
    // report simply states the verdicts consistently
    CHECK(rep.two_of_three.two_of_three_holds);
    CHECK(rep.two_of_three.qz);
}

TEST_CASE("duality triangle with an identity place: outer rows quasi-iso") {
    Ring R = make_ring(2, 1);
    auto g = cyclic_group(2);
    auto m = trivial_module(R, Orders{{1}}, g);
    LocalDatum d = one_place_datum(g, {0, 1});
    DualData dd = pontryagin_dual(m);
    CompactCups cups = compact_cups(d, dd.dual, m, dd.evaluation, 3);
    // C_c(D) is acyclic (identity place): tau_{>=3} has trivial cohomology,
    // trace at degree 3 has trivial target
    TraceData trace = canonical_trace(cups.cd, 3);
    CHECK(trace.target == FinAb{});
    DualityTriangleReport rep = duality_triangle(d, m, trace, cups);
    CHECK(rep.two_of_three.two_of_three_holds);
}

TEST_CASE("induced local datum: orbits and conjugated embeddings") {
    Ring R = make_ring(3, 1);
    auto s3 = symmetric3();
    std::vector<u32> a3;
    for (u32 x = 0; x < 6; ++x)
        if (s3->order_of(x) != 2) a3.push_back(x);
    auto q = make_quotient(s3, a3);
    // place: a transposition subgroup
    u32 t = 0;
    for (u32 x = 1; x < 6; ++x)
        if (s3->order_of(x) == 2) { t = x; break; }
    LocalDatum d = one_place_datum(s3, {0, t});
    InducedDatum ind = induce_local_datum(d, q);
    // H_v has order 2, A_3 has index 2; phi(H_v) acts on G/A_3 = Z/2 with
    // image of the transposition acting nontrivially: a single orbit
    CHECK(ind.places.size() == 1);
    CHECK(ind.places[0].place.local->n == 1);  // H_v cap A_3 = trivial
    (void)R;
}

TEST_CASE("shapiro_compact: quasi-iso, diagrams, cor_c o res_c = index") {
    Ring R = make_ring(2, 1);
    auto g = cyclic_group(4);
    auto q = make_quotient(g, {0, 2});
    auto m = trivial_module(R, Orders{{1}}, g);
    LocalDatum d = one_place_datum(g, {0, 1, 2, 3});  // one place H_v = G
    CompactShapiroReport rep = shapiro_compact(d, q, m, 2);
    CHECK(rep.quasi.is_quasi_iso);
    CHECK(rep.local_decomposition_ok);
    CHECK(rep.cor_res_is_index);
    CHECK(rep.diagrams.size() == 3);
}

TEST_CASE("shapiro_compact local decomposition over S_3 with a transposition place") {
    Ring R = make_ring(3, 1);
    auto s3 = symmetric3();
    std::vector<u32> a3;
    for (u32 x = 0; x < 6; ++x)
        if (s3->order_of(x) != 2) a3.push_back(x);
    auto q = make_quotient(s3, a3);
    u32 t = 0;
    for (u32 x = 1; x < 6; ++x)
        if (s3->order_of(x) == 2) { t = x; break; }
    auto m = trivial_module(R, Orders{{1}}, s3);
    LocalDatum d = one_place_datum(s3, {0, t});
    CompactShapiroReport rep = shapiro_compact(d, q, m, 2);
    CHECK(rep.quasi.is_quasi_iso);
    CHECK(rep.local_decomposition_ok);
    CHECK(rep.cor_res_is_index);
}
