#pragma once

#include "zcoh/cup.hpp"
#include "zcoh/induced.hpp"
#include "zcoh/tate.hpp"

namespace zcoh {

// One "place": a finite group with a homomorphism into the ambient group
// (arbitrary homomorphisms allowed, not just inclusions). tate_at selects
// the complete complex for the local cochains (order-2 surrogates of real
// places).
struct Place {
    GroupPtr local;
    GroupHom into;  // local -> ambient
    bool tate_at = false;
    std::string name;
};
struct LocalDatum {
    GroupPtr group;
    std::vector<Place> places;
};
LocalDatum make_local_datum(GroupPtr g, std::vector<Place> places);

// The compactly supported complex
//   C_c^i = C^i(G, M) + (+)_v C^{i-1}(H_v, M),  d(a, a_S) = (da, -res_S(a) - da_S)
// built as the shifted cone over the sum of restriction maps.
struct CompactComplex {
    ComplexPtr cx;          // C_c
    ComplexPtr global;      // C(G, M)
    ComplexPtr local_sum;   // P = (+)_v C(H_v, M) (complete at tate places)
    std::vector<ComplexPtr> locals;
    std::vector<SumDecomp> local_decomp;  // per degree of local_sum
    ChainMap res_s;         // C(G,M) -> P
    ShiftedConeData cone;   // the (a, a_S) structure
    u32 cap;
};
CompactComplex compact_complex(const LocalDatum& d, const GModulePtr& m, u32 cap);
CompactComplex compact_complex(const LocalDatum& d, const ComplexPtr& m, u32 cap);

FinAb compact_cohomology(const LocalDatum& d, const GModulePtr& m, int i, u32 cap);

// The long exact sequence ... -> H^i_c -> H^i -> (+)_v H^i_v -> H^{i+1}_c -> ...
struct CompactLES {
    LESReport les;  // of 0 -> P[-1] -> C_c -> C -> 0
    std::map<int, FinAb> h_c, h_global, h_local;
};
CompactLES compact_les(const LocalDatum& d, const GModulePtr& m, u32 cap);

// Cup products on compactly supported cochains for a pairing N (x) M -> D:
//   a cup_c (b, b_S) = (a cup b, (-1)^deg(a) res_S(a) cup_S b_S)
//   (a, a_S) c_cup b = (a cup b, a_S cup_S res_S(b))
// plus the cone-cup homotopy between cup_0 and cup_1 on C_c (x) C_c.
struct CompactCups {
    CompactComplex cn, cm, cd;   // for N, M, D
    ComplexPairing cup_global;   // C(N) (x) C(M) -> C(D) (the total cup)
    ComplexPairing cup_local;    // P(N) (x) P(M) -> P(D) (place-diagonal)
    ConeCupData cone_cups;       // cup0, cup1, homotopy s on C_c(N) (x) C_c(M)
    ComplexPairing cup_c;        // C(N) (x) C_c(M) -> C_c(D)
    ComplexPairing c_cup;        // C_c(N) (x) C(M) -> C_c(D)
};
CompactCups compact_cups(const LocalDatum& d, const GModulePtr& n, const GModulePtr& m,
                         const ModuleMap& pairing, u32 cap);

// --- duality triangle --------------------------------------------------------------

// Trace datum: degree k; the engine solves for a quasi-isomorphism
// tau_{>= k} C_c(G, S; D) -> T[-k] (TraceNotQuasiIso when none exists).
struct TraceData {
    int degree;
    FinAb target;       // invariants of T = H^k_c
    ChainMap theta;     // C_c(D) -> T[-k]
    ComplexPtr shifted; // T[-k]
};
TraceData canonical_trace(const CompactComplex& cd, int degree);

struct DualityTriangleReport {
    ExactTriangle left, right;
    ChainMap row_x, row_y, row_z;  // C_c(M), C(M), P(M) rows
    Homotopy sq_u, sq_v, sq_w;
    TwoOutOfThreeReport two_of_three;
    bool all_squares_commute = true;
};
DualityTriangleReport duality_triangle(const LocalDatum& d, const GModulePtr& m,
                                       const TraceData& trace, const CompactCups& cups);
// convenience: dual coefficients N = M^vee, evaluation pairing, trace at the
// given degree
DualityTriangleReport duality_triangle(const LocalDatum& d, const GModulePtr& m, int trace_degree,
                                       u32 cap);

// --- compact-support Shapiro -----------------------------------------------------

// induced local datum over a normal subgroup: orbit representatives of the
// image of each place acting on G/U, with conjugated embeddings into U
struct InducedPlace {
    u32 place_index;
    u32 sigma;           // orbit representative in G
    Place place;         // (phi^{-1}(U), h -> sigma^{-1} phi(h) sigma)
    Subgroup local_sub;  // phi^{-1}(U) inside the original local group
};
struct InducedDatum {
    LocalDatum datum;    // over U
    std::vector<InducedPlace> places;
};
InducedDatum induce_local_datum(const LocalDatum& d, const QuotientDatum& q);

struct CompactShapiroReport {
    ChainMap sh_c;                    // C_c(G, S; M_U) -> C_c(U, S_U; M)
    QuasiIsoReport quasi;
    ChainMap res_c, cor_c;            // between the two compact complexes of M
    bool cor_res_is_index = false;    // cor_c o res_c = [G:U] on H_c
    std::vector<Homotopy> diagrams;   // witnesses for the displayed squares
    bool local_decomposition_ok = false;
};
CompactShapiroReport shapiro_compact(const LocalDatum& d, const QuotientDatum& q,
                                     const GModulePtr& m, u32 cap);

}  // namespace zcoh
