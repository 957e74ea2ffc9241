#pragma once

#include "zcoh/cochains.hpp"

namespace zcoh {

// The group algebra R[G/U] as a module for G (through the projection), with
// the left/right multiplication actions recorded as the Lambda level.
GModulePtr lambda_level(const QuotientDatum& q, const Ring& R);

// _U M = Hom_R(R[G/U], M): coordinates (coset, M-coordinate), coset-major.
//   (g.f)(b) = act(g) f(proj(g)^{-1} b);  level: (l.f)(b) = f(b l), (f.l)(b) = f(l b)
GModulePtr induce_hom(const QuotientDatum& q, const GModulePtr& m);

// M_U = R[G/U]^i (x) M:  g.(b (x) x) = proj(g) b (x) act(g) x;
//   level: l.(b (x) x) = b l^{-1} (x) x,  (b (x) x).l = l^{-1} b (x) x
GModulePtr induce_tensor(const QuotientDatum& q, const GModulePtr& m);

// The Kronecker-delta isomorphism M_U -> _U M (the identity matrix in these
// coordinates; equivariance for both structures is the verified content).
ModuleMap kronecker_iso(const QuotientDatum& q, const GModulePtr& m);

// Transition maps for nested normal subgroups U <= V (fine = G/U coarser = G/V):
struct TransitionMaps {
    ModuleMap pr_star_hom;  // pr^* : _V M -> _U M
    ModuleMap tr_star_hom;  // Tr^* : _U M -> _V M
    ModuleMap pr_star_ten;  // pr_* : M_U -> M_V
    ModuleMap tr_star_ten;  // Tr_* : M_V -> M_U
};
TransitionMaps transition_maps(const QuotientDatum& fine, const QuotientDatum& coarse,
                               const GModulePtr& m);

// (M_U)^vee -> (_U (M^vee))^iota, the level-U duality isomorphism; natural
// in M and compatible with both level actions.
struct DfmData {
    GModulePtr mu;         // M_U
    GModulePtr mu_dual;    // (M_U)^vee
    GModulePtr hom_dual;   // (_U (M^vee))^iota
    ModuleMap iso;
};
DfmData dfm_duality(const QuotientDatum& q, const GModulePtr& m);

// levelwise induction of complexes
ComplexPtr induce_tensor_complex(const QuotientDatum& q, const ComplexPtr& m);

// Shapiro map sh : C(G, M_U) -> C(U, M): restriction along U -> G followed
// by evaluation at the identity coset.
struct ShapiroData {
    ChainMap sh;
    GModulePtr mu;       // M_U over G
    QuasiIsoReport report;
};
ShapiroData shapiro_map(const QuotientDatum& q, const GModulePtr& m, u32 cap);

// complex-coefficient variant: C_total(G, (M.)_U) -> C_total(U, M.)
struct ShapiroComplexData {
    ChainMap sh;
    ComplexPtr induced;  // (M.)_U
    QuasiIsoReport report;
};
ShapiroComplexData shapiro_map_complex(const QuotientDatum& q, const ComplexPtr& m, u32 cap);

// General restriction-with-coefficient-maps on hypercochain totals: given
// phi : U -> G, a complex M. of G-modules, a complex N. of U-modules and
// levelwise U-maps psi^j : M^j|phi -> N^j commuting with the differentials,
// the induced chain map C_total(G, M.) -> C_total(U, N.).
ChainMap total_restriction_map(const GroupHom& phi, const ComplexPtr& m, const ComplexPtr& n,
                               const std::map<int, ModuleMap>& psi, u32 cap);

}  // namespace zcoh
